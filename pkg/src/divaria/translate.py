"""From two-product identities to single-product data and back.

The forgetful direction sends a labeled monomial to its underlying word
together with a distinguished variable, the *center*: the leaf reached
from the root by going left at every -| and right at every |-.  The
center can equivalently be computed through a recursion into the
symmetric-group operad; both routes are implemented and cross-checked.

The section direction labels a word so that every product sign points at
the center leaf, which reproduces the standard dialgebra identity tables
for the associative, commutative, alternative, Lie and Jordan varieties.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import perms
from .errors import InputError
from .operads import IdentitySet
from .perms import Perm
from .words import (DiPoly, DiShape, DILEAF, LPROD, MultilinearPoly, RPROD,
                    Shape, TensorPoly, center_leaf_position, dinode,
                    erase_labels, section_dishape)


# ---------------------------------------------------------------------------
# the forgetful functor and the center
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def alpha_perm(ds: DiShape) -> Perm:
    """The permutation attached to a labeled shape by the binary recursion
    x|-y -> id_2, x-|y -> (12) composed in the symmetric-group operad."""
    if ds.is_leaf:
        return (1,)
    base = (1, 2) if ds.label == RPROD else (2, 1)
    lp = alpha_perm(ds.left)
    rp = alpha_perm(ds.right)
    return perms.sym_compose(base, (ds.left.arity, ds.right.arity), [lp, rp])


def alpha_center(mono) -> tuple[tuple, Perm, int]:
    """(underlying word monomial, recursion permutation, center variable).

    The center variable index is the path-descent leaf position pushed
    through the monomial's permutation; it always equals n*tau^{-1}
    transported the same way, which the recursion cross-check asserts.
    """
    ds, sigma = mono
    tau = alpha_perm(ds)
    p = center_leaf_position(ds)
    n = ds.arity
    if perms.inverse(tau)[n - 1] != p:
        raise AssertionError("center path and recursion disagree")  # pragma: no cover
    return (erase_labels(ds), sigma), tau, sigma[p - 1]


def psi_monomial(mono) -> tuple:
    """Tensor monomial image (word, perm, center index) of a labeled monomial."""
    ds, sigma = mono
    p = center_leaf_position(ds)
    return (erase_labels(ds), sigma, sigma[p - 1])


def psi(p: DiPoly) -> TensorPoly:
    """Linear extension of the label-erasing functor."""
    out: dict = {}
    for mono, coeff in p.terms.items():
        t = psi_monomial(mono)
        out[t] = out.get(t, 0) + coeff
    return TensorPoly(p.arity, out)


def psi_section_monomial(mono) -> tuple:
    """Canonical preimage of a tensor monomial: all signs point at the center."""
    shape, sigma, center = mono
    p = perms.inverse(sigma)[center - 1]
    return (section_dishape(shape, p), sigma)


def psi_section(q: TensorPoly) -> DiPoly:
    out: dict = {}
    for mono, coeff in q.terms.items():
        m = psi_section_monomial(mono)
        out[m] = out.get(m, 0) + coeff
    return DiPoly(q.arity, out)


# ---------------------------------------------------------------------------
# derived dialgebra identities
# ---------------------------------------------------------------------------

def zero_dialgebra_axioms() -> tuple[DiPoly, DiPoly]:
    """(x1-|x2)|-x3 = (x1|-x2)|-x3  and  x1-|(x2|-x3) = x1-|(x2-|x3)."""
    id3 = perms.identity(3)
    ll = dinode(RPROD, dinode(LPROD, DILEAF, DILEAF), DILEAF)
    lr = dinode(RPROD, dinode(RPROD, DILEAF, DILEAF), DILEAF)
    rl = dinode(LPROD, DILEAF, dinode(RPROD, DILEAF, DILEAF))
    rr = dinode(LPROD, DILEAF, dinode(LPROD, DILEAF, DILEAF))
    return (DiPoly.monomial(ll, id3) - DiPoly.monomial(lr, id3),
            DiPoly.monomial(rl, id3) - DiPoly.monomial(rr, id3))


def _orbit_key(p: DiPoly) -> tuple:
    """Canonical key of a nonzero identity modulo relabeling and scalars."""
    best = None
    for sigma in perms.symmetric_group(p.arity):
        q = p.act(sigma)
        lead_coeff = q.terms[q.leading()]
        q = q.scale(1 / lead_coeff)
        key = tuple((DiPoly._mono_key(m), c) for m, c in q.sorted_terms())
        if best is None or key < best:
            best = key
    return best


@dataclass(frozen=True)
class DerivedVariety:
    """Dialgebra identities derived from a family of one-product identities."""

    source: IdentitySet
    zero_axioms: tuple
    derived: tuple          # DiPoly, in generation order, orbit-deduplicated
    provenance: tuple       # (identity index in source, center index) per derived entry

    @property
    def identities(self) -> tuple:
        return self.zero_axioms + self.derived

    def commutation_rule(self):
        """Detect a (anti-)commutation identity c*(x-|y) = (y|-x).

        Returns the scalar lam with  a -| b = lam * (b |- a), or None.
        """
        l2 = dinode(LPROD, DILEAF, DILEAF)
        r2 = dinode(RPROD, DILEAF, DILEAF)
        for p in self.identities:
            if p.arity != 2 or len(p.terms) != 2:
                continue
            for sigma in perms.symmetric_group(2):
                swapped = perms.compose(sigma, (2, 1))
                cl = p.terms.get((l2, sigma))
                cr = p.terms.get((r2, swapped))
                if cl and cr:
                    lam = -cr / cl
                    if lam in (1, -1):
                        return lam
        return None


def derive_variety(sigma: IdentitySet) -> DerivedVariety:
    """The two zero-dialgebra axioms plus a canonical preimage of t (x) e_i
    for every defining identity t and every variable index i.

    Preimages that agree with an earlier one up to relabeling and an
    overall scalar are dropped (first occurrence wins), matching the
    published identity tables.
    """
    derived: list[DiPoly] = []
    prov: list[tuple[int, int]] = []
    seen: set = set()
    for t_idx, t in enumerate(sigma):
        n = t.arity
        for i in range(1, n + 1):
            tens = TensorPoly(n, {(shape, perm, i): c for (shape, perm), c in t.terms.items()})
            cand = psi_section(tens)
            if cand.is_zero():
                continue
            key = _orbit_key(cand)
            if key in seen:
                continue
            seen.add(key)
            derived.append(cand)
            prov.append((t_idx, i))
    return DerivedVariety(sigma, zero_dialgebra_axioms(), tuple(derived), tuple(prov))


# ---------------------------------------------------------------------------
# single-operation rewriting
# ---------------------------------------------------------------------------

def _rewrite_mono(ds: DiShape, leaves: list[int], lam) -> tuple[Shape, list[int], int]:
    """Eliminate -| via a -| b = lam*(b |- a); returns (shape, leaves, sign)."""
    from .words import LEAF, node
    if ds.is_leaf:
        return LEAF, leaves, 1
    lsize = ds.left.arity
    ls, lv, lsgn = _rewrite_mono(ds.left, leaves[:lsize], lam)
    rs, rv, rsgn = _rewrite_mono(ds.right, leaves[lsize:], lam)
    if ds.label == RPROD:
        return node(ls, rs), lv + rv, lsgn * rsgn
    sign = lsgn * rsgn * (1 if lam == 1 else -1)
    return node(rs, ls), rv + lv, sign


def rewrite_single_op(dv: DerivedVariety) -> tuple[MultilinearPoly, ...]:
    """Express the derived identities through the single product a*b = a|-b.

    Requires a detected (anti-)commutation rule among the identities;
    rewrites every identity (the zero-dialgebra axioms included), drops
    the ones that collapse to zero, and canonicalizes.
    """
    lam = dv.commutation_rule()
    if lam is None:
        raise InputError("no (anti-)di-commutativity among the derived identities")
    out: list[MultilinearPoly] = []
    seen: set = set()
    for p in dv.identities:
        acc = MultilinearPoly.zero(p.arity)
        for (ds, perm), coeff in p.terms.items():
            shape, leaves, sign = _rewrite_mono(ds, list(perm), lam)
            acc = acc + MultilinearPoly(p.arity, {(shape, tuple(leaves)): coeff * sign})
        if acc.is_zero():
            continue
        key = tuple((MultilinearPoly._mono_key(m), c) for m, c in acc.sorted_terms())
        if key in seen:
            continue
        seen.add(key)
        out.append(acc)
    return tuple(out)
