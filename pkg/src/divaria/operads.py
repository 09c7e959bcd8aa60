"""Concrete operads, their composition rules, law checking, and the
multilinear consequence spans that present quotients by an identity ideal.

Element conventions:

- Sym: elements are permutations (the group basis of the span).
- E: elements are pairs (n, i) naming the i-th standard basis vector.
- AlgS / DialgS: elements are MultilinearPoly / DiPoly.
- AlgS(x)E: elements are TensorPoly.
- Tensor(...): generic componentwise product of monomial operads, used
  only when an explicit tensor tag is requested.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from random import Random
from typing import Sequence

from . import perms
from .errors import InputError, ResourceError
from .linalg import RowSpace
from .perms import Partition, Perm
from .words import (DiPoly, MultilinearPoly, TensorPoly, TermPoly, all_dishapes,
                    all_shapes, DILEAF, LEAF, from_vec, graft, graft_di, to_vec)

CONSEQUENCE_ARITY_BOUND = 5  # dimension Catalan(n-1) * n! makes n > 5 impractical


# ---------------------------------------------------------------------------
# operads
# ---------------------------------------------------------------------------

class Operad:
    name = "?"
    symmetric = True

    def unit(self):
        raise NotImplementedError

    def arity(self, f) -> int:
        raise NotImplementedError

    def compose(self, f, pi: Partition, gs: Sequence):
        raise NotImplementedError

    def act(self, f, sigma: Perm):
        raise NotImplementedError

    def random_element(self, n: int, rng: Random):
        raise NotImplementedError

    def equal(self, f, g) -> bool:
        return f == g

    def _check(self, f, pi, gs):
        if len(gs) != len(pi):
            raise InputError(f"{self.name}: need {len(pi)} inner elements, got {len(gs)}")
        if self.arity(f) != len(pi):
            raise InputError(f"{self.name}: outer arity {self.arity(f)} != partition length {len(pi)}")
        for g, m in zip(gs, pi):
            if self.arity(g) != m:
                raise InputError(f"{self.name}: inner arity {self.arity(g)} != block size {m}")

    def __repr__(self):
        return f"<operad {self.name}>"


class SymOperad(Operad):
    name = "Sym"

    def unit(self):
        return (1,)

    def arity(self, f):
        return len(f)

    def compose(self, f, pi, gs):
        self._check(f, pi, gs)
        return perms.sym_compose(f, tuple(pi), [tuple(g) for g in gs])

    def act(self, f, sigma):
        # The action compatible with the fixed composition rule is
        # f^sigma = sigma^{-1} then f; with it the equivariance axiom holds
        # exhaustively (f -> f*sigma does not satisfy it).
        return perms.compose(perms.inverse(sigma), f)

    def random_element(self, n, rng):
        return perms.random_perm(n, rng)


class EOperad(Operad):
    name = "E"

    def unit(self):
        return (1, 1)

    def arity(self, f):
        return f[0]

    def compose(self, f, pi, gs):
        self._check(f, pi, gs)
        n, i = f
        j = gs[i - 1][1]
        return (sum(pi), perms.pair_to_index(tuple(pi), i, j))

    def act(self, f, sigma):
        n, i = f
        if len(sigma) != n:
            raise InputError("degree mismatch in E action")
        return (n, sigma[i - 1])

    def random_element(self, n, rng):
        return (n, rng.randint(1, n))


def _compose_word_mono(mono, pi, g_monos, di: bool):
    """Monomial-level composition shared by AlgS and DialgS.

    The outer permutation redistributes the blocks: the result is the graft
    of the reordered inner shapes into the outer shape, paired with the
    permutation composite over the reordered partition.
    """
    shape, sigma = mono
    inv = perms.inverse(sigma)
    pi2 = perms.act_partition(tuple(pi), inv)  # blocks reordered by sigma^{-1} action
    reordered = [g_monos[sigma[k] - 1] for k in range(len(sigma))]
    if di:
        new_shape = graft_di(shape, [g[0] for g in reordered])
    else:
        new_shape = graft(shape, [g[0] for g in reordered])
    new_perm = perms.sym_compose(sigma, pi2, [g[1] for g in reordered])
    return (new_shape, new_perm)


class _PolyOperad(Operad):
    poly_cls: type[TermPoly] = MultilinearPoly
    di = False

    def unit(self):
        leaf = DILEAF if self.di else LEAF
        return self.poly_cls.monomial(leaf, (1,))

    def arity(self, f):
        return f.arity

    def compose(self, f, pi, gs):
        self._check(f, pi, gs)
        m = sum(pi)
        out = self.poly_cls.zero(m)
        for mono, coeff in f.terms.items():
            for combo in itertools.product(*[g.terms.items() for g in gs]):
                total = coeff
                for _, c in combo:
                    total *= c
                new_mono = self._compose_mono(mono, pi, [mc[0] for mc in combo])
                out = out + self.poly_cls(m, {new_mono: total})
        return out

    def _compose_mono(self, mono, pi, g_monos):
        return _compose_word_mono(mono, pi, g_monos, self.di)

    def act(self, f, sigma):
        return f.act(sigma)

    def random_element(self, n, rng, n_terms=1):
        shapes = all_dishapes(n) if self.di else all_shapes(n)
        out = self.poly_cls.zero(n)
        for _ in range(n_terms):
            mono = (rng.choice(shapes), perms.random_perm(n, rng))
            out = out + self.poly_cls(n, {mono: Fraction(rng.randint(1, 3))})
        return out


class AlgSOperad(_PolyOperad):
    name = "AlgS"
    poly_cls = MultilinearPoly
    di = False


class DialgSOperad(_PolyOperad):
    name = "DialgS"
    poly_cls = DiPoly
    di = True


class AlgSEOperad(Operad):
    """Componentwise tensor of AlgS and E acting on TensorPoly elements."""

    name = "AlgS(x)E"

    def unit(self):
        return TensorPoly.monomial(LEAF, (1,), 1)

    def arity(self, f):
        return f.arity

    def compose(self, f, pi, gs):
        self._check(f, pi, gs)
        m = sum(pi)
        pi = tuple(pi)
        out = TensorPoly.zero(m)
        for (shape, sigma, center), coeff in f.terms.items():
            for combo in itertools.product(*[g.terms.items() for g in gs]):
                total = coeff
                for _, c in combo:
                    total *= c
                word = _compose_word_mono((shape, sigma), pi, [(mc[0][0], mc[0][1]) for mc in combo], False)
                new_center = perms.pair_to_index(pi, center, combo[center - 1][0][2])
                out = out + TensorPoly(m, {(word[0], word[1], new_center): total})
        return out

    def act(self, f, sigma):
        return f.act(sigma)

    def random_element(self, n, rng):
        mono = (rng.choice(all_shapes(n)), perms.random_perm(n, rng), rng.randint(1, n))
        return TensorPoly(n, {mono: Fraction(rng.randint(1, 3))})


class TensorOperad(Operad):
    """Componentwise product of two operads whose elements compose monomially.

    Elements are dicts mapping pairs of component elements to coefficients.
    Only used for explicitly requested tensor tags beyond AlgS(x)E.
    """

    def __init__(self, first: Operad, second: Operad):
        self.first = first
        self.second = second
        self.name = f"{first.name}(x){second.name}"

    def unit(self):
        return {(self.first.unit(), self.second.unit()): Fraction(1)}

    def arity(self, f):
        a, _ = next(iter(f))
        return self.first.arity(a)

    def compose(self, f, pi, gs):
        out: dict = {}
        for (a, b), coeff in f.items():
            for combo in itertools.product(*[g.items() for g in gs]):
                total = coeff
                for _, c in combo:
                    total *= c
                pair = (self.first.compose(a, pi, [mc[0][0] for mc in combo]),
                        self.second.compose(b, pi, [mc[0][1] for mc in combo]))
                new = out.get(pair, 0) + total
                if new:
                    out[pair] = new
                else:
                    out.pop(pair, None)
        return out

    def act(self, f, sigma):
        out: dict = {}
        for (a, b), coeff in f.items():
            pair = (self.first.act(a, sigma), self.second.act(b, sigma))
            out[pair] = out.get(pair, 0) + coeff
        return {k: v for k, v in out.items() if v}

    def random_element(self, n, rng):
        return {(self.first.random_element(n, rng),
                 self.second.random_element(n, rng)): Fraction(1)}


SYM = SymOperad()
E = EOperad()
ALGS = AlgSOperad()
DIALGS = DialgSOperad()
ALGSE = AlgSEOperad()

_REGISTRY = {"Sym": SYM, "E": E, "AlgS": ALGS, "DialgS": DIALGS, "AlgS(x)E": ALGSE}


def get_operad(tag) -> Operad:
    """Resolve an operad tag; tuples ('Tensor', (tag, ...)) nest pairwise."""
    if isinstance(tag, str):
        try:
            return _REGISTRY[tag]
        except KeyError:
            raise InputError(f"unknown operad tag {tag!r}") from None
    kind, factors = tag
    if kind != "Tensor" or len(factors) < 2:
        raise InputError(f"bad operad tag {tag!r}")
    if tuple(factors) == ("AlgS", "E"):
        return ALGSE
    op = get_operad(factors[0])
    for t in factors[1:]:
        op = TensorOperad(op, get_operad(t))
    return op


# ---------------------------------------------------------------------------
# law checking
# ---------------------------------------------------------------------------

@dataclass
class LawFailure:
    law: str
    detail: str


@dataclass
class OperadReport:
    operad: str
    max_arity: int
    trials: int
    seed: int
    checked: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        status = "pass" if self.passed else "FAIL"
        counts = ", ".join(f"{k}={v}" for k, v in sorted(self.checked.items()))
        lines = [f"{self.operad}: {status} ({counts}; seed={self.seed})"]
        for f in self.failures[:5]:
            lines.append(f"  counterexample [{f.law}]: {f.detail}")
        return "\n".join(lines)


def axiom_check(op: Operad, max_arity: int, trials: int, seed: int) -> OperadReport:
    """Randomized verification of associativity, unit law and equivariance."""
    if max_arity < 1:
        raise InputError("max_arity must be >= 1")
    rng = Random(seed)
    report = OperadReport(op.name, max_arity, trials, seed)
    counts = {"assoc": 0, "unit": 0, "equivariance": 0}

    for _ in range(trials):
        law = rng.choice(("assoc", "unit", "equivariance"))
        if law == "unit" or max_arity < 2:
            n = rng.randint(1, max_arity)
            f = op.random_element(n, rng)
            lhs = op.compose(f, (1,) * n, [op.unit()] * n)
            rhs = op.compose(op.unit(), (n,), [f])
            counts["unit"] += 1
            if not (op.equal(lhs, f) and op.equal(rhs, f)):
                report.failures.append(LawFailure("unit", f"n={n} f={f!r} -> {lhs!r}, {rhs!r}"))
        elif law == "assoc":
            n = rng.randint(1, max_arity - 1)
            m = rng.randint(n, max_arity)
            p = rng.randint(m, max_arity)
            pi = perms.random_partition(m, n, rng)
            tau = perms.random_partition(p, m, rng)
            phi = op.random_element(n, rng)
            chis = [op.random_element(k, rng) for k in pi]
            psis = [op.random_element(k, rng) for k in tau]
            lhs = op.compose(op.compose(phi, pi, chis), tau, psis)
            taupi, subparts = perms.compose_partitions(tau, pi)
            inners = []
            for i in range(1, n + 1):
                block = [psis[perms.pair_to_index(pi, i, t) - 1] for t in range(1, pi[i - 1] + 1)]
                inners.append(op.compose(chis[i - 1], subparts[i - 1], block))
            rhs = op.compose(phi, taupi, inners)
            counts["assoc"] += 1
            if not op.equal(lhs, rhs):
                report.failures.append(LawFailure(
                    "assoc", f"pi={pi} tau={tau} phi={phi!r} chis={chis!r} psis={psis!r}"))
        else:
            n = rng.randint(1, max_arity - 1) if max_arity > 1 else 1
            m = rng.randint(n, max_arity)
            pi = perms.random_partition(m, n, rng)
            sigma = perms.random_perm(n, rng)
            phi = op.random_element(n, rng)
            psis = [op.random_element(k, rng) for k in pi]
            taus = [perms.random_perm(k, rng) for k in pi]
            inv = perms.inverse(sigma)
            lhs = op.compose(
                op.act(phi, sigma),
                perms.act_partition(pi, sigma),
                [op.act(psis[inv[k] - 1], taus[inv[k] - 1]) for k in range(n)])
            glob = perms.sym_compose(sigma, pi, taus)
            rhs = op.act(op.compose(phi, pi, psis), glob)
            counts["equivariance"] += 1
            if not op.equal(lhs, rhs):
                report.failures.append(LawFailure(
                    "equivariance", f"pi={pi} sigma={sigma} phi={phi!r} psis={psis!r} taus={taus}"))

    report.checked = counts
    return report


# ---------------------------------------------------------------------------
# identity sets and consequence spans
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IdentitySet:
    """A named family of multilinear defining identities (all of arity >= 2)."""

    name: str
    identities: tuple

    def __post_init__(self):
        for t in self.identities:
            if not isinstance(t, MultilinearPoly):
                raise InputError("identities must be single-product multilinear polynomials")
            if t.is_zero():
                raise InputError("identities must be nonzero")
            if t.arity < 2:
                raise InputError("identities must have arity >= 2")

    def __iter__(self):
        return iter(self.identities)


@lru_cache(maxsize=None)
def _consequence_space(identities: tuple, n: int) -> RowSpace:
    space = RowSpace()
    unit = MultilinearPoly.monomial(LEAF, (1,))
    group = perms.symmetric_group(n)
    for t in identities:
        m = t.arity
        if m > n:
            continue
        for p in range(m, n + 1):
            for comp in perms.compositions(p, m):
                shape_choices = [all_shapes(k) for k in comp]
                for inner_shapes in itertools.product(*shape_choices):
                    plugs = [MultilinearPoly.monomial(s, perms.identity(s.arity))
                             for s in inner_shapes]
                    inner = ALGS.compose(t, comp, plugs)
                    q = n - p + 1
                    for outer in all_shapes(q):
                        u = MultilinearPoly.monomial(outer, perms.identity(q))
                        for j in range(1, q + 1):
                            pi = (1,) * (j - 1) + (p,) + (1,) * (q - j)
                            gs = [unit] * (j - 1) + [inner] + [unit] * (q - j)
                            g0 = ALGS.compose(u, pi, gs)
                            for sig in group:
                                space.add(to_vec(g0.act(sig)))
    return space


def consequence_space(sigma: IdentitySet | Sequence[MultilinearPoly], n: int,
                      bound: int = CONSEQUENCE_ARITY_BOUND) -> RowSpace:
    """RREF row space of the arity-n multilinear part of the ideal of Sigma."""
    if n < 2:
        raise InputError("consequence arity must be >= 2")
    if n > bound:
        raise ResourceError(
            f"consequence arity {n} exceeds the documented bound {bound} "
            f"(space dimension grows as Catalan(n-1) * n!)")
    identities = tuple(sigma.identities if isinstance(sigma, IdentitySet) else sigma)
    return _consequence_space(identities, n)


def multilinear_consequences(sigma, n: int, bound: int = CONSEQUENCE_ARITY_BOUND):
    """Deterministic row-reduced basis of the arity-n consequences of Sigma."""
    space = consequence_space(sigma, n, bound)
    return [from_vec(MultilinearPoly, n, row) for row in space.rows()]


def varalg_reduce(p: MultilinearPoly, sigma, bound: int = CONSEQUENCE_ARITY_BOUND) -> MultilinearPoly:
    """Normal form of p modulo the consequence span of Sigma."""
    space = consequence_space(sigma, p.arity, bound)
    return from_vec(MultilinearPoly, p.arity, space.reduce(to_vec(p)))
