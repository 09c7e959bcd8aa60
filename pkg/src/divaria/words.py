"""Bracketing shapes, labeled shapes, multilinear monomials and polynomials.

A monomial of arity n is a pair (shape, perm): the shape is a binary tree
with n leaves, and leaf k (counting left to right) carries the variable
x_{k*perm}.  Dialgebra monomials carry a label on every internal node
(LPROD for the left product -|, RPROD for the right product |-).  Tensor
monomials additionally carry a center index in 1..n naming a variable.

Coefficients are exact rationals; polynomials are kept canonical (like
terms merged, zeros dropped).  The order on shapes is lexicographic on a
preorder encoding in which internal nodes precede leaves, so left combs
come first; monomials sort by (shape, one-line perm, center).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

from . import perms
from .errors import InputError
from .perms import Perm

LPROD = 0  # the product written  -|
RPROD = 1  # the product written  |-

OP_SYMBOL = {LPROD: "-|", RPROD: "|-"}

_ONE = Fraction(1)


# ---------------------------------------------------------------------------
# shapes
# ---------------------------------------------------------------------------

class Shape:
    """Binary bracketing shape; interned, so identity equals equality."""

    __slots__ = ("left", "right", "arity", "key")

    def __init__(self, left: "Shape | None", right: "Shape | None", key: tuple):
        self.left = left
        self.right = right
        self.arity = 1 if left is None else left.arity + right.arity
        self.key = key

    @property
    def is_leaf(self) -> bool:
        return self.left is None

    def __repr__(self) -> str:
        return f"Shape({''.join(map(str, self.key))})"

    def __lt__(self, other: "Shape") -> bool:
        return self.key < other.key


_SHAPE_CACHE: dict[tuple, Shape] = {}
LEAF = Shape(None, None, (1,))
_SHAPE_CACHE[LEAF.key] = LEAF


def node(left: Shape, right: Shape) -> Shape:
    key = (0,) + left.key + right.key
    got = _SHAPE_CACHE.get(key)
    if got is None:
        got = _SHAPE_CACHE[key] = Shape(left, right, key)
    return got


class DiShape:
    """Bracketing shape with an LPROD/RPROD label on every internal node."""

    __slots__ = ("label", "left", "right", "arity", "key")

    def __init__(self, label: int | None, left, right, key: tuple):
        self.label = label
        self.left = left
        self.right = right
        self.arity = 1 if left is None else left.arity + right.arity
        self.key = key

    @property
    def is_leaf(self) -> bool:
        return self.left is None

    def __repr__(self) -> str:
        return f"DiShape({''.join(map(str, self.key))})"

    def __lt__(self, other: "DiShape") -> bool:
        return self.key < other.key


_DISHAPE_CACHE: dict[tuple, DiShape] = {}
DILEAF = DiShape(None, None, None, (1,))
_DISHAPE_CACHE[DILEAF.key] = DILEAF


def dinode(label: int, left: DiShape, right: DiShape) -> DiShape:
    if label not in (LPROD, RPROD):
        raise InputError(f"bad product label {label!r}")
    key = (0, label) + left.key + right.key
    got = _DISHAPE_CACHE.get(key)
    if got is None:
        got = _DISHAPE_CACHE[key] = DiShape(label, left, right, key)
    return got


@lru_cache(maxsize=None)
def all_shapes(n: int) -> tuple[Shape, ...]:
    """All bracketing shapes with n leaves (Catalan(n-1) of them), sorted."""
    if n < 1:
        raise InputError("arity must be >= 1")
    if n == 1:
        return (LEAF,)
    out = []
    for m in range(1, n):
        for l in all_shapes(m):
            for r in all_shapes(n - m):
                out.append(node(l, r))
    return tuple(sorted(out, key=lambda s: s.key))


@lru_cache(maxsize=None)
def all_dishapes(n: int) -> tuple[DiShape, ...]:
    """All labeled shapes with n leaves (Catalan(n-1)*2^(n-1)), sorted."""
    if n < 1:
        raise InputError("arity must be >= 1")
    if n == 1:
        return (DILEAF,)
    out = []
    for m in range(1, n):
        for l in all_dishapes(m):
            for r in all_dishapes(n - m):
                out.append(dinode(LPROD, l, r))
                out.append(dinode(RPROD, l, r))
    return tuple(sorted(out, key=lambda s: s.key))


@lru_cache(maxsize=None)
def erase_labels(ds: DiShape) -> Shape:
    if ds.is_leaf:
        return LEAF
    return node(erase_labels(ds.left), erase_labels(ds.right))


def graft(outer: Shape, inners: Sequence[Shape]) -> Shape:
    """Replace leaf i of outer by inners[i-1], left to right."""
    if len(inners) != outer.arity:
        raise InputError("graft arity mismatch")
    it = iter(inners)

    def rec(s: Shape) -> Shape:
        if s.is_leaf:
            return next(it)
        left = rec(s.left)
        return node(left, rec(s.right))

    return rec(outer)


def graft_di(outer: DiShape, inners: Sequence[DiShape]) -> DiShape:
    if len(inners) != outer.arity:
        raise InputError("graft arity mismatch")
    it = iter(inners)

    def rec(s: DiShape) -> DiShape:
        if s.is_leaf:
            return next(it)
        left = rec(s.left)
        return dinode(s.label, left, rec(s.right))

    return rec(outer)


def center_leaf_position(ds: DiShape) -> int:
    """Leaf position reached from the root going left at -| and right at |-."""
    pos = 1
    while not ds.is_leaf:
        if ds.label == LPROD:
            ds = ds.left
        else:
            pos += ds.left.arity
            ds = ds.right
    return pos


def section_dishape(shape: Shape, p: int) -> DiShape:
    """Label shape so every product sign points at leaf position p.

    A node whose left subtree covers leaf positions up to mid gets -| when
    p <= mid and |- otherwise.  The center-leaf path of the result is p,
    and the labeling agrees with the worked dialgebra identity tables.
    """
    if not 1 <= p <= shape.arity:
        raise InputError(f"leaf position {p} out of range")

    def rec(s: Shape, lo: int) -> DiShape:
        if s.is_leaf:
            return DILEAF
        mid = lo + s.left.arity - 1
        label = LPROD if p <= mid else RPROD
        return dinode(label, rec(s.left, lo), rec(s.right, mid + 1))

    return rec(shape, 1)


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------

class TermPoly:
    """Base class: a canonical linear combination of monomials of one arity."""

    __slots__ = ("arity", "terms")

    def __init__(self, arity: int, terms: dict | None = None):
        self.arity = arity
        clean = {}
        if terms:
            for mono, coeff in terms.items():
                if coeff:
                    self._check_mono(mono, arity)
                    clean[mono] = coeff if isinstance(coeff, Fraction) else Fraction(coeff)
        self.terms = clean

    # subclasses define _check_mono, _mono_key, _act_mono, _render_mono

    @classmethod
    def zero(cls, arity: int):
        return cls(arity)

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: self._mono_key(kv[0]))

    def leading(self):
        return min(self.terms, key=self._mono_key)

    def _binary_check(self, other):
        if type(other) is not type(self):
            raise InputError(f"cannot mix {type(self).__name__} with {type(other).__name__}")
        if other.arity != self.arity:
            raise InputError("mixed arities")

    def __add__(self, other):
        self._binary_check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            new = out.get(m, 0) + c
            if new:
                out[m] = new
            else:
                out.pop(m, None)
        return type(self)(self.arity, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return type(self)(self.arity, {m: -c for m, c in self.terms.items()})

    def scale(self, coeff) -> "TermPoly":
        coeff = Fraction(coeff)
        if not coeff:
            return type(self)(self.arity)
        return type(self)(self.arity, {m: coeff * c for m, c in self.terms.items()})

    __rmul__ = scale

    def act(self, sigma: Perm) -> "TermPoly":
        """Right action of the symmetric group (variable relabeling)."""
        if len(sigma) != self.arity:
            raise InputError("degree mismatch in symmetric group action")
        out: dict = {}
        for mono, coeff in self.terms.items():
            m2 = self._act_mono(mono, sigma)
            out[m2] = out.get(m2, 0) + coeff
        return type(self)(self.arity, out)

    def __eq__(self, other) -> bool:
        return (type(other) is type(self) and other.arity == self.arity
                and other.terms == self.terms)

    def __ne__(self, other) -> bool:
        return not self.__eq__(other)

    def __hash__(self):
        return hash((type(self).__name__, self.arity, frozenset(self.terms.items())))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for i, (mono, coeff) in enumerate(self.sorted_terms()):
            sign = "-" if coeff < 0 else "+"
            mag = abs(coeff)
            body = self._render_mono(mono)
            if mag != 1:
                body = f"{mag} {body}"
            if i == 0:
                parts.append(body if sign == "+" else f"- {body}")
            else:
                parts.append(f"{sign} {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self})"


def _render_tree(shape, perm: Perm, symbol: Callable) -> str:
    counter = [0]

    def rec(s, top: bool) -> str:
        if s.is_leaf:
            counter[0] += 1
            return f"x{perm[counter[0] - 1]}"
        body = f"{rec(s.left, False)}{symbol(s)}{rec(s.right, False)}"
        return body if top else f"({body})"

    return rec(shape, True)


class MultilinearPoly(TermPoly):
    """Linear combination of single-product bracketed multilinear words."""

    __slots__ = ()

    @staticmethod
    def _check_mono(mono, arity):
        shape, perm = mono
        if not isinstance(shape, Shape) or shape.arity != arity or len(perm) != arity:
            raise InputError(f"bad monomial {mono!r} for arity {arity}")

    @staticmethod
    def _mono_key(mono):
        return (mono[0].key, mono[1])

    @staticmethod
    def _act_mono(mono, sigma):
        return (mono[0], perms.compose(mono[1], sigma))

    @staticmethod
    def _render_mono(mono):
        return _render_tree(mono[0], mono[1], lambda s: "*")

    @classmethod
    def monomial(cls, shape: Shape, perm: Perm, coeff=_ONE) -> "MultilinearPoly":
        return cls(shape.arity, {(shape, tuple(perm)): Fraction(coeff)})


class DiPoly(TermPoly):
    """Linear combination of two-product (labeled) multilinear words."""

    __slots__ = ()

    @staticmethod
    def _check_mono(mono, arity):
        shape, perm = mono
        if not isinstance(shape, DiShape) or shape.arity != arity or len(perm) != arity:
            raise InputError(f"bad dialgebra monomial {mono!r} for arity {arity}")

    @staticmethod
    def _mono_key(mono):
        return (mono[0].key, mono[1])

    @staticmethod
    def _act_mono(mono, sigma):
        return (mono[0], perms.compose(mono[1], sigma))

    @staticmethod
    def _render_mono(mono):
        return _render_tree(mono[0], mono[1], lambda s: OP_SYMBOL[s.label])

    @classmethod
    def monomial(cls, shape: DiShape, perm: Perm, coeff=_ONE) -> "DiPoly":
        return cls(shape.arity, {(shape, tuple(perm)): Fraction(coeff)})


class TensorPoly(TermPoly):
    """Words paired with a basis vector index (the center variable)."""

    __slots__ = ()

    @staticmethod
    def _check_mono(mono, arity):
        shape, perm, center = mono
        if (not isinstance(shape, Shape) or shape.arity != arity
                or len(perm) != arity or not 1 <= center <= arity):
            raise InputError(f"bad tensor monomial {mono!r} for arity {arity}")

    @staticmethod
    def _mono_key(mono):
        return (mono[0].key, mono[1], mono[2])

    @staticmethod
    def _act_mono(mono, sigma):
        shape, perm, center = mono
        return (shape, perms.compose(perm, sigma), sigma[center - 1])

    @staticmethod
    def _render_mono(mono):
        word = _render_tree(mono[0], mono[1], lambda s: "*")
        return f"({word})@e{mono[2]}"

    @classmethod
    def monomial(cls, shape: Shape, perm: Perm, center: int, coeff=_ONE) -> "TensorPoly":
        return cls(shape.arity, {(shape, tuple(perm), center): Fraction(coeff)})


def canonicalize(p: TermPoly) -> TermPoly:
    """Identity on the canonical representation (polynomials stay canonical)."""
    return type(p)(p.arity, p.terms)


# ---------------------------------------------------------------------------
# coordinates
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def basis_monomials(cls_name: str, n: int) -> dict:
    """Monomial -> coordinate index for the given polynomial kind and arity."""
    group = perms.symmetric_group(n)
    monos: list = []
    if cls_name == "MultilinearPoly":
        for s in all_shapes(n):
            for p in group:
                monos.append((s, p))
    elif cls_name == "DiPoly":
        for s in all_dishapes(n):
            for p in group:
                monos.append((s, p))
    elif cls_name == "TensorPoly":
        for s in all_shapes(n):
            for p in group:
                for c in range(1, n + 1):
                    monos.append((s, p, c))
    else:
        raise InputError(f"unknown polynomial kind {cls_name}")
    return {m: i for i, m in enumerate(monos)}


def to_vec(p: TermPoly) -> dict:
    index = basis_monomials(type(p).__name__, p.arity)
    return {index[m]: c for m, c in p.terms.items()}


def from_vec(cls, n: int, vec: dict) -> TermPoly:
    index = basis_monomials(cls.__name__, n)
    rev = {i: m for m, i in index.items()}
    return cls(n, {rev[i]: c for i, c in vec.items()})


# ---------------------------------------------------------------------------
# evaluation against bilinear products
# ---------------------------------------------------------------------------

def eval_shape_tree(shape, leaves: list, product: Callable, diproducts=None):
    """Fold a (di)shape over leaf values with the given bilinear product(s).

    For a DiShape pass diproducts=(left_product, right_product) and
    product=None.
    """
    it = iter(leaves)

    def rec(s):
        if s.is_leaf:
            return next(it)
        lv = rec(s.left)
        rv = rec(s.right)
        if diproducts is not None:
            return diproducts[s.label](lv, rv)
        return product(lv, rv)

    return rec(shape)


def eval_monomial(mono, args: Sequence, product=None, diproducts=None):
    """Evaluate a monomial on args (args[i-1] substituted for x_i)."""
    shape, perm = mono[0], mono[1]
    leaves = [args[perm[k] - 1] for k in range(shape.arity)]
    return eval_shape_tree(shape, leaves, product, diproducts)
