"""Finite-dimensional (di)algebras given by structure constants over Q.

Structure tables: ``table[i][j]`` is the coordinate vector of the product
of basis elements i and j (0-based indices, vectors as tuples of
Fraction).  Identity checking enumerates basis tuples, which suffices by
multilinearity; the d^n cost is guarded.

Leibniz conventions: brackets are LEFT Leibniz, x(yz) = (xy)z + y(xz).
The induced dialgebra is a |- b = [ab], a -| b = -[ba]; the mirror (right
Leibniz) theory is obtained by transposing the bracket table, which swaps
the roles of |- and -| up to sign.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InputError, ResourceError
from .words import DiPoly, MultilinearPoly, TermPoly, eval_shape_tree

Vec = tuple[Fraction, ...]

EVAL_TUPLE_BOUND = 200_000  # d^n enumeration guard


def _as_vec(v, dim: int) -> Vec:
    t = tuple(Fraction(x) for x in v)
    if len(t) != dim:
        raise InputError(f"vector of length {len(t)}, expected {dim}")
    return t


def vec_add(a: Vec, b: Vec) -> Vec:
    return tuple(x + y for x, y in zip(a, b))


def vec_scale(a: Vec, c: Fraction) -> Vec:
    return tuple(c * x for x in a)


def vec_is_zero(a: Vec) -> bool:
    return not any(a)


def _table(raw, dim: int):
    rows = tuple(tuple(_as_vec(raw[i][j], dim) for j in range(dim)) for i in range(dim))
    if len(raw) != dim:
        raise InputError("structure table has wrong dimension")
    return rows


def _bilinear(table, x: Vec, y: Vec) -> Vec:
    dim = len(table)
    out = [Fraction(0)] * dim
    for i, xi in enumerate(x):
        if not xi:
            continue
        row = table[i]
        for j, yj in enumerate(y):
            if not yj:
                continue
            c = xi * yj
            cell = row[j]
            for k, t in enumerate(cell):
                if t:
                    out[k] += c * t
    return tuple(out)


@dataclass(frozen=True)
class Witness:
    """First failing basis tuple of an identity check, with the defect value."""

    identity: TermPoly
    tuple_indices: tuple[int, ...]
    defect: Vec

    def describe(self, labels: Sequence[str] | None = None) -> str:
        names = [labels[i] if labels else f"b{i + 1}" for i in self.tuple_indices]
        return (f"identity {self.identity} fails at ({', '.join(names)}); "
                f"defect {tuple(str(c) for c in self.defect)}")


class FDAlgebra:
    """One bilinear product on Q^d."""

    def __init__(self, table, labels: Sequence[str] | None = None):
        self.dim = len(table)
        self.table = _table(table, self.dim)
        self.labels = tuple(labels) if labels else tuple(f"b{i + 1}" for i in range(self.dim))

    def basis(self, i: int) -> Vec:
        return tuple(Fraction(1 if j == i else 0) for j in range(self.dim))

    def product(self, x: Vec, y: Vec) -> Vec:
        return _bilinear(self.table, x, y)

    def eval_poly(self, p: MultilinearPoly, args: Sequence[Vec]) -> Vec:
        if len(args) != p.arity:
            raise InputError("argument count does not match arity")
        zero = tuple(Fraction(0) for _ in range(self.dim))
        acc = zero
        for (shape, perm), coeff in p.terms.items():
            leaves = [args[perm[k] - 1] for k in range(shape.arity)]
            acc = vec_add(acc, vec_scale(eval_shape_tree(shape, leaves, self.product), coeff))
        return acc

    def check_identity(self, p: MultilinearPoly) -> Witness | None:
        return _scan(self, p, lambda args: self.eval_poly(p, args))


class FDDialgebra:
    """Two bilinear products -| (left table) and |- (right table) on Q^d."""

    def __init__(self, left, right, labels: Sequence[str] | None = None):
        self.dim = len(left)
        if len(right) != self.dim:
            raise InputError("left/right tables disagree on dimension")
        self.left = _table(left, self.dim)
        self.right = _table(right, self.dim)
        self.labels = tuple(labels) if labels else tuple(f"b{i + 1}" for i in range(self.dim))

    def basis(self, i: int) -> Vec:
        return tuple(Fraction(1 if j == i else 0) for j in range(self.dim))

    def lprod(self, x: Vec, y: Vec) -> Vec:
        """x -| y"""
        return _bilinear(self.left, x, y)

    def rprod(self, x: Vec, y: Vec) -> Vec:
        """x |- y"""
        return _bilinear(self.right, x, y)

    def defect(self, x: Vec, y: Vec) -> Vec:
        """<x,y> = x|-y - x-|y, the obstruction to the two products agreeing."""
        return tuple(a - b for a, b in zip(self.rprod(x, y), self.lprod(x, y)))

    def eval_poly(self, p: DiPoly, args: Sequence[Vec]) -> Vec:
        if len(args) != p.arity:
            raise InputError("argument count does not match arity")
        zero = tuple(Fraction(0) for _ in range(self.dim))
        acc = zero
        for (shape, perm), coeff in p.terms.items():
            leaves = [args[perm[k] - 1] for k in range(shape.arity)]
            val = eval_shape_tree(shape, leaves, None, (self.lprod, self.rprod))
            acc = vec_add(acc, vec_scale(val, coeff))
        return acc


bracket_defect = FDDialgebra.defect


def _scan(alg, p: TermPoly, evaluate) -> Witness | None:
    n = p.arity
    if alg.dim ** n > EVAL_TUPLE_BOUND:
        raise ResourceError(f"{alg.dim}^{n} basis tuples exceed the evaluation bound")
    basis = [alg.basis(i) for i in range(alg.dim)]
    for idx in itertools.product(range(alg.dim), repeat=n):
        val = evaluate([basis[i] for i in idx])
        if not vec_is_zero(val):
            return Witness(p, idx, val)
    return None


def eval_identity(d: FDDialgebra, p: DiPoly) -> Witness | None:
    """None if p vanishes on all basis tuples, else the first lex witness."""
    return _scan(d, p, lambda args: d.eval_poly(p, args))


def is_zero_dialgebra(d: FDDialgebra) -> Witness | None:
    from .translate import zero_dialgebra_axioms
    for ax in zero_dialgebra_axioms():
        w = eval_identity(d, ax)
        if w is not None:
            return w
    return None


def is_var_dialgebra(d: FDDialgebra, sigma, derived=None) -> Witness | None:
    """Zero-dialgebra axioms plus every derived identity of the variety."""
    from .translate import derive_variety
    w = is_zero_dialgebra(d)
    if w is not None:
        return w
    dv = derived if derived is not None else derive_variety(sigma)
    for p in dv.derived:
        w = eval_identity(d, p)
        if w is not None:
            return w
    return None


def _left_leibniz_poly() -> MultilinearPoly:
    from .words import LEAF, node
    lc = node(node(LEAF, LEAF), LEAF)
    rc = node(LEAF, node(LEAF, LEAF))
    return (MultilinearPoly.monomial(rc, (1, 2, 3))
            - MultilinearPoly.monomial(lc, (1, 2, 3))
            - MultilinearPoly.monomial(rc, (2, 1, 3)))


def leibniz_to_dialgebra(bracket: FDAlgebra) -> FDDialgebra:
    """Dialgebra of a left Leibniz bracket: a|-b = [ab], a-|b = -[ba]."""
    w = bracket.check_identity(_left_leibniz_poly())
    if w is not None:
        raise InputError(f"not a left Leibniz algebra: {w.describe(bracket.labels)}")
    d = bracket.dim
    right = [[bracket.table[i][j] for j in range(d)] for i in range(d)]
    left = [[vec_scale(bracket.table[j][i], Fraction(-1)) for j in range(d)] for i in range(d)]
    return FDDialgebra(left, right, bracket.labels)


# ---------------------------------------------------------------------------
# deterministic corpus
# ---------------------------------------------------------------------------

def diagonal_lift(alg: FDAlgebra) -> FDDialgebra:
    """Both products equal to the given one; always a zero-dialgebra."""
    return FDDialgebra(alg.table, alg.table, alg.labels)


def _z(d):
    return [[(0,) * d for _ in range(d)] for _ in range(d)]


def leibniz2() -> FDAlgebra:
    """[e1,e1] = e2, all other brackets zero (the smallest non-Lie Leibniz)."""
    t = _z(2)
    t[0][0] = (0, 1)
    return FDAlgebra(t, ("e1", "e2"))


def leibniz3() -> FDAlgebra:
    """Null-filiform: [a,a] = b, [a,b] = c."""
    t = _z(3)
    t[0][0] = (0, 1, 0)
    t[0][1] = (0, 0, 1)
    return FDAlgebra(t, ("a", "b", "c"))


def sl2() -> FDAlgebra:
    """[e,f]=h, [h,e]=2e, [h,f]=-2f."""
    t = _z(3)
    t[0][1] = (0, 0, 1)       # [e,f]=h
    t[1][0] = (0, 0, -1)
    t[2][0] = (2, 0, 0)       # [h,e]=2e
    t[0][2] = (-2, 0, 0)
    t[2][1] = (0, -2, 0)      # [h,f]=-2f
    t[1][2] = (0, 2, 0)
    return FDAlgebra(t, ("e", "f", "h"))


def upper_triangular2() -> FDAlgebra:
    """2x2 upper triangular matrices, basis (E11, E12, E22); associative."""
    t = _z(3)
    t[0][0] = (1, 0, 0)
    t[0][1] = (0, 1, 0)
    t[1][2] = (0, 1, 0)
    t[2][2] = (0, 0, 1)
    return FDAlgebra(t, ("E11", "E12", "E22"))


def dual_numbers() -> FDAlgebra:
    """Q[x]/(x^2), basis (1, x)."""
    t = _z(2)
    t[0][0] = (1, 0)
    t[0][1] = (0, 1)
    t[1][0] = (0, 1)
    return FDAlgebra(t, ("1", "x"))


def abelian(d: int) -> FDDialgebra:
    return FDDialgebra(_z(d), _z(d))


def bar_unit(weights: Sequence) -> FDDialgebra:
    """a|-b = eps(a) b, a-|b = a eps(b) for the functional eps; a 0-dialgebra
    for any weights with distinct left and right products."""
    w = [Fraction(x) for x in weights]
    d = len(w)
    right = [[tuple(w[i] if k == j else 0 for k in range(d)) for j in range(d)] for i in range(d)]
    left = [[tuple(w[j] if k == i else 0 for k in range(d)) for j in range(d)] for i in range(d)]
    return FDDialgebra(left, right)


def corpus() -> list[tuple[str, FDDialgebra]]:
    """Named zero-dialgebras of dimension <= 3 used across the test suite."""
    return [
        ("leibniz2", leibniz_to_dialgebra(leibniz2())),
        ("leibniz3", leibniz_to_dialgebra(leibniz3())),
        ("sl2", leibniz_to_dialgebra(sl2())),
        ("uppertri2-diag", diagonal_lift(upper_triangular2())),
        ("dual-numbers-diag", diagonal_lift(dual_numbers())),
        ("abelian2", abelian(2)),
        ("bar-unit", bar_unit((1, 2))),
    ]
