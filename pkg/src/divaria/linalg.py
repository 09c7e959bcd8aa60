"""Exact rational linear algebra on sparse vectors.

Vectors are dicts mapping a hashable, totally ordered column key to a
nonzero Fraction.  RowSpace maintains a reduced row echelon basis
incrementally; the basis is canonical (independent of insertion order),
which makes row spaces directly comparable.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Iterable

Vec = dict

ZERO = Fraction(0)
ONE = Fraction(1)


def vec_axpy(target: Vec, coeff: Fraction, source: Vec) -> None:
    """target += coeff * source, dropping cancellations."""
    if not coeff:
        return
    for k, v in source.items():
        new = target.get(k, ZERO) + coeff * v
        if new:
            target[k] = new
        else:
            target.pop(k, None)


def vec_scale(v: Vec, coeff: Fraction) -> Vec:
    if not coeff:
        return {}
    return {k: coeff * x for k, x in v.items()}


def vec_sub(a: Vec, b: Vec) -> Vec:
    out = dict(a)
    vec_axpy(out, Fraction(-1), b)
    return out


class RowSpace:
    """Incrementally built RREF basis of a span of sparse vectors."""

    def __init__(self, rows: Iterable[Vec] = ()):  # rows are copied
        self._rows: dict[Hashable, Vec] = {}  # pivot key -> row (pivot coeff 1)
        for r in rows:
            self.add(r)

    @property
    def rank(self) -> int:
        return len(self._rows)

    def rows(self) -> list[Vec]:
        """Basis rows sorted by pivot."""
        return [dict(self._rows[p]) for p in sorted(self._rows)]

    def pivots(self) -> list[Hashable]:
        return sorted(self._rows)

    def reduce(self, v: Vec) -> Vec:
        """Normal form of v modulo the row space."""
        out = dict(v)
        while out:
            lead = min(out)
            row = self._rows.get(lead)
            if row is None:
                break
            vec_axpy(out, -out[lead], row)
        # eliminate any later pivots too
        for p in sorted(self._rows):
            if p in out:
                vec_axpy(out, -out[p], self._rows[p])
        return out

    def contains(self, v: Vec) -> bool:
        return not self.reduce(v)

    def add(self, v: Vec) -> bool:
        """Insert a vector; returns True if the rank grew."""
        red = self.reduce(v)
        if not red:
            return False
        lead = min(red)
        inv = ONE / red[lead]
        row = {k: inv * x for k, x in red.items()}
        # back-substitute into existing rows to keep full RREF
        for p, r in self._rows.items():
            if lead in r:
                vec_axpy(r, -r[lead], row)
        self._rows[lead] = row
        return True

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RowSpace):
            return NotImplemented
        return self._rows == other._rows

    def __ne__(self, other: object) -> bool:
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    def __le__(self, other: "RowSpace") -> bool:
        """Subspace test."""
        return all(other.contains(r) for r in self._rows.values())

    def __repr__(self) -> str:
        return f"RowSpace(rank={self.rank})"


def span_equal(a: Iterable[Vec], b: Iterable[Vec]) -> bool:
    return RowSpace(a) == RowSpace(b)
