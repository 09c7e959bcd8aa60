"""Ordered partitions of integers, permutations, and their mutual actions.

Conventions (fixed once and for all; the symmetric-operad composition
example in the test suite is the oracle for them):

- A permutation of degree n is a tuple ``p`` of length n whose entry
  ``p[i-1]`` is the image of i, written ``i*sigma``.  All values are
  1-based.
- Permutations act on the right and compose left-to-right:
  ``i*(s*t) = (i*s)*t``.
- An n-partition of m is a tuple of n positive integers summing to m.

>>> compose((2, 3, 1), (2, 3, 1))
(3, 1, 2)
>>> from_cycles(3, [(1, 2, 3)])
(2, 3, 1)
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from random import Random
from typing import Iterator, Sequence

from .errors import InputError

Perm = tuple[int, ...]
Partition = tuple[int, ...]


# ---------------------------------------------------------------------------
# permutations
# ---------------------------------------------------------------------------

def check_perm(p: Sequence[int]) -> Perm:
    """Validate one-line data and return it as a tuple."""
    t = tuple(p)
    if sorted(t) != list(range(1, len(t) + 1)):
        raise InputError(f"not a permutation of 1..{len(t)}: {t!r}")
    return t


def identity(n: int) -> Perm:
    return tuple(range(1, n + 1))


def is_identity(p: Perm) -> bool:
    return all(p[i] == i + 1 for i in range(len(p)))


def compose(s: Perm, t: Perm) -> Perm:
    """Right-to-left application order: i -> (i*s)*t.

    >>> compose((2, 1, 3), (1, 3, 2))
    (3, 1, 2)
    """
    if len(s) != len(t):
        raise InputError("degree mismatch in permutation composition")
    return tuple(t[si - 1] for si in s)


def inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, pi in enumerate(p):
        inv[pi - 1] = i + 1
    return tuple(inv)


def apply(p: Perm, i: int) -> int:
    """The image i*p."""
    return p[i - 1]


def from_cycles(n: int, cycles: Sequence[Sequence[int]]) -> Perm:
    """Build a permutation of 1..n from disjoint cycles (a b c): a->b->c->a.

    >>> from_cycles(4, [(2, 3, 4)])
    (1, 3, 4, 2)
    """
    images = list(range(1, n + 1))
    seen: set[int] = set()
    for cyc in cycles:
        for a in cyc:
            if not 1 <= a <= n or a in seen:
                raise InputError(f"bad cycle entry {a} in {cycles!r}")
            seen.add(a)
        for i, a in enumerate(cyc):
            images[a - 1] = cyc[(i + 1) % len(cyc)]
    return tuple(images)


def to_cycles(p: Perm) -> list[tuple[int, ...]]:
    """Disjoint cycles of length >= 2, each starting at its least element."""
    out = []
    seen = [False] * len(p)
    for i in range(1, len(p) + 1):
        if seen[i - 1]:
            continue
        cyc = [i]
        seen[i - 1] = True
        j = p[i - 1]
        while j != i:
            cyc.append(j)
            seen[j - 1] = True
            j = p[j - 1]
        if len(cyc) > 1:
            out.append(tuple(cyc))
    return out


@lru_cache(maxsize=None)
def symmetric_group(n: int) -> tuple[Perm, ...]:
    """All of S_n in lexicographic one-line order."""
    return tuple(itertools.permutations(range(1, n + 1)))


def random_perm(n: int, rng: Random) -> Perm:
    images = list(range(1, n + 1))
    rng.shuffle(images)
    return tuple(images)


# ---------------------------------------------------------------------------
# partitions
# ---------------------------------------------------------------------------

def check_partition(parts: Sequence[int]) -> Partition:
    t = tuple(parts)
    if not t or any(m < 1 for m in t):
        raise InputError(f"partition parts must be positive: {t!r}")
    return t


def partition_total(pi: Partition) -> int:
    return sum(pi)


def pair_to_index(pi: Partition, i: int, j: int) -> int:
    """The bijection (i, j) -> m_1 + ... + m_{i-1} + j.

    >>> pair_to_index((3, 2, 4), 2, 2)
    5
    """
    if not 1 <= i <= len(pi) or not 1 <= j <= pi[i - 1]:
        raise InputError(f"pair ({i},{j}) out of range for partition {pi!r}")
    return sum(pi[: i - 1]) + j


def index_to_pair(pi: Partition, k: int) -> tuple[int, int]:
    """Inverse of :func:`pair_to_index`.

    >>> index_to_pair((3, 2, 4), 5)
    (2, 2)
    """
    if not 1 <= k <= sum(pi):
        raise InputError(f"index {k} out of range for partition {pi!r}")
    acc = 0
    for i, m in enumerate(pi, start=1):
        if k <= acc + m:
            return i, k - acc
        acc += m
    raise AssertionError("unreachable")


def compose_partitions(tau: Partition, pi: Partition) -> tuple[Partition, tuple[Partition, ...]]:
    """Group tau's parts by pi's blocks.

    Returns the grouped partition together with the per-block subpartitions.

    >>> compose_partitions((1, 2, 1, 1, 2), (2, 3))
    ((3, 4), ((1, 2), (1, 1, 2)))
    """
    if len(tau) != sum(pi):
        raise InputError(f"length of {tau!r} does not match total of {pi!r}")
    grouped = []
    subparts = []
    pos = 0
    for m in pi:
        block = tau[pos:pos + m]
        grouped.append(sum(block))
        subparts.append(block)
        pos += m
    return tuple(grouped), tuple(subparts)


def act_partition(pi: Partition, sigma: Perm) -> Partition:
    """Right action: entry i of the result is m_{i*sigma^{-1}}.

    >>> act_partition((3, 2, 4), from_cycles(3, [(1, 2, 3)]))
    (4, 3, 2)
    """
    if len(pi) != len(sigma):
        raise InputError("partition length does not match permutation degree")
    inv = inverse(sigma)
    return tuple(pi[inv[i] - 1] for i in range(len(pi)))


def compositions(m: int, n: int) -> Iterator[Partition]:
    """All n-partitions of m (ordered tuples of positive parts), lexicographic."""
    if n == 1:
        if m >= 1:
            yield (m,)
        return
    for first in range(1, m - n + 2):
        for rest in compositions(m - first, n - 1):
            yield (first,) + rest


def random_partition(m: int, n: int, rng: Random) -> Partition:
    """Uniformly random n-partition of m (via a random cut set)."""
    if not 1 <= n <= m:
        raise InputError(f"no {n}-partitions of {m}")
    cuts = sorted(rng.sample(range(1, m), n - 1))
    bounds = [0] + cuts + [m]
    return tuple(bounds[i + 1] - bounds[i] for i in range(n))


# ---------------------------------------------------------------------------
# the symmetric-group operad composition
# ---------------------------------------------------------------------------

def sym_compose(sigma: Perm, pi: Partition, taus: Sequence[Perm]) -> Perm:
    """Compose permutations along a partition: k = (i,j) maps to (i*sigma, j*tau_i)
    read in the blocks of pi acted by sigma.

    >>> sym_compose(from_cycles(3, [(1, 2, 3)]), (3, 2, 4),
    ...             [from_cycles(3, [(1, 3, 2)]), (2, 1), from_cycles(4, [(2, 3, 4)])])
    (7, 5, 6, 9, 8, 1, 3, 4, 2)
    """
    n = len(sigma)
    if len(pi) != n:
        raise InputError("partition length does not match outer degree")
    if len(taus) != n or any(len(taus[i]) != pi[i] for i in range(n)):
        raise InputError("inner permutation degrees do not match partition")
    pi_sigma = act_partition(pi, sigma)
    m = sum(pi)
    images = []
    for k in range(1, m + 1):
        i, j = index_to_pair(pi, k)
        images.append(pair_to_index(pi_sigma, sigma[i - 1], taus[i - 1][j - 1]))
    return tuple(images)
