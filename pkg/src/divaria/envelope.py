"""Pseudo-algebras over the one-variable polynomial Hopf algebra.

Values of an n-ary operation live in H^{(x)n} (x)_H C.  We keep them
*normalized*: a polynomial in formal variables T_1..T_{n-1} with
coefficients in C (slot n eliminated through the standard isomorphism,
which for a slot-n power T^k expands through the iterated coproduct and
the antipode signs).  Normalized values are canonical, so equality is a
dictionary comparison.

Two pseudo-algebra families implement the element protocol:

- EnvelopePA: the enveloping pseudo-algebra of a zero-dialgebra A, built
  on (k[T] (x) A) (+) (A (x) A)/W.  W always contains the span of
  defect(x)defect tensors; variety quotients enlarge it by an ideal that
  the closed forms produce.
- CurrentPA (current module): polynomial matrices with the product
  concentrated in degree zero, plus its commutator variant.

The closed-form evaluator assembles values of words on A-arguments (and
on arguments with a single (A(x)A)-entry) directly from dialgebra
evaluations of labeled words; it is the independent oracle against the
recursive pseudo-product evaluator, and the two are compared term by
term in the test suite before the closed forms are trusted anywhere.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import perms
from .errors import InputError, ResourceError
from .fd import FDDialgebra, Vec, is_zero_dialgebra, vec_add, vec_is_zero, vec_scale
from .hopf import coproduct_splits
from .linalg import RowSpace
from .operads import IdentitySet
from .translate import derive_variety
from .words import (MultilinearPoly, Shape, TensorPoly, section_dishape,
                    eval_shape_tree)

DEFAULT_DEGREE_CAP = 16

_ZERO = Fraction(0)
_ONE = Fraction(1)


def degree_cap() -> int:
    raw = os.environ.get("DIVARIA_MAX_DEGREE")
    return int(raw) if raw else DEFAULT_DEGREE_CAP


# ---------------------------------------------------------------------------
# element protocol
# ---------------------------------------------------------------------------

class PseudoAlgebra:
    """Base pseudo-product data: a module with a T-action and a binary
    pseudo-product returned as [(p, q, element)] terms meaning
    T^p (x) T^q (x)_H element."""

    def zero(self):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def scale(self, a, coeff):
        raise NotImplementedError

    def t_act(self, a):
        raise NotImplementedError

    def is_zero(self, a) -> bool:
        raise NotImplementedError

    def base_product(self, x, y) -> list:
        raise NotImplementedError

    def generators(self) -> list:
        """[(name, element)] spanning the algebra over k[T] (plus torsion part)."""
        raise NotImplementedError

    def describe(self, a) -> str:
        return repr(a)

    def t_pow(self, a, k: int):
        for _ in range(k):
            a = self.t_act(a)
        return a

    def eq(self, a, b) -> bool:
        return self.is_zero(self.add(a, self.scale(b, -1)))


# ---------------------------------------------------------------------------
# normalized spread elements
# ---------------------------------------------------------------------------

class Spread:
    """Polynomial in T_1..T_{n-1} with coefficients in the algebra."""

    __slots__ = ("alg", "n", "terms")

    def __init__(self, alg: PseudoAlgebra, n: int, terms: dict | None = None):
        self.alg = alg
        self.n = n
        self.terms = {}
        if terms:
            for k, v in terms.items():
                if not alg.is_zero(v):
                    self.terms[k] = v

    def constant(self):
        return self.terms.get((0,) * (self.n - 1), self.alg.zero())

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), self.alg.zero())

    def add(self, other: "Spread") -> "Spread":
        out = dict(self.terms)
        for k, v in other.terms.items():
            cur = out.get(k)
            s = v if cur is None else self.alg.add(cur, v)
            if self.alg.is_zero(s):
                out.pop(k, None)
            else:
                out[k] = s
        return Spread(self.alg, self.n, out)

    def scale(self, coeff) -> "Spread":
        if not coeff:
            return Spread(self.alg, self.n)
        return Spread(self.alg, self.n, {k: self.alg.scale(v, coeff) for k, v in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def eq(self, other: "Spread") -> bool:
        return self.add(other.scale(-1)).is_zero()

    def describe(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for exps in sorted(self.terms):
            mon = "*".join(f"T{i + 1}^{e}" if e > 1 else f"T{i + 1}"
                           for i, e in enumerate(exps) if e) or "1"
            bits.append(f"{mon}.({self.alg.describe(self.terms[exps])})")
        return " + ".join(bits)


def _accumulate(alg, acc: dict, key: tuple, elem, coeff=_ONE):
    if coeff != 1:
        elem = alg.scale(elem, coeff)
    if alg.is_zero(elem):
        return
    cur = acc.get(key)
    s = elem if cur is None else alg.add(cur, elem)
    if alg.is_zero(s):
        acc.pop(key, None)
    else:
        acc[key] = s


def _normalize_into(alg, acc: dict, full_exps: tuple, elem, coeff=_ONE):
    """Add the unnormalized term T^{full_exps} (x)_H elem (slot count n =
    len(full_exps)); the slot-n power is eliminated via the coproduct."""
    cap = degree_cap()
    if any(e > cap for e in full_exps):
        raise ResourceError(f"T-degree {max(full_exps)} exceeds cap {cap}")
    n = len(full_exps)
    kn = full_exps[-1]
    if kn == 0:
        _accumulate(alg, acc, full_exps[:-1], elem, coeff)
        return
    for split, multi in coproduct_splits(kn, n):
        sign = -1 if (kn - split[-1]) & 1 else 1
        shifted = alg.t_pow(elem, split[-1])
        key = tuple(full_exps[i] + split[i] for i in range(n - 1))
        _accumulate(alg, acc, key, shifted, coeff * sign * multi)


def normalize(alg, hs: Sequence[Sequence], c) -> Spread:
    """Normalize h_1 (x) ... (x) h_n (x)_H c to a polynomial in T_1..T_{n-1}.

    Each h_i is a T-polynomial given by its coefficient sequence (index =
    power).  The last slot is eliminated through the coproduct and the
    antipode; slot-i coefficients stay put.
    """
    n = len(hs)
    if n < 1:
        raise InputError("need at least one tensor slot")
    acc: dict = {}
    for exps in itertools.product(*[range(len(h)) for h in hs]):
        coeff = Fraction(1)
        for h, e in zip(hs, exps):
            coeff *= Fraction(h[e])
        if coeff:
            _normalize_into(alg, acc, tuple(exps), c, coeff)
    return Spread(alg, n, acc)


def leaf_spread(alg, x) -> Spread:
    return Spread(alg, 1, {(): x})


def pseudo_product(alg, f: Spread, g: Spread) -> Spread:
    """Expansion of the base pseudo-product over two normalized factors."""
    k, m = f.n, g.n
    acc: dict = {}
    for mu, fe in f.terms.items():
        for nu, ge in g.terms.items():
            for p, q, c in alg.base_product(fe, ge):
                if alg.is_zero(c):
                    continue
                for ps, m1 in coproduct_splits(p, k):
                    for qs, m2 in coproduct_splits(q, m):
                        full = (tuple(mu[i] + ps[i] for i in range(k - 1)) + (ps[-1],)
                                + tuple(nu[i] + qs[i] for i in range(m - 1)) + (qs[-1],))
                        _normalize_into(alg, acc, full, c, Fraction(m1 * m2))
    return Spread(alg, k + m, acc)


def act_spread(alg, f: Spread, sigma) -> Spread:
    """Slot relabeling T_i -> T_{i*sigma} followed by renormalization."""
    n = f.n
    if perms.is_identity(sigma):
        return f
    acc: dict = {}
    for exps, elem in f.terms.items():
        full = exps + (0,)
        moved = [0] * n
        for i in range(n):
            moved[sigma[i] - 1] = full[i]
        _normalize_into(alg, acc, tuple(moved), elem)
    return Spread(alg, n, acc)


def eval_term(alg, t, args: Sequence) -> Spread:
    """Recursive pseudo-product evaluation of a word or polynomial.

    A monomial (shape, sigma) evaluates the plain shape on the permuted
    arguments and then twists the slots by sigma.
    """
    if isinstance(t, MultilinearPoly):
        if t.arity != len(args):
            raise InputError("arity mismatch")
        acc = Spread(alg, t.arity)
        for mono, coeff in t.terms.items():
            acc = acc.add(eval_term(alg, mono, args).scale(coeff))
        return acc
    shape, sigma = t
    if shape.arity != len(args):
        raise InputError("arity mismatch")
    permuted = [args[s - 1] for s in sigma]
    return act_spread(alg, _eval_plain(alg, shape, permuted), sigma)


def _eval_plain(alg, shape: Shape, args) -> Spread:
    if shape.is_leaf:
        return leaf_spread(alg, args[0])
    m = shape.left.arity
    return pseudo_product(alg,
                          _eval_plain(alg, shape.left, args[:m]),
                          _eval_plain(alg, shape.right, args[m:]))


def n_product(alg, x, y, n: int):
    """x o_n y: the T_1^n coefficient of the normalized product x*y."""
    prod = pseudo_product(alg, leaf_spread(alg, x), leaf_spread(alg, y))
    return prod.coefficient((n,))


@dataclass
class CoefficientDialgebra:
    """The two coefficient operations of a pseudo-algebra."""

    alg: PseudoAlgebra

    def rprod(self, x, y):
        out = self.alg.zero()
        for p, q, c in self.alg.base_product(x, y):
            if p == 0:
                out = self.alg.add(out, self.alg.t_pow(c, q))
        return out

    def lprod(self, x, y):
        out = self.alg.zero()
        for p, q, c in self.alg.base_product(x, y):
            if q == 0:
                out = self.alg.add(out, self.alg.t_pow(c, p))
        return out

    def eval_dipoly(self, p, args):
        acc = self.alg.zero()
        for (shape, perm), coeff in p.terms.items():
            leaves = [args[perm[k] - 1] for k in range(shape.arity)]
            val = eval_shape_tree(shape, leaves, None, (self.lprod, self.rprod))
            acc = self.alg.add(acc, self.alg.scale(val, coeff))
        return acc


def coefficient_dialgebra(alg: PseudoAlgebra) -> CoefficientDialgebra:
    return CoefficientDialgebra(alg)


def epsilon_eval(alg, f, args) -> object:
    """Counit-collapse of a tensor element evaluated on args.

    For f0 (x) e_i only the slot-i variable survives; its power acts
    through T on the coefficient.  Accepts a TensorPoly or a single
    (shape, perm, center) monomial.
    """
    if isinstance(f, TensorPoly):
        acc = alg.zero()
        for mono, coeff in f.terms.items():
            acc = alg.add(acc, alg.scale(epsilon_eval(alg, mono, args), coeff))
        return acc
    shape, sigma, center = f
    spread = eval_term(alg, (shape, sigma), args)
    n = shape.arity
    out = alg.zero()
    if center == n:
        return spread.constant()
    for exps, elem in spread.terms.items():
        if all(e == 0 for i, e in enumerate(exps) if i != center - 1):
            out = alg.add(out, alg.t_pow(elem, exps[center - 1]))
    return out


def check_var_pseudo(alg: PseudoAlgebra, sigma: IdentitySet, max_tuples: int = 200_000):
    """Evaluate every defining identity on all generator tuples.

    Returns None on success or a (identity, generator names, spread)
    witness.  Generator tuples suffice by multilinearity of the expanded
    pseudo-product over H.
    """
    gens = alg.generators()
    for t in sigma:
        n = t.arity
        if len(gens) ** n > max_tuples:
            raise ResourceError("generator tuple enumeration too large")
        for combo in itertools.product(gens, repeat=n):
            names = tuple(name for name, _ in combo)
            spread = eval_term(alg, t, [el for _, el in combo])
            if not spread.is_zero():
                return (t, names, spread)
    return None


# ---------------------------------------------------------------------------
# the enveloping pseudo-algebra of a zero-dialgebra
# ---------------------------------------------------------------------------

class CElement:
    """c0: {(T-power, basis index): coeff}; c1: {(i, j): coeff} reduced."""

    __slots__ = ("c0", "c1")

    def __init__(self, c0: dict | None = None, c1: dict | None = None):
        self.c0 = c0 or {}
        self.c1 = c1 or {}

    def __repr__(self):
        return f"CElement(c0={self.c0}, c1={self.c1})"


class EnvelopePA(PseudoAlgebra):
    """(k[T] (x) A) (+) (A (x) A)/W with the four base products.

    W must be closed under the requirement T(W) = 0 (checked), which is
    what makes the T-action and the products descend to the quotient.
    """

    def __init__(self, a: FDDialgebra, extra_relations: Sequence[dict] = ()):
        w = is_zero_dialgebra(a)
        if w is not None:
            raise InputError(f"not a zero-dialgebra: {w.describe(a.labels)}")
        self.A = a
        d = a.dim
        self.defects = [[a.defect(a.basis(i), a.basis(j)) for j in range(d)] for i in range(d)]
        rel = RowSpace()
        for i in range(d):
            for j in range(d):
                di = self.defects[i][j]
                if vec_is_zero(di):
                    continue
                for k in range(d):
                    for l in range(d):
                        dk = self.defects[k][l]
                        if vec_is_zero(dk):
                            continue
                        vec = {}
                        for s, x in enumerate(di):
                            if x:
                                for t, y in enumerate(dk):
                                    if y:
                                        vec[(s, t)] = x * y
                        rel.add(vec)
        for row in rel.rows():
            if not vec_is_zero(self._t_of_pairs(row)):
                raise InputError("defect tensors are not killed by T; input is inconsistent")
        for extra in extra_relations:
            if not vec_is_zero(self._t_of_pairs(extra)):
                raise InputError("quotient relation not killed by T")
            rel.add(extra)
        self.rel = rel
        pivots = set(rel.pivots())
        self.c1_basis = tuple(p for p in sorted(itertools.product(range(d), repeat=2))
                              if p not in pivots)

    # -- constructors ------------------------------------------------------

    def from_a(self, vec: Vec, power: int = 0) -> CElement:
        return CElement({(power, i): x for i, x in enumerate(vec) if x}, {})

    def basis_a(self, i: int) -> CElement:
        return CElement({(0, i): _ONE}, {})

    def pair(self, i: int, j: int) -> CElement:
        return CElement({}, self.rel.reduce({(i, j): _ONE}))

    def from_c1(self, vec: dict) -> CElement:
        return CElement({}, self.rel.reduce(dict(vec)))

    def tensor_pair(self, x: Vec, y: Vec) -> dict:
        out = {}
        for i, a in enumerate(x):
            if a:
                for j, b in enumerate(y):
                    if b:
                        out[(i, j)] = a * b
        return self.rel.reduce(out)

    # -- element protocol ----------------------------------------------------

    def zero(self):
        return CElement()

    def add(self, a: CElement, b: CElement) -> CElement:
        c0 = dict(a.c0)
        for k, v in b.c0.items():
            s = c0.get(k, 0) + v
            if s:
                c0[k] = s
            else:
                c0.pop(k, None)
        c1 = dict(a.c1)
        for k, v in b.c1.items():
            s = c1.get(k, 0) + v
            if s:
                c1[k] = s
            else:
                c1.pop(k, None)
        return CElement(c0, c1)

    def scale(self, a: CElement, coeff) -> CElement:
        coeff = Fraction(coeff)
        if not coeff:
            return CElement()
        return CElement({k: coeff * v for k, v in a.c0.items()},
                        {k: coeff * v for k, v in a.c1.items()})

    def is_zero(self, a: CElement) -> bool:
        return not a.c0 and not a.c1

    def _t_of_pairs(self, c1: dict) -> Vec:
        out = [_ZERO] * self.A.dim
        for (i, j), coeff in c1.items():
            for s, x in enumerate(self.defects[i][j]):
                if x:
                    out[s] += coeff * x
        return tuple(out)

    def t_act(self, a: CElement) -> CElement:
        c0 = {(k + 1, i): v for (k, i), v in a.c0.items()}
        if a.c1:
            for i, x in enumerate(self._t_of_pairs(a.c1)):
                if x:
                    s = c0.get((0, i), 0) + x
                    if s:
                        c0[(0, i)] = s
                    else:
                        c0.pop((0, i), None)
        return CElement(c0, {})

    def base_product(self, x: CElement, y: CElement) -> list:
        buckets: dict = {}

        def put(p, q, elem):
            if self.is_zero(elem):
                return
            key = (p, q)
            cur = buckets.get(key)
            buckets[key] = elem if cur is None else self.add(cur, elem)

        a = self.A
        for (k, i), cx in x.c0.items():
            xi_right = a.right[i]
            for (l, j), cy in y.c0.items():
                c = cx * cy
                prod = xi_right[j]
                if not vec_is_zero(prod):
                    put(k, l, self.from_a(vec_scale(prod, c)))
                put(k + 1, l, CElement({}, self.rel.reduce({(i, j): -c})))
            if y.c1:
                ty = self._t_of_pairs(y.c1)
                if not vec_is_zero(ty):
                    elem = CElement({}, self.tensor_pair(a.basis(i), vec_scale(ty, cx)))
                    put(k, 0, elem)
        if x.c1:
            tx = self._t_of_pairs(x.c1)
            if not vec_is_zero(tx):
                for (l, j), cy in y.c0.items():
                    elem = CElement({}, self.tensor_pair(vec_scale(tx, -cy), a.basis(j)))
                    put(0, l, elem)
        return [(p, q, e) for (p, q), e in buckets.items() if not self.is_zero(e)]

    def generators(self) -> list:
        gens = [(self.A.labels[i], self.basis_a(i)) for i in range(self.A.dim)]
        for (i, j) in self.c1_basis:
            gens.append((f"[{self.A.labels[i]}(x){self.A.labels[j]}]", self.pair(i, j)))
        return gens

    def describe(self, a: CElement) -> str:
        bits = []
        for (k, i) in sorted(a.c0):
            coeff = a.c0[(k, i)]
            t = f"T^{k} " if k > 1 else ("T " if k == 1 else "")
            bits.append(f"{coeff} {t}{self.A.labels[i]}")
        for (i, j) in sorted(a.c1):
            bits.append(f"{a.c1[(i, j)]} [{self.A.labels[i]}(x){self.A.labels[j]}]")
        return " + ".join(bits) if bits else "0"

    # -- classification ------------------------------------------------------

    def pure_a(self, x: CElement) -> Vec | None:
        if x.c1 or any(k for (k, _i) in x.c0):
            return None
        out = [_ZERO] * self.A.dim
        for (_k, i), v in x.c0.items():
            out[i] = v
        return tuple(out)

    def pure_c1(self, x: CElement) -> dict | None:
        return x.c1 if not x.c0 else None


def build_envelope(a: FDDialgebra) -> EnvelopePA:
    return EnvelopePA(a)


# ---------------------------------------------------------------------------
# closed forms (the independent oracle)
# ---------------------------------------------------------------------------

def _word_e_eval(env: EnvelopePA, shape: Shape, pos: int, avecs: list) -> Vec:
    """Dialgebra value of the word labeled toward leaf position pos."""
    ds = section_dishape(shape, pos)
    return eval_shape_tree(ds, avecs, None, (env.A.lprod, env.A.rprod))


def _plain_closed(env: EnvelopePA, shape: Shape, avecs: list):
    """(x0, {i: c1 pair dict}) for a plain word on A arguments."""
    n = shape.arity
    x0 = _word_e_eval(env, shape, n, avecs)
    xs: dict = {}
    if n > 1:
        m = shape.left.arity
        left_args, right_args = avecs[:m], avecs[m:]
        y0 = _word_e_eval(env, shape.right, n - m, right_args)
        for i in range(1, m + 1):
            li = _word_e_eval(env, shape.left, i, left_args)
            pair = env.tensor_pair(li, y0)
            if pair:
                xs[i] = pair
        x0l = _word_e_eval(env, shape.left, m, left_args)
        for j in range(1, n - m):
            vj = vec_add(_word_e_eval(env, shape.right, n - m, right_args),
                         vec_scale(_word_e_eval(env, shape.right, j, right_args), Fraction(-1)))
            pair = env.tensor_pair(x0l, vj)
            if pair:
                xs[m + j] = pair
    return x0, xs


def _pair_sub(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, v in b.items():
        s = out.get(k, 0) - v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def _closed_mono_a(env: EnvelopePA, mono, avecs: list) -> Spread:
    """Closed form of a (possibly twisted) word on A arguments."""
    shape, sigma = mono
    n = shape.arity
    permuted = [avecs[s - 1] for s in sigma]
    y0, ys = _plain_closed(env, shape, permuted)
    inv = perms.inverse(sigma)
    if sigma[n - 1] == n:
        x0 = y0
        xs = {j: ys[inv[j - 1]] for j in range(1, n) if inv[j - 1] in ys}
    else:
        q = inv[n - 1]
        yq = ys.get(q, {})
        x0 = vec_add(y0, vec_scale(env._t_of_pairs(yq), Fraction(-1)))
        xs = {}
        nsig = sigma[n - 1]
        for j in range(1, n):
            if j == nsig:
                val = {k: -v for k, v in yq.items()}
            else:
                val = _pair_sub(ys.get(inv[j - 1], {}), yq)
            if val:
                xs[j] = val
    terms = {}
    if not vec_is_zero(x0):
        terms[(0,) * (n - 1)] = env.from_a(x0)
    for j, pair in xs.items():
        exps = tuple(1 if i == j - 1 else 0 for i in range(n - 1))
        terms[exps] = env.from_c1({k: -v for k, v in pair.items()})
    return Spread(env, n, terms)


def _closed_d_plain(env: EnvelopePA, shape: Shape, args: list, s: int) -> dict:
    """C1 value of a plain word whose argument s (leaf position) is a pair."""
    if shape.is_leaf:
        return args[0]
    m = shape.left.arity
    n = shape.arity
    if s <= m:
        x = _closed_d_plain(env, shape.left, args[:m], s)
        y0 = _word_e_eval(env, shape.right, n - m, args[m:])
        tx = env._t_of_pairs(x)
        return env.tensor_pair(vec_scale(tx, Fraction(-1)), y0)
    x0l = _word_e_eval(env, shape.left, m, args[:m])
    x = _closed_d_plain(env, shape.right, args[m:], s - m)
    return env.tensor_pair(x0l, env._t_of_pairs(x))


def closed_form_eval(env: EnvelopePA, t, args: Sequence[CElement]) -> Spread:
    """Assemble the value of t on args from dialgebra evaluations only.

    Supported argument patterns: all arguments in A, or exactly one
    argument in the tensor part (then each monomial of t is a word, plain
    or twisted).  No pseudo-products are used.
    """
    if isinstance(t, MultilinearPoly):
        acc = Spread(env, t.arity)
        for mono, coeff in t.terms.items():
            acc = acc.add(closed_form_eval(env, mono, args).scale(coeff))
        return acc
    shape, sigma = t
    n = shape.arity
    if n != len(args):
        raise InputError("arity mismatch")
    kinds = []
    for x in args:
        av = env.pure_a(x)
        if av is not None:
            kinds.append(("A", av))
            continue
        cv = env.pure_c1(x)
        if cv is not None:
            kinds.append(("C1", cv))
            continue
        raise InputError("closed forms support pure A or pure tensor arguments only")
    n_c1 = sum(1 for k, _ in kinds if k == "C1")
    if n_c1 == 0:
        return _closed_mono_a(env, t, [v for _, v in kinds])
    if n_c1 > 1:
        raise InputError("closed forms support at most one tensor argument")
    s = next(i for i, (k, _) in enumerate(kinds, start=1) if k == "C1")
    inv = perms.inverse(sigma)
    permuted = [kinds[sig - 1][1] for sig in sigma]
    s_plain = inv[s - 1]
    val = _closed_d_plain(env, shape, permuted, s_plain)
    terms = {}
    if val:
        terms[(0,) * (n - 1)] = env.from_c1(val)
    return Spread(env, n, terms)


# ---------------------------------------------------------------------------
# variety quotients
# ---------------------------------------------------------------------------

@dataclass
class VarQuotient:
    base: EnvelopePA
    ideal: RowSpace          # rows in (A (x) A) coordinates reduced mod U
    quotient: EnvelopePA


def build_var_quotient(env: EnvelopePA, sigma: IdentitySet, derived=None) -> VarQuotient:
    """Span the tensor-part coefficients of all identity evaluations on
    basis tuples (and one-pair tuples), check the degree-zero parts vanish,
    and quotient by the resulting ideal."""
    a = env.A
    d = a.dim
    dv = derived if derived is not None else derive_variety(sigma)
    from .fd import is_var_dialgebra
    w = is_var_dialgebra(a, sigma, dv)
    if w is not None:
        raise InputError(f"dialgebra fails the variety: {w.describe(a.labels)}")
    rows = RowSpace()
    for t in sigma:
        n = t.arity
        for idx in itertools.product(range(d), repeat=n):
            args = [env.basis_a(i) for i in idx]
            spread = closed_form_eval(env, t, args)
            const = spread.constant()
            if not env.is_zero(const):
                raise InputError(
                    f"degree-zero part of {t} at basis tuple {idx} is nonzero; "
                    f"the identity fails on A")
            for exps, elem in spread.terms.items():
                if any(exps):
                    if elem.c0:
                        raise InputError("unexpected free part in ideal generator")
                    rows.add(dict(elem.c1))
        for slot in range(1, n + 1):
            for idx in itertools.product(range(d), repeat=n - 1):
                for pr in env.c1_basis:
                    args = []
                    it = iter(idx)
                    for pos in range(1, n + 1):
                        args.append(env.pair(*pr) if pos == slot else env.basis_a(next(it)))
                    spread = closed_form_eval(env, t, args)
                    for exps, elem in spread.terms.items():
                        if any(exps) or elem.c0:
                            raise InputError("one-pair evaluation is not concentrated in degree zero")
                        rows.add(dict(elem.c1))
    quotient = EnvelopePA(a, extra_relations=rows.rows())
    return VarQuotient(env, rows, quotient)


# ---------------------------------------------------------------------------
# homomorphism extension
# ---------------------------------------------------------------------------

@dataclass
class ExtendedHom:
    """k[T]-linear map out of a (quotiented) envelope, with its check log."""

    env: EnvelopePA
    target: PseudoAlgebra
    phi: list                 # image of each A basis element
    pair_images: list         # image of each (i, j) tensor generator
    checks: dict

    def apply_c1(self, c1: dict):
        out = self.target.zero()
        for (i, j), coeff in c1.items():
            out = self.target.add(out, self.target.scale(self.pair_images[i][j], coeff))
        return out

    def apply(self, x: CElement):
        out = self.apply_c1(x.c1)
        for (k, i), coeff in x.c0.items():
            out = self.target.add(out, self.target.scale(self.target.t_pow(self.phi[i], k), coeff))
        return out


def extend_hom(env: EnvelopePA, phi: Sequence, target: PseudoAlgebra,
               relations: RowSpace | None = None) -> ExtendedHom:
    """Extend a dialgebra homomorphism phi: A -> target^(0) to the envelope.

    phi is given on the A basis.  Raises InputError naming the first
    failed requirement: homomorphism property, slot-degree bound, killed
    relations, T-linearity, or product preservation on generators.
    """
    a = env.A
    d = a.dim
    tgt = target
    coeff_ops = CoefficientDialgebra(tgt)

    def phi_vec(vec: Vec):
        out = tgt.zero()
        for i, c in enumerate(vec):
            if c:
                out = tgt.add(out, tgt.scale(phi[i], c))
        return out

    checks = {}
    for i in range(d):
        for j in range(d):
            bi, bj = a.basis(i), a.basis(j)
            if not tgt.eq(coeff_ops.rprod(phi[i], phi[j]), phi_vec(a.rprod(bi, bj))):
                raise InputError(f"phi is not a dialgebra homomorphism (|- at {i},{j})")
            if not tgt.eq(coeff_ops.lprod(phi[i], phi[j]), phi_vec(a.lprod(bi, bj))):
                raise InputError(f"phi is not a dialgebra homomorphism (-| at {i},{j})")
    checks["dialgebra-hom"] = True

    for i in range(d):
        for j in range(d):
            prod = pseudo_product(tgt, leaf_spread(tgt, phi[i]), leaf_spread(tgt, phi[j]))
            if any(exps[0] > 1 for exps in prod.terms):
                raise InputError(f"phi({a.labels[i]})*phi({a.labels[j]}) has slot-1 degree > 1")
    checks["degree-bound"] = True

    pair_images = [[tgt.scale(n_product(tgt, phi[i], phi[j], 1), -1) for j in range(d)]
                   for i in range(d)]
    hom = ExtendedHom(env, tgt, list(phi), pair_images, checks)

    for row in env.rel.rows():
        if not tgt.is_zero(hom.apply_c1(row)):
            raise InputError("relation subspace is not killed by the extension")
    if relations is not None:
        for row in relations.rows():
            if not tgt.is_zero(hom.apply_c1(row)):
                raise InputError("ideal is not killed by the extension")
    checks["kills-relations"] = True

    for name, g in env.generators():
        if not tgt.eq(hom.apply(env.t_act(g)), tgt.t_act(hom.apply(g))):
            raise InputError(f"extension is not T-linear at generator {name}")
    checks["t-linear"] = True

    gens = env.generators()
    for name_x, gx in gens:
        for name_y, gy in gens:
            inner = pseudo_product(env, leaf_spread(env, gx), leaf_spread(env, gy))
            mapped = Spread(tgt, 2, {exps: hom.apply(elem) for exps, elem in inner.terms.items()})
            direct = pseudo_product(tgt, leaf_spread(tgt, hom.apply(gx)), leaf_spread(tgt, hom.apply(gy)))
            if not mapped.eq(direct):
                raise InputError(f"products not preserved at ({name_x}, {name_y})")
    checks["preserves-products"] = True
    return hom
