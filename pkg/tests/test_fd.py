import itertools
import random
from fractions import Fraction

import pytest

from divaria.errors import InputError
from divaria.fd import (FDAlgebra, FDDialgebra, abelian, bar_unit, corpus,
                        diagonal_lift, eval_identity,
                        is_var_dialgebra, is_zero_dialgebra, leibniz2, leibniz3,
                        leibniz_to_dialgebra, sl2, upper_triangular2)
from divaria.translate import psi, psi_section
from divaria.varieties import builtin_identity_set
from divaria.words import DiPoly, all_dishapes
from divaria.perms import random_perm

LIE = builtin_identity_set("lie")
ASSOC = builtin_identity_set("associative")


def test_corpus_members_are_zero_dialgebras():
    for name, d in corpus():
        assert is_zero_dialgebra(d) is None, name


def test_eval_identity_trivial_zero():
    d = abelian(2)
    assert eval_identity(d, DiPoly.zero(3)) is None


def test_diagonal_lift_associative():
    d = diagonal_lift(upper_triangular2())
    assert is_var_dialgebra(d, ASSOC) is None


def test_leibniz_imports_are_lie_dialgebras():
    for alg in (leibniz2(), leibniz3(), sl2()):
        d = leibniz_to_dialgebra(alg)
        assert is_var_dialgebra(d, LIE) is None


def test_leibniz3_fails_associativity_with_witness():
    d = leibniz_to_dialgebra(leibniz3())
    w = is_var_dialgebra(d, ASSOC)
    assert w is not None
    # (a|-a)|-a = 0 but a|-(a|-a) = c
    assert w.tuple_indices == (0, 0, 0)


def test_random_tables_generically_fail():
    rng = random.Random(2)
    hits = 0
    for _ in range(5):
        d = 2
        def rnd():
            return [[tuple(Fraction(rng.randint(-2, 2)) for _ in range(d))
                     for _ in range(d)] for _ in range(d)]
        dd = FDDialgebra(rnd(), rnd())
        if is_zero_dialgebra(dd) is not None:
            hits += 1
    assert hits >= 4


def test_leibniz_to_dialgebra_tables():
    d = leibniz_to_dialgebra(leibniz2())
    e1 = d.basis(0)
    assert d.rprod(e1, e1) == (0, 1)
    assert d.lprod(e1, e1) == (0, -1)


def test_sl2_left_equals_bracket():
    # with an antisymmetric bracket, -[ba] = [ab]
    g = sl2()
    d = leibniz_to_dialgebra(g)
    for i in range(3):
        for j in range(3):
            assert d.lprod(d.basis(i), d.basis(j)) == g.product(g.basis(i), g.basis(j))


def test_non_leibniz_rejected():
    t = [[(1, 0), (0, 0)], [(0, 0), (0, 1)]]
    with pytest.raises(InputError):
        leibniz_to_dialgebra(FDAlgebra(t))


def test_defect_examples():
    d2 = leibniz_to_dialgebra(leibniz2())
    assert d2.defect(d2.basis(0), d2.basis(0)) == (0, 2)
    ds = leibniz_to_dialgebra(sl2())
    for i in range(3):
        for j in range(3):
            assert not any(ds.defect(ds.basis(i), ds.basis(j)))


def test_defect_identities_in_zero_dialgebras():
    # <a,b>|-c = 0 and a-|<b,c> = 0 on all basis triples of every corpus member
    for name, d in corpus():
        for i, j, k in itertools.product(range(d.dim), repeat=3):
            bi, bj, bk = d.basis(i), d.basis(j), d.basis(k)
            assert not any(d.rprod(d.defect(bi, bj), bk)), name
            assert not any(d.lprod(bi, d.defect(bj, bk))), name


def test_kernel_elements_vanish_on_zero_dialgebras():
    # anything with zero image under the label-erasing functor is an identity
    rng = random.Random(6)
    members = corpus()
    for _ in range(60):
        n = rng.randint(2, 3)
        mono = (rng.choice(all_dishapes(n)), random_perm(n, rng))
        p = DiPoly.monomial(*mono)
        f = p - psi_section(psi(p))
        assert psi(f).is_zero()
        for name, d in members:
            assert eval_identity(d, f) is None, name


def test_bar_unit_exercises_distinct_products():
    d = bar_unit((1, 2))
    assert any(any(d.defect(d.basis(i), d.basis(j)))
               for i in range(2) for j in range(2))


def test_tuple_enumeration_guard():
    from divaria.errors import ResourceError
    from divaria.words import DILEAF, RPROD, dinode
    comb = DILEAF
    for _ in range(11):
        comb = dinode(RPROD, DILEAF, comb)  # arity 12 without enumerating shapes
    p = DiPoly.monomial(comb, tuple(range(1, 13)))
    d = leibniz_to_dialgebra(leibniz3())
    with pytest.raises(ResourceError):
        eval_identity(d, p)  # 3^12 basis tuples exceed the bound
