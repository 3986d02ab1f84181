from math import comb, factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from specclass.errors import ExplosionGuard
from specclass.finiverse import (
    EXT,
    QUOT,
    SUB,
    ExplicitModule,
    all_closed_families,
    enumerate_universe,
    gate_fast_paths,
    lr_coefficient,
    partitions_upto,
    verify_bijection,
)
from specclass.kernel import Ring


def hooks(lam):
    """Number of standard Young tableaux of shape lam (hook length formula)."""
    n = sum(lam)
    conj = [sum(1 for p in lam if p > j) for j in range(lam[0])] if lam else []
    prod = 1
    for i, row in enumerate(lam):
        for j in range(row):
            prod *= (row - j - 1) + (conj[j] - i - 1) + 1
    return factorial(n) // prod


def test_lr_known_values():
    assert lr_coefficient((2, 1), (1,), (1, 1)) == 1
    assert lr_coefficient((3, 2, 1), (2, 1), (2, 1)) == 2
    assert lr_coefficient((3, 1), (2,), (2,)) == 1
    assert lr_coefficient((2, 2), (2,), (2,)) == 1
    assert lr_coefficient((4, 2), (2,), (2,)) == 0
    assert lr_coefficient((2, 2), (1,), (1, 1)) == 0
    assert lr_coefficient((1,), (), (1,)) == 1


small = st.integers(0, 4).flatmap(lambda n: st.sampled_from([p for p in partitions_upto(n, n) if sum(p) == n]))


@settings(max_examples=40, deadline=None)
@given(small, small)
def test_lr_sum_rule(mu, nu):
    n = sum(mu) + sum(nu)
    total = sum(lr_coefficient(lam, mu, nu) * hooks(lam)
                for lam in partitions_upto(n, n) if sum(lam) == n)
    assert total == comb(n, sum(mu)) * hooks(mu) * hooks(nu)
    for lam in partitions_upto(n, n):
        if sum(lam) == n:
            assert lr_coefficient(lam, mu, nu) == lr_coefficient(lam, nu, mu)


def test_universe_enumeration():
    U = enumerate_universe(Ring.from_string("ZZ/4"), 16)
    assert U.labels() == ["0", "Z/2", "Z/2+Z/2", "Z/4", "Z/2+Z/2+Z/2", "Z/4+Z/2",
                          "Z/2+Z/2+Z/2+Z/2", "Z/4+Z/2+Z/2", "Z/4+Z/4"]
    U6 = enumerate_universe(Ring.from_string("ZZ/6"), 6)
    assert U6.labels() == ["0", "Z/2", "Z/3", "Z/2+Z/2", "Z/2+Z/3"]
    assert len(enumerate_universe(Ring.from_string("ZZ/12"), 144)) == 46
    assert len(enumerate_universe(Ring.from_string("GF(2)[x]/(x^3)"), 144)) == 31


def test_explicit_subquotients_match_classes():
    U = enumerate_universe(Ring.from_string("GF(2)[x]/(x^3)"), 16)
    c = U.classes[U.labels().index("R/(x^2)+R/(x)")]
    E = ExplicitModule(U.ring, c)
    subs = E.submodules()
    full = frozenset(E.elements)
    zero = frozenset([E.zero])
    assert E.subquotient_class(full, zero) == c
    kinds = {E.subquotient_class(N, zero) for N in subs}
    assert kinds == {U.classes[i] for i in U.table("sub")[U.index[c]]}


@pytest.mark.parametrize("ring", ["ZZ/12", "GF(2)[x]/(x^3)", "ZZ/4"])
def test_gate_on_small_universe(ring):
    U = enumerate_universe(Ring.from_string(ring), 16)
    report = gate_fast_paths(U, 16)
    assert report["classes"] == len(U)


@pytest.mark.parametrize("theorem", ["p3_9", "ashah", "dr9_4", "p5corr"])
def test_bijections_small_bound(theorem):
    U = enumerate_universe(Ring.from_string("ZZ/12"), 36)
    r = verify_bijection(theorem, U)
    assert (r["lhs"], r["rhs"], r["bijection"], r["counterexamples"]) == (4, 4, True, [])
    A = enumerate_universe(Ring.from_string("GF(2)[x]/(x^3)"), 32)
    r = verify_bijection(theorem, A)
    assert (r["lhs"], r["rhs"], r["bijection"]) == (2, 2, True)


def test_explosion_guard():
    U = enumerate_universe(Ring.from_string("ZZ/12"), 36)
    with pytest.raises(ExplosionGuard):
        all_closed_families(U, {SUB}, cap=3)
    assert len(all_closed_families(U, {SUB, QUOT, EXT})) == 4
