import itertools

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from specclass.errors import NotPrime
from specclass.finiverse import brute_equiv, enumerate_universe
from specclass.kernel import Ring
from specclass.modules.presentation import ModulePresentation, direct_sum
from specclass.spectrum import (
    ASSERTED,
    PrimeIdeal,
    SpecSet,
    ass_enumerate,
    is_spectral,
    minimal_primes,
    prime_filtration,
    spec_closure,
    subquotient_rel,
    supp_contains,
    supp_specset,
)

Z = Ring("ZZ")


def cyc(n):
    return ModulePresentation.cyclic(Z, Z.ideal(n))


def gens(ps):
    return sorted(p.generator_strings() for p in ps)


def test_associated_primes_fixed():
    assert gens(ass_enumerate(cyc(12))) == [["2"], ["3"]]
    M = direct_sum(ModulePresentation.free(Z, 1), cyc(4))[0]
    assert gens(ass_enumerate(M)) == [["0"], ["2"]]
    R = Ring.from_string("QQ[x,y]")
    N = ModulePresentation.cyclic(R, R.ideal("x^2", "x*y"))
    assert gens(ass_enumerate(N)) == [["x"], ["x", "y"]]
    assert supp_specset(N) == spec_closure([PrimeIdeal.of(R, "x")])


def test_prime_certification():
    Q = Ring.from_string("QQ[x]")
    assert PrimeIdeal.of(Q, "x^2 + 1").certification != ASSERTED
    with pytest.raises(NotPrime):
        PrimeIdeal.of(Q, "x^2 - 1")
    with pytest.raises(NotPrime):
        PrimeIdeal.of(Z, 12)
    R = Ring.from_string("QQ[x,y]")
    PrimeIdeal.of(R, "x", "y - 1")
    with pytest.raises(NotPrime):
        PrimeIdeal.of(R, "x^2 + y^3 + x*y + 1")
    assert PrimeIdeal.of(R, "x^2 + y^3 + x*y + 1", assume=True).certification == ASSERTED


def test_specsets():
    S = SpecSet(Z, [PrimeIdeal.of(Z, 2), PrimeIdeal.of(Z, 0)])
    assert S == SpecSet.whole(Z)
    assert SpecSet.whole(Ring.from_string("ZZ/12")).strings() == [["2"], ["3"]]
    A = Ring.from_string("GF(2)[x]/(x^3)")
    assert SpecSet.whole(A).strings() == [["x"]]
    T = SpecSet(Z, [PrimeIdeal.of(Z, 2)]).union(SpecSet(Z, [PrimeIdeal.of(Z, 3)]))
    assert T.defining_ideal() == Z.ideal(6)
    assert SpecSet.empty(Z).defining_ideal().is_unit()
    R = Ring.from_string("QQ[x,y]")
    assert gens(minimal_primes(R.ideal("x^2", "x*y"))) == [["x"]]


def test_filtration_and_spectral_examples():
    R = Ring.from_string("QQ[x,y]")
    N = ModulePresentation.cyclic(R, R.ideal("x^2", "x*y"))
    F = prime_filtration(N)
    assert [p.generator_strings() for p in F.primes] == [["x", "y"], ["x"]]
    assert F.verify()
    F4 = prime_filtration(cyc(4))
    assert [p.generator_strings() for p in F4.primes] == [["2"], ["2"]]
    assert is_spectral(ModulePresentation.free(Z, 1)) == PrimeIdeal.of(Z, 0)
    assert is_spectral(cyc(4)) is None
    ideal_xy = ModulePresentation.from_rows(R, [[R.element("y")], [R.element("-x")]])
    assert is_spectral(ideal_xy) == PrimeIdeal.of(R, 0)
    assert subquotient_rel(cyc(2), cyc(12))
    assert not subquotient_rel(cyc(5), cyc(12))


def _order(M, v, e):
    for d in sorted(sympy.divisors(e)):
        if M.is_zero_element(tuple({(): d * c} if d * c else {} for c in v)):
            return d
    raise AssertionError("element order does not divide the exponent")


@settings(max_examples=15, deadline=None)
@given(st.lists(st.integers(1, 18), min_size=1, max_size=2), st.integers(-2, 2))
def test_ass_matches_element_orders(factors, twist):
    rows = [[factors[i] if i == j else 0 for j in range(len(factors))] for i in range(len(factors))]
    if len(factors) == 2:
        rows[0][1] = twist * factors[1]
    M = ModulePresentation.from_rows(Z, rows)
    e = 1
    for f in factors:
        e = sympy.ilcm(e, f)
    orders = {_order(M, v, e) for v in itertools.product(range(e), repeat=len(factors))}
    brute = sorted([str(o)] for o in orders if sympy.isprime(o))
    assert gens(ass_enumerate(M)) == brute


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(0, 30), min_size=1, max_size=3))
def test_support_is_closure_of_ass(factors):
    M = ModulePresentation.from_rows(Z, [[factors[i] if i == j else 0 for j in range(len(factors))]
                                         for i in range(len(factors))])
    S = supp_specset(M)
    assert S == spec_closure(ass_enumerate(M), Z)
    for p in (0, 2, 3, 5, 7):
        assert S.contains(PrimeIdeal.of(Z, p)) == supp_contains(PrimeIdeal.of(Z, p), M)


@pytest.mark.parametrize("ring", ["ZZ/12", "GF(2)[x]/(x^3)"])
def test_spectral_matches_brute_force(ring):
    U = enumerate_universe(Ring.from_string(ring), 144)
    subs = U.table("sub")
    for i, c in enumerate(U.classes):
        if c.is_zero():
            brute = False
        else:
            brute = all(brute_equiv(U, j, i) for j in subs[i] if not U.classes[j].is_zero())
        decided = is_spectral(c.presentation(U.ring)) is not None
        assert decided == brute, c.label(U.ring)
