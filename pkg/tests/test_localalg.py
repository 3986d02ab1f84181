import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from specclass.errors import NeedCandidates
from specclass.kernel import Ring
from specclass.localalg import (
    bass_dimension,
    bass_nonvanishing,
    cor710_check,
    cosyzygy_ass_membership,
    divisible_ass,
    divisible_cosyzygy,
    divisible_injective_hull,
    hom_into_divisible_nonzero,
    hom_orthogonality_check,
    prime_hull,
    symbolic_injective_resolution,
    torsion_class_member,
    torsion_decompose,
    torsion_free_member,
)
from specclass.modules.presentation import ModuleMap, ModulePresentation, direct_sum, quotient
from specclass.spectrum import PrimeIdeal, SpecSet

Z = Ring("ZZ")


def cyc(n):
    return ModulePresentation.cyclic(Z, Z.ideal(n))


def P(n):
    return PrimeIdeal.of(Z, n)


def V(*ns):
    return SpecSet(Z, [P(n) for n in ns])


def test_torsion_decomposition_of_z12():
    d = torsion_decompose(cyc(12), V(2))
    assert d.X.invariant_factor_strings() == ["4"]
    assert d.Y.invariant_factor_strings() == ["3"]
    assert hom_orthogonality_check(d.X, d.Y)
    whole = torsion_decompose(cyc(12), SpecSet.whole(Z))
    assert whole.Y.is_zero()
    empty = torsion_decompose(cyc(12), SpecSet.empty(Z))
    assert empty.X.is_zero()


def test_torsion_classes_polynomial():
    R = Ring.from_string("QQ[x,y]")
    N = ModulePresentation.cyclic(R, R.ideal("x^2", "x*y"))
    Sx = SpecSet(R, [PrimeIdeal.of(R, "x")])
    Sxy = SpecSet(R, [PrimeIdeal.of(R, "x", "y")])
    assert torsion_class_member(N, Sx)
    assert not torsion_class_member(N, Sxy)
    d = torsion_decompose(N, Sxy)
    assert torsion_free_member(d.Y, Sxy)
    assert not d.X.is_zero()


def test_bass_fixed_values():
    F = ModulePresentation.free(Z, 1)
    assert [bass_nonvanishing(P(2), k, F) for k in range(3)] == [False, True, False]
    assert [bass_nonvanishing(P(0), k, F) for k in range(3)] == [True, False, False]
    assert cosyzygy_ass_membership(P(3), 1, cyc(12))
    assert not cosyzygy_ass_membership(P(5), 1, cyc(12))
    R = Ring.from_string("QQ[x,y]")
    k = ModulePresentation.cyclic(R, R.ideal("x", "y"))
    assert bass_dimension(PrimeIdeal.of(R, "x", "y"), 0, k) == 1
    Fr = ModulePresentation.free(R, 1)
    assert [bass_dimension(PrimeIdeal.of(R, "x", "y"), i, Fr) for i in range(3)] == [0, 0, 1]


def test_injective_resolution_formal_sums():
    T = symbolic_injective_resolution(ModulePresentation.free(Z, 1), 2)
    assert [T.formal_sum(k) for k in range(3)] == [
        "E(R/(0))^1", "E(R/(p))^1 for every other maximal p", "0"]
    T = symbolic_injective_resolution(cyc(12), 2)
    assert [T.formal_sum(k) for k in range(3)] == ["E(R/(2))^1 + E(R/(3))^1"] * 2 + ["0"]
    with pytest.raises(NeedCandidates):
        R = Ring.from_string("QQ[x,y]")
        symbolic_injective_resolution(ModulePresentation.free(R, 1), 1)


def test_divisible_model():
    M = direct_sum(ModulePresentation.free(Z, 2), cyc(12))[0]
    E = divisible_injective_hull(M)
    assert E.rank == 2 and E.mult(2) == 1 and E.mult(3) == 1 and E.mult(5) == 0
    D1 = divisible_cosyzygy(M, 1)
    assert D1.rank == 0 and D1.mult(5) == 2 and D1.mult(2) == 3
    assert divisible_cosyzygy(M, 2).is_zero()
    assert divisible_ass(prime_hull(P(0)), P(0))
    assert hom_into_divisible_nonzero(cyc(4), prime_hull(P(2)))
    assert not hom_into_divisible_nonzero(cyc(4), prime_hull(P(3)))
    assert not hom_into_divisible_nonzero(cyc(4), prime_hull(P(0)))


def test_cor710_on_multiplication_sequence():
    F = ModulePresentation.free(Z, 1)
    i = ModuleMap(F, F, [({(): 12},)])
    Q, p = quotient(F, i.columns)
    cands = [P(0), P(2), P(3), P(5)]
    assert all(cor710_check(i, p, k, cands) for k in range(3))


modules = st.lists(st.integers(0, 40), min_size=1, max_size=3).map(
    lambda fs: ModulePresentation.from_rows(
        Z, [[fs[i] if i == j else 0 for j in range(len(fs))] for i in range(len(fs))]))


@settings(max_examples=40, deadline=None)
@given(modules, st.sampled_from([0, 2, 3, 5, 7]), st.integers(0, 2))
def test_bass_numbers_match_pruefer_multiplicities(M, n, k):
    """mu_k(p, M) is the multiplicity of E(R/p) in E(cosyzygy_k M)."""
    D = divisible_cosyzygy(M, k)
    expect = D.rank if n == 0 else D.mult(n)
    assert bass_dimension(P(n), k, M) == expect
    assert bass_nonvanishing(P(n), k, M) == (expect > 0)


@settings(max_examples=30, deadline=None)
@given(modules, st.sets(st.sampled_from([2, 3, 5, 7])))
def test_torsion_pair_characterized_by_hulls(M, chosen):
    S = V(*chosen)
    # the sampled primes must cover every prime that can divide an invariant factor
    outside = [n for n in (0, 2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37) if n not in chosen]
    assert torsion_class_member(M, S) == (
        not any(hom_into_divisible_nonzero(M, prime_hull(P(n))) for n in outside))
