import pytest

from specclass.classify import (
    PROVED,
    SAMPLED,
    GSequence,
    PointSet,
    c_tilde_member,
    c_tilde_truncate,
    cosyzygy_ass_closed_form,
    g_sequence_validate,
    one_resolving_member,
    one_resolving_valid,
    phi_of_family,
    psi_member,
    serre_member,
    supp_of_family,
)
from specclass.kernel import Ring
from specclass.modules.presentation import ModulePresentation, direct_sum
from specclass.spectrum import PrimeIdeal, SpecSet

Z = Ring("ZZ")


def cyc(n):
    return ModulePresentation.cyclic(Z, Z.ideal(n))


def V(*ns):
    return SpecSet(Z, [PrimeIdeal.of(Z, n) for n in ns])


def test_serre_classes():
    assert serre_member(cyc(4), V(2))
    assert not serre_member(cyc(12), V(2))
    assert serre_member(cyc(12), V(2, 3))
    assert supp_of_family([cyc(4), cyc(9)]) == V(2, 3)
    assert supp_of_family([], Z) == SpecSet.empty(Z)


def test_one_resolving():
    assert one_resolving_valid(V(2))
    assert not one_resolving_valid(V(0))
    assert one_resolving_member(ModulePresentation.free(Z, 1), V(2))
    assert not one_resolving_member(cyc(6), V(2))


def test_closed_form_cosyzygy_data():
    F = ModulePresentation.free(Z, 1)
    c0 = cosyzygy_ass_closed_form(F, 0)
    assert [p.generator_strings() for p in c0.primes] == [["0"]] and not c0.generic
    c1 = cosyzygy_ass_closed_form(F, 1)
    assert c1.generic and c1.exact
    assert c1.meets(PrimeIdeal.of(Z, 101))
    assert not cosyzygy_ass_closed_form(F, 2).meets(PrimeIdeal.of(Z, 7))
    A = Ring.from_string("ZZ/12")
    M = ModulePresentation.cyclic(A, A.ideal(2))
    assert [p.generator_strings() for p in cosyzygy_ass_closed_form(M, 1).primes] == [["2"]]


def test_g_sequences_over_integers():
    ok = GSequence([V(2), SpecSet.empty(Z)], ring=Z)
    rep = g_sequence_validate(ok)
    assert rep.valid and rep.status == PROVED
    bad = GSequence([V(2), V(3)], ring=Z)
    assert not g_sequence_validate(bad).valid
    assert not g_sequence_validate(GSequence([V(2), V(2, 3)], ring=Z)).decreasing
    assert c_tilde_member(cyc(3), ok) == (True, PROVED)
    assert c_tilde_member(cyc(2), ok)[0] is False
    assert c_tilde_member(ModulePresentation.zero(Z), ok)[0]
    assert c_tilde_member(ModulePresentation.free(Z, 1), ok)[0]


def test_truncation():
    Y = GSequence([V(2, 3), V(2), SpecSet.empty(Z)], ring=Z)
    assert c_tilde_truncate(Y, 2).sets == [V(2), SpecSet.empty(Z)]
    with pytest.raises(IndexError):
        c_tilde_truncate(Y, 4)
    with pytest.raises(IndexError):
        c_tilde_truncate(Y, 0)


def test_sampled_status_off_principal_rings():
    R = Ring.from_string("QQ[x,y]")
    S = SpecSet(R, [PrimeIdeal.of(R, "x", "y")])
    Y = GSequence([S], ring=R)
    rep = g_sequence_validate(Y, sample=[PrimeIdeal.of(R, "x", "y - 1")])
    assert rep.status == SAMPLED and rep.valid
    N = ModulePresentation.cyclic(R, R.ideal("x", "y"))
    # a hit is a certificate; a clean pass is only as good as the sample
    assert c_tilde_member(N, Y) == (False, PROVED)
    assert c_tilde_member(ModulePresentation.free(R, 1), Y) == (True, SAMPLED)


def test_psi_and_phi():
    P = PointSet(Z, [PrimeIdeal.of(Z, 2), PrimeIdeal.of(Z, 3)])
    assert psi_member(cyc(12), P)
    assert not psi_member(direct_sum(cyc(2), ModulePresentation.free(Z, 1))[0], P)
    assert phi_of_family([cyc(4), cyc(9)]) == P
    A = Ring.from_string("ZZ/12")
    assert len(PointSet(A, everything=True)) == 2
    with pytest.raises(ValueError):
        PointSet(Z, everything=True)
