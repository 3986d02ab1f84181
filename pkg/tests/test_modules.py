import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf
from sympy.polys.domains import ZZ as SZZ

from specclass.kernel import Ring
from specclass.modules.presentation import (
    ModulePresentation,
    direct_sum,
    ext_module,
    free_resolution,
    hom_module,
    quotient,
    submodule,
    torsion_submodule,
    verify_short_exact,
)
from specclass.modules.smith import mat_mul, smith_normal_form, verify_smith

Z = Ring("ZZ")
QX = Ring.from_string("QQ[x]")


def cyc(n):
    return ModulePresentation.cyclic(Z, Z.ideal(n))


def _ints(rows):
    return [[{(): a} if a else {} for a in r] for r in rows]


def test_smith_examples():
    assert smith_normal_form(Z, _ints([[2, 0], [0, 3]])).strings() == ["1", "6"]
    assert smith_normal_form(Z, _ints([[4, 6], [6, 10]])).strings() == ["2", "2"]
    rows = [[QX.element("x^2 - 1"), QX.zero], [QX.zero, QX.element("x - 1")]]
    rows = [[e.poly for e in r] for r in rows]
    assert smith_normal_form(QX, rows).strings() == ["x - 1", "x^2 - 1"]


matrices = st.integers(1, 3).flatmap(
    lambda n: st.integers(1, 3).flatmap(
        lambda m: st.lists(st.lists(st.integers(-12, 12), min_size=m, max_size=m), min_size=n, max_size=n)))


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_smith_matches_sympy(rows):
    sf = smith_normal_form(Z, _ints(rows))
    assert verify_smith(Z, _ints(rows), sf)
    D = sympy_snf(sympy.Matrix(rows), domain=SZZ)
    theirs = sorted(abs(int(D[i, i])) for i in range(min(D.shape)) if D[i, i] != 0)
    ours = sorted(int(d.get((), 0)) for d in sf.invariant_factors() if d)
    assert ours == theirs


def test_presentation_basics():
    M = ModulePresentation.from_rows(Z, [[12]])
    assert M.invariant_factor_strings() == ["12"]
    assert not M.is_zero()
    assert M.is_zero_element((({(): 12}),))
    assert M.annihilator == Z.ideal(12)
    assert ModulePresentation.from_rows(Z, [[1]]).is_zero()
    F = ModulePresentation.free(Z, 2)
    assert F.invariant_factors() == [{}, {}]


def test_hom_ext_fixed_values():
    H = hom_module(cyc(4), cyc(6))
    assert H.module.invariant_factor_strings() == ["2"]
    assert [m.matrix_display() for m in H.generator_maps()] == [[["3"]]]
    assert ext_module(1, cyc(4), cyc(6)).module.invariant_factor_strings() == ["2"]
    R1 = ModulePresentation.free(Z, 1)
    assert ext_module(1, cyc(4), R1).module.invariant_factor_strings() == ["4"]
    assert ext_module(2, cyc(4), R1).module.is_zero()
    assert hom_module(cyc(4), R1).module.is_zero()


def test_ext_of_residue_field_over_plane():
    R = Ring.from_string("QQ[x,y]")
    k = ModulePresentation.cyclic(R, R.ideal("x", "y"))
    F = ModulePresentation.free(R, 1)
    flags = [not ext_module(i, k, F).module.is_zero() for i in range(4)]
    assert flags == [False, False, True, False]
    assert ext_module(2, k, F).module.annihilator == R.ideal("x", "y")


@given(st.integers(1, 60), st.integers(1, 60))
def test_hom_and_ext_between_cyclic_groups(a, b):
    g = sympy.igcd(a, b)
    H = hom_module(cyc(a), cyc(b)).module
    E = ext_module(1, cyc(a), cyc(b)).module
    expect = [] if g == 1 else [str(g)]
    assert H.invariant_factor_strings() == expect
    assert E.invariant_factor_strings() == expect
    assert ext_module(2, cyc(a), cyc(b)).module.is_zero()


def test_free_resolution_is_a_complex():
    R = Ring.from_string("QQ[x,y]")
    M = ModulePresentation.cyclic(R, R.ideal("x^2", "x*y", "y^3"))
    diffs = free_resolution(M, 3)
    assert len(diffs) >= 2
    for D1, D2 in zip(diffs, diffs[1:]):
        prod = mat_mul(_rows(D1, R), _rows(D2, R), R.dom)
        assert all(not e for row in prod for e in row)


def _rows(cols, R):
    """Column list -> row matrix."""
    if not cols:
        return []
    return [[c[i] for c in cols] for i in range(len(cols[0]))]


def test_submodule_quotient_sequences_are_exact():
    M = direct_sum(cyc(12), ModulePresentation.free(Z, 1))[0]
    N, i = submodule(M, [({(): 2}, {(): 3})])
    Q, p = quotient(M, i.columns)
    assert verify_short_exact(i, p)


def test_torsion_submodules():
    M = direct_sum(cyc(12), ModulePresentation.free(Z, 1))[0]
    t = torsion_submodule(M, Z.ideal(2))
    assert t.sub.invariant_factor_strings() == ["4"] and t.exponent == 2
    R = Ring.from_string("QQ[x,y]")
    N = ModulePresentation.cyclic(R, R.ideal("x^2", "x*y"))
    t = torsion_submodule(N, R.ideal("x"))
    assert t.exponent == 2
    Q, _ = quotient(N, t.generators)
    assert Q.is_zero()
