import json
import random

import pytest

from specclass import suites


@pytest.mark.parametrize("name,kwargs", [
    ("supp_ass", {"count": 20}),
    ("torsionpair", {"sets": 8, "per_set": 3}),
    ("injhull", {"sets": 10, "modules": 5}),
    ("bass", {"count": 20}),
    ("cor710", {"count": 20}),
    ("homsub", {"count": 20}),
    ("gseq", {"samples": 3}),
])
def test_suites_pass_on_another_seed(name, kwargs):
    r = suites.SUITES[name](seed=7, **kwargs)
    assert r["passed"], r["failures"][:2]
    assert json.dumps(r, sort_keys=True) == json.dumps(suites.SUITES[name](seed=7, **kwargs), sort_keys=True)


def test_seed_changes_the_sample():
    a = suites.suite_supp_ass(seed=1, count=5)
    b = suites.suite_supp_ass(seed=2, count=5)
    assert a["seed"] != b["seed"]
    assert suites.random_zz_module(random.Random(1)).rows_display() != \
        suites.random_zz_module(random.Random(2)).rows_display()


# the suites must be able to fail: break one ingredient and watch them notice


def test_bass_suite_detects_a_wrong_oracle(monkeypatch):
    monkeypatch.setattr(suites, "divisible_cosyzygy", _shifted)
    assert not suites.suite_bass(seed=0, count=10)["passed"]


def _shifted(M, k):
    """Swaps degrees 0 and 1."""
    from specclass.localalg import divisible_cosyzygy

    return divisible_cosyzygy(M, max(0, 1 - k))


def test_supp_suite_detects_a_wrong_support(monkeypatch):
    from specclass.spectrum import SpecSet

    monkeypatch.setattr(suites, "supp_specset", lambda M: SpecSet.empty(M.ring))
    assert not suites.suite_supp_ass(seed=0, count=5)["passed"]


def test_hom_suite_detects_vanishing(monkeypatch):
    from specclass.modules.presentation import ModulePresentation

    class Zero:
        def __init__(self, ring):
            self.module = ModulePresentation.zero(ring)

    monkeypatch.setattr(suites, "hom_module", lambda M, N: Zero(M.ring))
    assert not suites.suite_hom_submodules(seed=0, count=3)["passed"]


def test_gseq_suite_detects_wrong_membership(monkeypatch):
    monkeypatch.setattr(suites, "c_tilde_member", lambda M, Y: (False, "proved"))
    assert not suites.suite_gsequences(seed=0, samples=1)["passed"]
