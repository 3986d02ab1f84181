import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from specclass.cli.dsl import parse_prime, parse_specset, parse_workspace
from specclass.cli.main import main
from specclass.errors import ParseError
from specclass.kernel import Ring

WORKSPACE = """\
# integers
ring Z = ZZ
module M = coker [[12]]
set S = closure{(2)}
gseq Y = (closure{(2)}, closure{}) for Z

ring R = QQ[x,y]
module N = coker [[x^2, x*y]]
prime p = (x)
set T = closure{p}
points P = {p, (x, y)}
"""


@pytest.fixture
def ws_file(tmp_path):
    path = tmp_path / "demo.ws"
    path.write_text(WORKSPACE)
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_and_provenance():
    ws = parse_workspace(WORKSPACE, "demo.ws")
    assert ws.get("M").provenance == "demo.ws:3:8"
    assert ws.get("N").ring_name == "R"
    assert ws.value("M", "module").invariant_factor_strings() == ["12"]
    assert ws.value("p", "prime").certification == "auto"


def test_round_trip():
    ws = parse_workspace(WORKSPACE)
    again = parse_workspace(ws.to_text())
    assert again.signature() == ws.signature()


def test_parse_errors_carry_locations():
    with pytest.raises(ParseError) as e:
        parse_workspace("ring R = QQ[x]\nprime q = (x^2 - 1)\n")
    assert (e.value.line, e.value.col) == (2, 11)
    assert "assume prime" in e.value.expected
    with pytest.raises(ParseError) as e:
        parse_workspace("ring R = ZZ\nmodule M = coker [[1, 2], [3]]")
    assert "arity" in str(e.value) and e.value.line == 2
    with pytest.raises(ParseError) as e:
        parse_workspace("module M = coker [[1]]")
    assert "no ring" in str(e.value)
    with pytest.raises(ParseError) as e:
        parse_workspace("ring R = WW[x]")
    assert "unknown ring" in str(e.value)
    with pytest.raises(ParseError) as e:
        parse_workspace("ring R = ZZ\nfoo M = 1")
    assert "ring" in e.value.expected and e.value.col == 1


def test_irreducibility_certification():
    R = Ring.from_string("QQ[x]")
    assert parse_prime("(x^2 + 1)", R).certification == "auto"
    ws = parse_workspace("ring R = QQ[x,y]\nprime q = (x^2 + y^3 + x*y + 1) assume prime")
    assert ws.value("q", "prime").certification == "asserted"
    assert parse_specset("closure{(x)}", R).strings() == [["x"]]


def test_ass_json(capsys, ws_file):
    code, out, _ = run(capsys, "ass", "-w", ws_file, "--module", "M", "--format", "json")
    report = json.loads(out)
    assert code == 0
    assert report["result"] == {"ass": [["2"], ["3"]]}
    assert set(report) == {"command", "inputs", "ring", "result", "provenance", "status"}
    assert report["status"] == "proved"


def test_bass_builtin_module(capsys):
    code, out, _ = run(capsys, "bass", "--module", "Z", "--prime", "(2)", "--range", "0..2", "--format", "json")
    assert code == 0
    assert json.loads(out)["result"]["flags"] == [False, True, False]


def test_text_output_is_delimited(capsys, ws_file):
    code, out, _ = run(capsys, "torsion", "-w", ws_file, "--module", "M", "--set", "S")
    lines = dict(line.split("\t", 1) for line in out.strip().splitlines())
    assert code == 0
    assert lines["torsion.invariant_factors"] == '["4"]'
    assert lines["torsion_free.invariant_factors"] == '["3"]'


def test_member_and_other_commands(capsys, ws_file):
    for argv, key, value in [
        (("member", "--module", "Z/3", "--class", "ctilde", "--gseq", "Y"), "member", True),
        (("member", "--module", "Z/2", "--class", "ctilde", "--gseq", "Y"), "member", False),
        (("member", "--module", "N", "--class", "torsion", "--set", "T"), "member", True),
        (("member", "--module", "N", "--class", "psi", "--points", "P"), "member", True),
        (("member", "--module", "M", "--class", "serre", "--set", "closure{(2), (3)}"), "member", True),
        (("supp", "--module", "N"), "supp", [["x"]]),
        (("spectral", "--module", "N"), "spectral", False),
    ]:
        code, out, _ = run(capsys, *argv, "-w", ws_file, "--format", "json")
        assert code == 0, argv
        assert json.loads(out)["result"][key] == value, argv
    code, out, _ = run(capsys, "filtration", "-w", ws_file, "--module", "N", "--format", "json")
    steps = json.loads(out)["result"]["steps"]
    assert [s["prime"] for s in steps] == [["x", "y"], ["x"]]


def test_exit_codes(capsys, ws_file, tmp_path):
    assert run(capsys, "ass", "--module", "nope")[0] == 1
    assert run(capsys, "ass", "--bogus")[0] == 1
    bad = tmp_path / "bad.ws"
    bad.write_text("ring R = QQ[x]\nprime q = (x^2 - 1)\n")
    code, _, err = run(capsys, "ass", "-w", str(bad), "--module", "q")
    assert code == 1 and "2:11" in err
    assert run(capsys, "torsion", "-w", ws_file, "--module", "M", "--set", "(2")[0] == 1


def test_verify_and_figures(capsys, tmp_path):
    fig = tmp_path / "lattice.png"
    code, out, err = run(capsys, "verify", "--suite", "dr9_4", "--ring", "Z/12", "--bound", "36",
                         "--format", "json", "--figure", str(fig))
    r = json.loads(out)["result"]
    assert code == 0 and (r["lhs"], r["rhs"], r["bijection"]) == (4, 4, True)
    assert fig.stat().st_size > 0
    heat = tmp_path / "bass.png"
    assert run(capsys, "injres", "--module", "Z", "--upto", "2", "--figure", str(heat))[0] == 0
    assert heat.stat().st_size > 0


def test_verify_random_suite_is_deterministic(capsys):
    a = run(capsys, "verify", "--suite", "bass", "--seed", "5", "--format", "json")
    b = run(capsys, "verify", "--suite", "bass", "--seed", "5", "--format", "json")
    assert a[0] == b[0] == 0
    assert a[1] == b[1]
    assert "seed: 5" in a[2]


def test_counterexample_exit_code(capsys, monkeypatch):
    from specclass.cli import commands

    monkeypatch.setitem(commands.SUITES, "bass", lambda seed: {"passed": False, "failures": [{"x": 1}]})
    assert run(capsys, "verify", "--suite", "bass")[0] == 2


names = st.sampled_from(["A", "B", "C", "D"])
ints = st.integers(-20, 20)


@st.composite
def workspaces(draw):
    lines = ["ring Z = ZZ"]
    n = draw(st.integers(1, 3))
    rows = draw(st.lists(st.lists(ints, min_size=n, max_size=n), min_size=1, max_size=3))
    lines.append("module M = coker [" + ", ".join("[" + ", ".join(map(str, r)) + "]" for r in rows) + "]")
    primes = draw(st.sets(st.sampled_from([0, 2, 3, 5, 7]), max_size=3))
    lines.append("set S = closure{" + ", ".join(f"({p})" for p in sorted(primes)) + "}")
    lines.append("points P = {" + ", ".join(f"({p})" for p in sorted(primes)) + "}")
    lines.append("ring R = QQ[x,y]")
    polys = draw(st.lists(st.sampled_from(["x", "y", "x^2 - y", "2*x*y + 1", "0", "x + y/3"]),
                          min_size=1, max_size=3))
    lines.append("ideal I = (" + ", ".join(polys) + ")")
    lines.append("module N = coker [[" + ", ".join(polys) + "]]")
    if draw(st.booleans()):
        lines.append("use Z")
        lines.append("module K = coker [[4, 0], [0, 6]]")
    return "\n".join(lines) + "\n"


@settings(max_examples=25, deadline=None)
@given(workspaces())
def test_round_trip_property(text):
    ws = parse_workspace(text)
    assert parse_workspace(ws.to_text()).signature() == ws.signature()


def test_verify_reports_bound_sensitivity(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "p3_9", "--ring", "Z/6", "--bound", "6",
                       "--double-bound", "--format", "json")
    sens = json.loads(out)["result"]["bound_sensitivity"]
    assert code == 0
    assert sens["stable"] and sens["counts"] == sens["double_bound_counts"] == [4, 4]
