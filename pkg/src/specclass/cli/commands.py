"""Command dispatch: workspace + flags -> report dict and exit code."""

from __future__ import annotations

import json
import re

from ..classify import (
    c_tilde_member,
    one_resolving_member,
    psi_member,
    serre_member,
)
from ..errors import SpecclassError
from ..finiverse import DEFAULT_BOUND, bound_sensitivity, enumerate_universe, verify_bijection
from ..kernel.rings import Ring
from ..localalg import (
    bass_dimension,
    bass_nonvanishing,
    symbolic_injective_resolution,
    torsion_class_member,
    torsion_decompose,
    torsion_free_member,
)
from ..modules.presentation import ModulePresentation
from ..spectrum import ass_enumerate, is_spectral, prime_filtration, supp_specset
from ..suites import SUITES
from .dsl import Workspace, parse_points, parse_prime, parse_specset

PROVED = "proved"
SAMPLED = "sampled"

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_COUNTEREXAMPLE = 2

FINIVERSE_SUITES = ("p3_9", "ashah", "dr9_4", "p5corr")
RANDOM_SUITES = tuple(SUITES)

_BUILTIN = re.compile(r"^ZZ?(?:/(\d+))?$")


class CommandError(SpecclassError):
    pass


def resolve_module(ws: Workspace, name: str) -> tuple:
    """A module binding, or the built-in abelian groups Z and Z/n."""
    b = ws.get(name, "module")
    if b is not None:
        return b.value, b.provenance
    m = _BUILTIN.match(name.replace(" ", ""))
    if m:
        Z = Ring("ZZ")
        if m.group(1) is None:
            return ModulePresentation.free(Z, 1), "builtin"
        return ModulePresentation.cyclic(Z, Z.ideal(int(m.group(1)))), "builtin"
    raise CommandError(f"unknown module {name!r}")


def parse_range(text: str) -> tuple:
    m = re.fullmatch(r"\s*(\d+)\s*\.\.\s*(\d+)\s*", text)
    if not m or int(m.group(1)) > int(m.group(2)):
        raise CommandError(f"bad range {text!r}; expected k0..k1")
    return int(m.group(1)), int(m.group(2))


def _primes(ps) -> list:
    return [p.generator_strings() for p in ps]


def _need(flags: dict, key: str, command: str):
    v = flags.get(key)
    if v is None:
        raise CommandError(f"'{command}' needs --{key}")
    return v


def _report(command: str, inputs: dict, ring, result: dict, provenance: dict, status: str) -> dict:
    return {
        "command": command,
        "inputs": inputs,
        "ring": str(ring) if ring is not None else None,
        "result": result,
        "provenance": provenance,
        "status": status,
    }


def run_command(ws: Workspace, command: str, flags: dict) -> tuple:
    """Run one command.  Returns (report, exit_code, figure_data)."""
    handler = _COMMANDS.get(command)
    if handler is None:
        raise CommandError(f"unknown command {command!r}")
    return handler(ws, flags)


def _module_inputs(ws: Workspace, flags: dict, command: str):
    name = _need(flags, "module", command)
    M, prov = resolve_module(ws, name)
    return M, {"module": name}, {name: prov}


def cmd_ass(ws, flags):
    M, inputs, prov = _module_inputs(ws, flags, "ass")
    ass = ass_enumerate(M)
    return _report("ass", inputs, M.ring, {"ass": _primes(ass)}, prov, PROVED), EXIT_OK, None


def cmd_supp(ws, flags):
    M, inputs, prov = _module_inputs(ws, flags, "supp")
    S = supp_specset(M)
    return _report("supp", inputs, M.ring, {"supp": S.strings()}, prov, PROVED), EXIT_OK, None


def cmd_filtration(ws, flags):
    M, inputs, prov = _module_inputs(ws, flags, "filtration")
    F = prime_filtration(M)
    from ..kernel.polys import p_format

    steps = [{"element": [p_format(c, M.ring.variables) for c in g], "prime": p.generator_strings()}
             for g, p in zip(F.elements, F.primes)]
    return _report("filtration", inputs, M.ring, {"steps": steps, "verified": F.verify()}, prov, PROVED), \
        EXIT_OK, None


def cmd_spectral(ws, flags):
    M, inputs, prov = _module_inputs(ws, flags, "spectral")
    p = is_spectral(M)
    result = {"spectral": p is not None, "prime": p.generator_strings() if p is not None else None}
    return _report("spectral", inputs, M.ring, result, prov, PROVED), EXIT_OK, None


def _set_input(ws, flags, M, inputs, prov, command):
    text = _need(flags, "set", command)
    S = parse_specset(text, M.ring, ws)
    inputs["set"] = text
    b = ws.get(text.strip(), "set")
    if b is not None:
        prov[text.strip()] = b.provenance
    return S


def cmd_torsion(ws, flags):
    M, inputs, prov = _module_inputs(ws, flags, "torsion")
    S = _set_input(ws, flags, M, inputs, prov, "torsion")
    d = torsion_decompose(M, S)
    result = {
        "set": S.strings(),
        "torsion": {"presentation": d.X.rows_display(), "invariant_factors": _factors(d.X)},
        "torsion_free": {"presentation": d.Y.rows_display(), "invariant_factors": _factors(d.Y)},
        "inclusion": d.inclusion.matrix_display(),
        "exponent": d.exponent,
    }
    return _report("torsion", inputs, M.ring, result, prov, PROVED), EXIT_OK, None


def _factors(M: ModulePresentation):
    return M.invariant_factor_strings() if M.ring.is_principal_class else None


def cmd_bass(ws, flags):
    M, inputs, prov = _module_inputs(ws, flags, "bass")
    text = _need(flags, "prime", "bass")
    p = parse_prime(text, M.ring, ws)
    k0, k1 = parse_range(flags.get("range") or "0..2")
    inputs.update({"prime": text, "range": f"{k0}..{k1}"})
    flags_out = [bass_nonvanishing(p, k, M) for k in range(k0, k1 + 1)]
    dims = [bass_dimension(p, k, M) for k in range(k0, k1 + 1)]
    result = {"prime": p.generator_strings(), "degrees": list(range(k0, k1 + 1)), "flags": flags_out,
              "dimensions": dims}
    fig = {"kind": "bass", "primes": [str(p)], "degrees": list(range(k0, k1 + 1)), "values": [dims],
           "title": f"Bass numbers of {inputs['module']}"}
    return _report("bass", inputs, M.ring, result, prov, PROVED), EXIT_OK, fig


def cmd_injres(ws, flags):
    M, inputs, prov = _module_inputs(ws, flags, "injres")
    n = int(flags.get("upto") if flags.get("upto") is not None else 2)
    inputs["upto"] = n
    T = symbolic_injective_resolution(M, n)
    result = {
        "candidates": _primes(T.candidates),
        "candidate_source": T.provenance,
        "terms": [T.formal_sum(k) for k in range(n + 1)],
        "table": T.as_rows(),
        "generic": {str(k): v for k, v in sorted(T.default.items())},
    }
    values = [[T.entry(p, k).dimension for k in range(n + 1)] for p in T.candidates]
    labels = [str(p) for p in T.candidates]
    if T.default:
        labels.append("other maximal")
        values.append([T.default.get(k, 0) for k in range(n + 1)])
    fig = {"kind": "bass", "primes": labels, "degrees": list(range(n + 1)),
           "values": values, "title": f"Bass numbers of {inputs['module']}"}
    return _report("injres", inputs, M.ring, result, prov, PROVED), EXIT_OK, fig


def cmd_member(ws, flags):
    M, inputs, prov = _module_inputs(ws, flags, "member")
    cls = _need(flags, "class", "member")
    inputs["class"] = cls
    status = PROVED
    if cls in ("serre", "torsion", "torsionfree", "oneres"):
        S = _set_input(ws, flags, M, inputs, prov, "member")
        fn = {"serre": serre_member, "torsion": torsion_class_member,
              "torsionfree": torsion_free_member, "oneres": one_resolving_member}[cls]
        member = fn(M, S)
    elif cls == "psi":
        text = _need(flags, "points", "member")
        inputs["points"] = text
        member = psi_member(M, parse_points(text, M.ring, ws))
    elif cls == "ctilde":
        name = _need(flags, "gseq", "member")
        b = ws.get(name, "gseq")
        if b is None:
            raise CommandError(f"unknown G-sequence {name!r}")
        inputs["gseq"] = name
        prov[name] = b.provenance
        member, status = c_tilde_member(M, b.value)
    else:
        raise CommandError(f"unknown class {cls!r}; expected serre|torsion|torsionfree|oneres|ctilde|psi")
    result = {"member": member}
    if cls == "ctilde" and status != PROVED:
        result["scope"] = "cosyzygy data is exact only over PIDs and Artinian principal rings; sampled here"
    return _report("member", inputs, M.ring, result, prov, status), EXIT_OK, None


def cmd_verify(ws, flags):
    suite = _need(flags, "suite", "verify")
    seed = int(flags.get("seed") or 0)
    if suite in FINIVERSE_SUITES:
        ring = Ring.from_string(_need(flags, "ring", "verify"))
        bound = int(flags.get("bound") or DEFAULT_BOUND)
        U = enumerate_universe(ring, bound)
        rep = verify_bijection(suite, U)
        inputs = {"suite": suite, "ring": flags["ring"], "bound": bound, "seed": seed}
        code = EXIT_OK if rep["bijection"] and not rep["counterexamples"] else EXIT_COUNTEREXAMPLE
        if flags.get("double_bound"):
            inputs["double_bound"] = True
            rep = dict(rep, bound_sensitivity=bound_sensitivity(suite, ring, bound))
        fig = {"kind": "lattice", "report": rep}
        return _report("verify", inputs, ring, rep, {}, PROVED), code, fig
    if suite in RANDOM_SUITES:
        rep = SUITES[suite](seed=seed)
        inputs = {"suite": suite, "seed": seed}
        code = EXIT_OK if rep["passed"] else EXIT_COUNTEREXAMPLE
        return _report("verify", inputs, None, rep, {}, SAMPLED), code, None
    raise CommandError(f"unknown suite {suite!r}; expected one of {', '.join(FINIVERSE_SUITES + RANDOM_SUITES)}")


_COMMANDS = {
    "ass": cmd_ass,
    "supp": cmd_supp,
    "filtration": cmd_filtration,
    "spectral": cmd_spectral,
    "torsion": cmd_torsion,
    "bass": cmd_bass,
    "injres": cmd_injres,
    "member": cmd_member,
    "verify": cmd_verify,
}

COMMANDS = tuple(_COMMANDS)


def render_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2)


def _cell(v) -> str:
    if isinstance(v, (str, int, float, bool)) or v is None:
        return json.dumps(v) if not isinstance(v, str) else v
    return json.dumps(v, sort_keys=True)


def render_text(report: dict) -> str:
    """Tab-delimited key/value lines; nested values are flattened with dotted keys."""
    lines = [f"command\t{report['command']}", f"ring\t{report['ring']}", f"status\t{report['status']}"]
    for k, v in sorted(report["inputs"].items()):
        lines.append(f"input.{k}\t{_cell(v)}")
    for k, v in sorted(report["result"].items()):
        if isinstance(v, dict):
            for k2, v2 in sorted(v.items()):
                lines.append(f"{k}.{k2}\t{_cell(v2)}")
        else:
            lines.append(f"{k}\t{_cell(v)}")
    for k, v in sorted(report["provenance"].items()):
        lines.append(f"provenance.{k}\t{v}")
    return "\n".join(lines)
