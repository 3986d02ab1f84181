"""Seeded randomized checks of the classification results.

Every suite takes a seed and returns a JSON-serializable dict whose content is a
function of the seed alone, so two runs with the same seed serialize to the same
bytes.
"""

from __future__ import annotations

import itertools
import random

from .classify import (
    GSequence,
    c_tilde_member,
    c_tilde_truncate,
    g_sequence_validate,
)
from .finiverse import enumerate_universe, verify_bijection
from .kernel.rings import Ring
from .localalg import (
    cor710_failures,
    cosyzygy_ass_membership,
    divisible_ass,
    divisible_cosyzygy,
    divisible_supp_within,
    divisible_torsion_free,
    hom_into_divisible_nonzero,
    hom_orthogonality_check,
    prime_hull,
    torsion_class_member,
    torsion_decompose,
    torsion_free_member,
)
from .modules.presentation import (
    ModuleMap,
    ModulePresentation,
    direct_sum,
    free_resolution,
    hom_module,
    is_surjective,
    quotient,
    subquotient,
    submodule,
    torsion_submodule,
)
from .spectrum import (
    PrimeIdeal,
    SpecSet,
    ass_contains,
    ass_enumerate,
    irreducible_factors,
    spec_closure,
    supp_specset,
)

ZZ_PRIMES = (2, 3, 5, 7, 11, 13)


def _zz() -> Ring:
    return Ring("ZZ")


def _prime(ring: Ring, g) -> PrimeIdeal:
    return PrimeIdeal.certify(ring.ideal(g))


# random modules -------------------------------------------------------------------------------


def _scramble(rng: random.Random, rows, ring: Ring, multipliers):
    """Random invertible row and column operations."""
    rows = [[ring.element(a) for a in r] for r in rows]
    n = len(rows)
    m = len(rows[0]) if rows else 0
    for _ in range(2 * n):
        if n < 2:
            break
        i, j = rng.sample(range(n), 2)
        c = ring.element(rng.choice(multipliers))
        rows[i] = [a + c * b for a, b in zip(rows[i], rows[j])]
    for _ in range(2 * m):
        if m < 2:
            break
        i, j = rng.sample(range(m), 2)
        c = ring.element(rng.choice(multipliers))
        for r in rows:
            r[i] = r[i] + c * r[j]
    return rows


def random_zz_module(rng: random.Random, max_gens: int = 3, primes=ZZ_PRIMES) -> ModulePresentation:
    Z = _zz()
    k = rng.randint(1, max_gens)
    factors = []
    for _ in range(k):
        u = rng.random()
        if u < 0.2:
            factors.append(0)
        elif u < 0.3:
            factors.append(1)
        else:
            d = 1
            for p in rng.sample(primes, rng.randint(1, 2)):
                d *= p ** rng.randint(1, 2)
            factors.append(d)
    rows = [[factors[i] if i == j else 0 for j in range(k)] for i in range(k)]
    rows = _scramble(rng, rows, Z, [-2, -1, 1, 2, 3])
    return ModulePresentation.from_rows(Z, rows)


QX_FACTORS = ("x", "x + 1", "x^2 + 1", "x - 2")


def random_qx_module(rng: random.Random, ring: Ring, max_gens: int = 2) -> ModulePresentation:
    k = rng.randint(1, max_gens)
    factors = []
    for _ in range(k):
        u = rng.random()
        if u < 0.2:
            factors.append(ring.zero)
        elif u < 0.3:
            factors.append(ring.one)
        else:
            d = ring.one
            for f in rng.sample(QX_FACTORS, rng.randint(1, 2)):
                d = d * ring.element(f) ** rng.randint(1, 2)
            factors.append(d)
    rows = [[factors[i] if i == j else ring.zero for j in range(k)] for i in range(k)]
    rows = _scramble(rng, rows, ring, ["1", "-1", "2", "x", "x + 1"])
    return ModulePresentation.from_rows(ring, rows)


def random_monomial_module(rng: random.Random, ring: Ring) -> ModulePresentation:
    """Direct sum of one or two cyclic modules R/I with I a random monomial ideal."""
    pieces = []
    for _ in range(rng.randint(1, 2)):
        gens = []
        for _ in range(rng.randint(0, 2)):
            a, b = rng.randint(0, 2), rng.randint(0, 2)
            if a + b == 0:
                a = 1
            gens.append(f"x^{a}*y^{b}")
        pieces.append(ModulePresentation.cyclic(ring, ring.ideal(*gens) if gens else ring.zero_ideal()))
    if len(pieces) == 1:
        return pieces[0]
    return direct_sum(*pieces)[0]


def random_vector(rng: random.Random, M: ModulePresentation, coeffs) -> tuple:
    ring = M.ring
    return tuple(ring.element(rng.choice(coeffs)).poly for _ in range(M.ngens))


def random_submodule(rng: random.Random, M: ModulePresentation, coeffs, nonzero: bool = True):
    """A random submodule N of M (nonzero when requested and possible), with its inclusion."""
    if M.is_zero() and nonzero:
        return None
    for _ in range(50):
        vecs = [random_vector(rng, M, coeffs) for _ in range(rng.randint(1, 2))]
        if nonzero and all(M.is_zero_element(v) for v in vecs):
            continue
        return submodule(M, vecs)
    vecs = [M.unit(i) for i in range(M.ngens) if not M.is_zero_element(M.unit(i))][:1]
    return submodule(M, vecs)


def _int_factors(M: ModulePresentation) -> list:
    return [d.get((), 0) if d else 0 for d in M.invariant_factors()]


def _zz_candidates(ms, extra=(5, 7, 11)) -> list:
    Z = _zz()
    nums = {0}
    for M in ms:
        for d in _int_factors(M):
            if d:
                nums.update(p.get((), 0) for p in irreducible_factors(Z, {(): d}))
    nums.update(extra)
    return [_prime(Z, n) for n in sorted(nums)]


def _fmt_module(M: ModulePresentation) -> list:
    return M.rows_display()


# 1. support and associated primes ---------------------------------------------------------------


def suite_supp_ass(seed: int = 0, count: int = 100) -> dict:
    rng = random.Random(seed)
    Z = _zz()
    Qx = Ring("QQ", ("x",))
    failures = []
    checked = {"ZZ": 0, "QQ[x]": 0}
    for i in range(count):
        for ring, label in ((Z, "ZZ"), (Qx, "QQ[x]")):
            M = random_zz_module(rng) if ring is Z else random_qx_module(rng, Qx)
            lhs = supp_specset(M)
            rhs = spec_closure(ass_enumerate(M), ring)
            checked[label] += 1
            if lhs != rhs:
                failures.append({"ring": label, "module": _fmt_module(M),
                                 "supp": lhs.strings(), "ass_closure": rhs.strings()})
    R = Ring("QQ", ("x", "y"))
    fixed = ModulePresentation.cyclic(R, R.ideal("x^2", "x*y"))
    fixed_supp = supp_specset(fixed)
    fixed_ok = fixed_supp == spec_closure(ass_enumerate(fixed), R) == spec_closure([_prime(R, "x")])
    if not fixed_ok:
        failures.append({"ring": "QQ[x,y]", "module": "R/(x^2, x*y)", "supp": fixed_supp.strings()})
    return {"suite": "supp_ass", "seed": seed, "checked": checked, "fixed_example": fixed_supp.strings(),
            "failures": failures, "passed": not failures}


# 2. torsion pairs ---------------------------------------------------------------------------------


def _random_zz_specset(rng: random.Random) -> SpecSet:
    Z = _zz()
    pool = [0, 2, 3, 5, 7]
    weights = [0.1, 0.9, 0.9, 0.9, 0.9]
    chosen = [n for n, w in zip(pool, weights) if rng.random() < w * 0.5]
    return SpecSet(Z, [_prime(Z, n) for n in chosen])


def _random_monomial_specset(rng: random.Random, R: Ring) -> SpecSet:
    pool = [("x",), ("y",), ("x", "y")]
    chosen = [g for g in pool if rng.random() < 0.45]
    return SpecSet(R, [PrimeIdeal.certify(R.ideal(*g)) for g in chosen])


def suite_torsionpair(seed: int = 0, sets: int = 40, per_set: int = 5) -> dict:
    rng = random.Random(seed)
    R = Ring("QQ", ("x", "y"))
    failures = []
    decompositions = 0
    pairs = 0
    heredity = 0
    for s in range(sets):
        use_zz = s % 2 == 0
        S = _random_zz_specset(rng) if use_zz else _random_monomial_specset(rng, R)
        coeffs = [-3, -1, 1, 2, 6] if use_zz else ["1", "x", "y", "x + y", "2"]
        Xs, Ys = [], []
        for _ in range(per_set):
            M = random_zz_module(rng) if use_zz else random_monomial_module(rng, R)
            try:
                dec = torsion_decompose(M, S)
            except AssertionError as exc:
                failures.append({"law": "decomposition", "module": _fmt_module(M), "set": S.strings(),
                                 "error": str(exc)})
                continue
            decompositions += 1
            # idempotence: the torsion of the torsion part is everything
            t2 = torsion_submodule(dec.X, S.defining_ideal())
            if not is_surjective(t2.inclusion):
                failures.append({"law": "idempotence", "module": _fmt_module(M), "set": S.strings()})
            if not torsion_free_member(dec.Y, S):
                failures.append({"law": "torsion-free quotient", "module": _fmt_module(M), "set": S.strings()})
            if not torsion_class_member(dec.X, S):
                failures.append({"law": "torsion part in T(S)", "module": _fmt_module(M), "set": S.strings()})
            sub = random_submodule(rng, dec.X, coeffs, nonzero=False) if dec.X.ngens else None
            if sub is not None:
                heredity += 1
                if not torsion_class_member(sub[0], S):
                    failures.append({"law": "heredity", "module": _fmt_module(M), "set": S.strings()})
            Xs.append(dec.X)
            Ys.append(dec.Y)
        for X in Xs:
            for Y in Ys:
                pairs += 1
                if not hom_orthogonality_check(X, Y):
                    failures.append({"law": "Hom(T, F) = 0", "set": S.strings(),
                                     "X": _fmt_module(X), "Y": _fmt_module(Y)})
    return {"suite": "torsionpair", "seed": seed, "decompositions": decompositions, "hom_pairs": pairs,
            "heredity_checks": heredity, "failures": failures, "passed": not failures}


# 3. injective hulls over ZZ ---------------------------------------------------------------------------


def suite_injective_hulls(seed: int = 0, sets: int = 50, modules: int = 20) -> dict:
    rng = random.Random(seed)
    Z = _zz()
    pool = [0] + list(ZZ_PRIMES)
    failures = []
    checks = 0
    for _ in range(sets):
        S = SpecSet(Z, [_prime(Z, n) for n in pool if n and rng.random() < 0.4]
                    + ([_prime(Z, 0)] if rng.random() < 0.05 else []))
        inside = [n for n in pool if S.contains(_prime(Z, n))]
        outside = [n for n in pool if n not in inside]
        for n in outside:
            if not divisible_torsion_free(prime_hull(_prime(Z, n)), S):
                failures.append({"law": "E(q) in F(S)", "q": n, "set": S.strings()})
        for n in inside:
            if not divisible_supp_within(prime_hull(_prime(Z, n)), S):
                failures.append({"law": "E(p) in T(S)", "p": n, "set": S.strings()})
        for _ in range(modules):
            M = random_zz_module(rng)
            lhs = torsion_class_member(M, S)
            rhs = not any(hom_into_divisible_nonzero(M, prime_hull(_prime(Z, n))) for n in outside)
            checks += 1
            if lhs != rhs:
                failures.append({"law": "T(S) via Hom into hulls", "module": _fmt_module(M),
                                 "set": S.strings(), "torsion_member": lhs, "hom_test": rhs})
    return {"suite": "injective_hulls", "seed": seed, "sets": sets, "module_checks": checks,
            "failures": failures, "passed": not failures}


# 4. Bass criterion against the divisible model ------------------------------------------------------------


def suite_bass(seed: int = 0, count: int = 100) -> dict:
    rng = random.Random(seed)
    Z = _zz()
    failures = []
    comparisons = 0
    for _ in range(count):
        M = random_zz_module(rng)
        cands = _zz_candidates([M])
        for k in (0, 1, 2):
            D = divisible_cosyzygy(M, k)
            for p in cands:
                comparisons += 1
                a = cosyzygy_ass_membership(p, k, M)
                b = divisible_ass(D, p)
                if a != b:
                    failures.append({"module": _fmt_module(M), "prime": p.generator_strings(), "degree": k,
                                     "bass": a, "divisible": b})
                if k == 0 and a != ass_contains(p, M):
                    failures.append({"module": _fmt_module(M), "prime": p.generator_strings(),
                                     "degree": 0, "reason": "degree 0 differs from Ass"})
                if k == 2 and a:
                    failures.append({"module": _fmt_module(M), "prime": p.generator_strings(),
                                     "degree": 2, "reason": "second cosyzygy has an associated prime"})
    free = ModulePresentation.free(Z, 1)
    anchor = {str(n): cosyzygy_ass_membership(_prime(Z, n), 1, free) for n in (2, 3, 5)}
    if not all(anchor.values()):
        failures.append({"anchor": "Ass of the first cosyzygy of ZZ", "flags": anchor})
    return {"suite": "bass", "seed": seed, "modules": count, "comparisons": comparisons,
            "anchor_first_cosyzygy_of_ZZ": anchor, "failures": failures, "passed": not failures}


# 5. cosyzygy containments along short exact sequences ----------------------------------------------------


def random_zz_ses(rng: random.Random):
    M = random_zz_module(rng)
    sub = random_submodule(rng, M, [-3, -1, 1, 2, 4, 6], nonzero=False)
    if sub is None:
        N = ModulePresentation.zero(M.ring)
        i = ModuleMap(N, M, [], check=False)
    else:
        N, i = sub
    C, p = quotient(M, i.columns)
    return i, p


def suite_cor710(seed: int = 0, count: int = 100) -> dict:
    rng = random.Random(seed)
    failures = []
    checked = 0
    for _ in range(count):
        i, p = random_zz_ses(rng)
        cands = _zz_candidates([i.source, i.target, p.target], extra=(5, 7))
        for k in (0, 1, 2):
            fl = cor710_failures(i, p, k, cands)
            checked += 1
            if fl:
                failures.append({"sub": _fmt_module(i.source), "module": _fmt_module(i.target),
                                 "quotient": _fmt_module(p.target), "failures": fl})
    return {"suite": "cor710", "seed": seed, "sequences": count, "checks": checked,
            "failures": failures, "passed": not failures}


# 6. exhaustive bijections ------------------------------------------------------------------------------------


def suite_bijections(seed: int = 0, bound: int = 144) -> dict:
    out = {"suite": "bijections", "seed": seed, "bound": bound, "runs": []}
    ok = True
    expected = {"ZZ/12": 4, "GF(2)[x]/(x^3)": 2}
    for ring_text, n in expected.items():
        U = enumerate_universe(Ring.from_string(ring_text), bound)
        for thm in ("p3_9", "ashah", "dr9_4"):
            rep = verify_bijection(thm, U)
            good = rep["bijection"] and rep["lhs"] == rep["rhs"] == n and not rep["counterexamples"]
            ok = ok and good
            out["runs"].append({"ring": ring_text, "theorem": thm, "lhs": rep["lhs"], "rhs": rep["rhs"],
                                "bijection": rep["bijection"], "matching": rep["matching"],
                                "counterexamples": rep["counterexamples"], "universe_size": rep["universe_size"]})
    out["passed"] = ok
    return out


# 7. Hom into submodules -------------------------------------------------------------------------------------


def suite_hom_submodules(seed: int = 0, count: int = 100) -> dict:
    rng = random.Random(seed)
    Qx = Ring("QQ", ("x",))
    failures = []
    checked = {"ZZ": 0, "QQ[x]": 0}
    for _ in range(count):
        for label in ("ZZ", "QQ[x]"):
            while True:
                M = random_zz_module(rng) if label == "ZZ" else random_qx_module(rng, Qx)
                if not M.is_zero():
                    break
            coeffs = [-2, -1, 1, 3, 4] if label == "ZZ" else ["1", "x", "x + 1", "2"]
            N, _ = random_submodule(rng, M, coeffs)
            checked[label] += 1
            if hom_module(M, N).module.is_zero():
                failures.append({"ring": label, "module": _fmt_module(M), "sub": _fmt_module(N)})
    return {"suite": "hom_submodules", "seed": seed, "checked": checked, "failures": failures,
            "passed": not failures}


# 8. G-sequences over ZZ -----------------------------------------------------------------------------------------


WITNESSES = (0, 2, 3, 5, 30)  # 0 stands for ZZ itself


def _witness_module(n: int) -> ModulePresentation:
    Z = _zz()
    return ModulePresentation.free(Z, 1) if n == 0 else ModulePresentation.cyclic(Z, Z.ideal(n))


def _witness_label(n: int) -> str:
    return "ZZ" if n == 0 else f"ZZ/{n}"


def zz_specsets(generators=(0, 2, 3, 5)) -> list:
    Z = _zz()
    out = []
    for r in range(len(generators) + 1):
        for combo in itertools.combinations(generators, r):
            S = SpecSet(Z, [_prime(Z, n) for n in combo])
            if S not in out:
                out.append(S)
    return out


def syzygy(M: ModulePresentation, j: int) -> ModulePresentation:
    """The j-th syzygy of M in a free resolution (M itself for j = 0)."""
    if j == 0:
        return M
    diffs = free_resolution(M, j)
    if len(diffs) < j:
        return ModulePresentation.zero(M.ring)
    D = diffs[j - 1]
    rank = len(D[0]) if D else 0
    K, _ = subquotient(M.ring, D, [], rank)
    return K


def suite_gsequences(seed: int = 0, samples: int = 10) -> dict:
    rng = random.Random(seed)
    Z = _zz()
    sets = zz_specsets()
    seqs = [GSequence([a, b], ring=Z) for a in sets for b in sets]
    valid = []
    failures = []
    for Y in seqs:
        rep = g_sequence_validate(Y)
        if rep.valid:
            valid.append(Y)
    for Y in valid:
        member, _ = c_tilde_member(ModulePresentation.free(Z, 1), Y)
        if not member:
            failures.append({"law": "ZZ in C(Y)", "sequence": str(Y)})
        for _ in range(samples):
            i, p = random_zz_ses(rng)
            A, B, C = i.source, i.target, p.target
            a, b, c = (c_tilde_member(X, Y)[0] for X in (A, B, C))
            if a and c and not b:
                failures.append({"law": "extension closed", "sequence": str(Y), "sub": _fmt_module(A),
                                 "quotient": _fmt_module(C)})
            if b and c and not a:
                failures.append({"law": "kernels of epimorphisms", "sequence": str(Y), "module": _fmt_module(B),
                                 "quotient": _fmt_module(C)})
        for j in range(1, len(Y) + 1):
            T = c_tilde_truncate(Y, j)
            if T.sets != Y.sets[j - 1:] or not g_sequence_validate(T).valid:
                failures.append({"law": "truncation", "sequence": str(Y), "j": j})
            for n in WITNESSES:
                M = _witness_module(n)
                lhs = c_tilde_member(syzygy(M, j - 1), Y)[0]
                rhs = c_tilde_member(M, T)[0]
                if lhs != rhs:
                    failures.append({"law": "truncation membership", "sequence": str(Y), "j": j,
                                     "module": _witness_label(n)})
    separations = []
    profile = {str(Y): [c_tilde_member(_witness_module(n), Y)[0] for n in WITNESSES] for Y in valid}
    for Y1, Y2 in itertools.combinations(valid, 2):
        w = next((n for n, a, b in zip(WITNESSES, profile[str(Y1)], profile[str(Y2)]) if a != b), None)
        if w is None:
            failures.append({"law": "separation", "sequences": [str(Y1), str(Y2)]})
        else:
            separations.append({"sequences": [str(Y1), str(Y2)], "witness": _witness_label(w)})
    return {"suite": "gsequences", "seed": seed, "candidates": len(seqs), "valid": [str(Y) for Y in valid],
            "separations": separations, "failures": failures, "passed": not failures}


SUITES = {
    "supp_ass": suite_supp_ass,
    "torsionpair": suite_torsionpair,
    "injhull": suite_injective_hulls,
    "bass": suite_bass,
    "cor710": suite_cor710,
    "bijections": suite_bijections,
    "homsub": suite_hom_submodules,
    "gseq": suite_gsequences,
}
