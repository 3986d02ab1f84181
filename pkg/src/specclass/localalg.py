"""Torsion pairs from specialization-closed sets, Bass numbers, symbolic injective
resolutions, and a divisible-group model of injective resolutions over ZZ."""

from __future__ import annotations

from dataclasses import dataclass, field

import sympy

from ._once import new_lock
from .errors import NeedCandidates, NotIntegerRing
from .kernel.polys import p_mul, p_sub
from .kernel.rings import Ideal, RingElement
from .modules.presentation import (
    ModuleMap,
    ModulePresentation,
    ext_module,
    hom_module,
    quotient,
    torsion_submodule,
    verify_short_exact,
)
from .spectrum import (
    AUTO,
    PrimeIdeal,
    SpecSet,
    irreducible_factors,
    supp_contains,
    supp_within,
)

# torsion pairs ----------------------------------------------------------------------


@dataclass
class TorsionDecomposition:
    module: ModulePresentation
    S: SpecSet
    X: ModulePresentation
    inclusion: ModuleMap
    Y: ModulePresentation
    projection: ModuleMap
    exponent: int


def _gamma(M: ModulePresentation, S: SpecSet):
    return torsion_submodule(M, S.defining_ideal())


def torsion_decompose(M: ModulePresentation, S: SpecSet, verify: bool = True) -> TorsionDecomposition:
    """0 -> Gamma_S(M) -> M -> M / Gamma_S(M) -> 0."""
    t = _gamma(M, S)
    Y, proj = quotient(M, t.generators)
    dec = TorsionDecomposition(M, S, t.sub, t.inclusion, Y, proj, t.exponent)
    if verify:
        if not verify_short_exact(dec.inclusion, dec.projection):
            raise AssertionError("torsion decomposition is not exact")
        if not _gamma(Y, S).sub.is_zero():
            raise AssertionError("torsion-free part has S-torsion")
        if not supp_within(dec.X, S):
            raise AssertionError("torsion part has support outside S")
    return dec


def torsion_class_member(M: ModulePresentation, S: SpecSet) -> bool:
    """Supp(M) inside S."""
    return supp_within(M, S)


def torsion_free_member(M: ModulePresentation, S: SpecSet) -> bool:
    """Gamma_S(M) = 0."""
    return _gamma(M, S).sub.is_zero()


def hom_orthogonality_check(X: ModulePresentation, Y: ModulePresentation) -> bool:
    return hom_module(X, Y).module.is_zero()


# Bass numbers --------------------------------------------------------------------------


def _cyclic(p: PrimeIdeal) -> ModulePresentation:
    return ModulePresentation.cyclic(p.ring, p.ideal)


def bass_nonvanishing(p: PrimeIdeal, k: int, M: ModulePresentation) -> bool:
    """Whether mu_k(p, M) is nonzero, i.e. p lies in Supp Ext^k(R/p, M)."""
    if k < 0:
        return False
    E = ext_module(k, _cyclic(p), M).module
    return supp_contains(p, E)


def cosyzygy_ass_membership(p: PrimeIdeal, k: int, M: ModulePresentation) -> bool:
    """p in Ass of the k-th cosyzygy of M (zero for negative k)."""
    return bass_nonvanishing(p, k, M)


def generic_rank(rows, P: Ideal) -> int:
    """Rank over the fraction field of S/P of a matrix with ambient entries, by
    fraction-free elimination with zero tests modulo P."""
    ring = P.ring
    dom = ring.dom

    def red(a):
        return P.basis.reduce((a,))[0] if a else a

    rows = [[red(a) for a in r] for r in rows]
    rows = [r for r in rows if any(r)]
    if not rows:
        return 0
    width = len(rows[0])
    rank = 0
    for c in range(width):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pr = rows[rank]
        a0 = pr[c]
        for j in range(rank + 1, len(rows)):
            a = rows[j][c]
            if not a:
                continue
            rows[j] = [red(p_sub(p_mul(a0, x, dom), p_mul(a, y, dom), dom)) for x, y in zip(rows[j], pr)]
        rank += 1
    return rank


def bass_dimension(p: PrimeIdeal, k: int, M: ModulePresentation) -> int:
    """mu_k(p, M): the generic rank of Ext^k(R/p, M) as an R/p-module."""
    if k < 0:
        return 0
    E = ext_module(k, _cyclic(p), M).module
    if E.ngens == 0:
        return 0
    rels = E.relation_gens()
    return E.ngens - generic_rank(rels, p.ideal)


@dataclass
class BassEntry:
    nonvanishing: bool
    dimension: int | None = None


class BassTable:
    """(prime, degree) -> Bass data; entries are written once and never changed."""

    def __init__(self, module: ModulePresentation, candidates, up_to: int, provenance: str):
        self.module = module
        self.candidates = list(candidates)
        self.up_to = up_to
        self.provenance = provenance
        self.default: dict = {}  # degree -> multiplicity at every maximal prime off the list
        self._entries: dict = {}
        self._lock = new_lock()

    def record(self, p: PrimeIdeal, k: int, entry: BassEntry) -> BassEntry:
        if entry.dimension is not None and (entry.dimension > 0) != entry.nonvanishing:
            raise AssertionError(f"inconsistent Bass data at {p}, degree {k}")
        with self._lock:
            key = (p, k)
            if key not in self._entries:
                self._entries[key] = entry
            return self._entries[key]

    def entry(self, p: PrimeIdeal, k: int) -> BassEntry:
        return self._entries[(p, k)]

    def __contains__(self, key):
        return key in self._entries

    def degree_terms(self, k: int) -> list:
        out = []
        for p in self.candidates:
            e = self._entries.get((p, k))
            if e is not None and e.nonvanishing:
                out.append((p, e.dimension))
        return out

    def formal_sum(self, k: int) -> str:
        parts = []
        for p, mu in self.degree_terms(k):
            parts.append(f"E(R/{p})^{mu if mu is not None else '?'}")
        d = self.default.get(k, 0)
        if d:
            parts.append(f"E(R/(p))^{d} for every other maximal p")
        return " + ".join(parts) if parts else "0"

    def as_rows(self) -> list:
        rows = []
        for k in range(self.up_to + 1):
            for p in self.candidates:
                e = self._entries.get((p, k))
                if e is not None:
                    rows.append({"prime": p.generator_strings(), "degree": k,
                                 "nonvanishing": e.nonvanishing, "dimension": e.dimension})
        return rows


def default_candidates(M: ModulePresentation) -> list:
    """(0) when R is a domain of the principal class, plus the prime divisors of the invariant factors."""
    ring = M.ring
    if not ring.is_principal_class:
        raise NeedCandidates("candidate primes are only derived over principal rings; supply them")
    if M.is_zero():
        return []
    out = []
    if ring.is_pid:
        out.append(PrimeIdeal(ring.zero_ideal(), AUTO))
    for d in M.invariant_factors():
        if not d:
            continue
        for f in irreducible_factors(ring, d):
            p = PrimeIdeal(Ideal(ring, [RingElement(ring, f)]), AUTO)
            if p not in out:
                out.append(p)
    return out


def _generic_integer_prime(avoid) -> int:
    q = 2
    while q in avoid:
        q = int(sympy.nextprime(q))
    return q


def symbolic_injective_resolution(M: ModulePresentation, up_to: int, candidates=None) -> BassTable:
    if candidates is None:
        candidates = default_candidates(M)
        provenance = "derived"
    else:
        candidates = list(candidates)
        provenance = "supplied"
    table = BassTable(M, candidates, up_to, provenance)
    for k in range(up_to + 1):
        for p in candidates:
            mu = bass_dimension(p, k, M)
            table.record(p, k, BassEntry(mu > 0, mu))
    ring = M.ring
    if ring.base == "ZZ" and ring.engine == "int" and not ring.quotient_polys:
        # over ZZ every maximal prime off the list behaves like any other one
        avoid = set()
        for p in candidates:
            pre = p.ideal.preimage_polys()
            if pre:
                avoid.add(pre[0][()])
        for d in M.invariant_factors():
            if d:
                avoid.update(sympy.primefactors(d[()]))
        q = _generic_integer_prime(avoid)
        gp = PrimeIdeal(ring.ideal(q), AUTO)
        for k in range(up_to + 1):
            table.default[k] = bass_dimension(gp, k, M)
    return table


# divisible groups over ZZ ----------------------------------------------------------------


@dataclass(frozen=True)
class DivisibleGroup:
    """QQ^rank + sum over primes p of Z(p^inf)^mult(p); mult is `default` off the exception map."""

    rank: int = 0
    default: int = 0
    exceptions: tuple = field(default_factory=tuple)  # sorted (p, b_p) with b_p != default

    @classmethod
    def make(cls, rank: int, default: int, exceptions: dict) -> "DivisibleGroup":
        if rank < 0 or default < 0 or any(b < 0 for b in exceptions.values()):
            raise ValueError("multiplicities must be nonnegative")
        exc = tuple(sorted((p, b) for p, b in exceptions.items() if b != default))
        return cls(rank, default, exc)

    def mult(self, p: int) -> int:
        return dict(self.exceptions).get(p, self.default)

    def is_zero(self) -> bool:
        return self.rank == 0 and self.default == 0 and not self.exceptions

    def as_dict(self) -> dict:
        return {"rank": self.rank, "default": self.default,
                "exceptions": {str(p): b for p, b in self.exceptions}}


def _integer_data(M: ModulePresentation):
    ring = M.ring
    if not (ring.base == "ZZ" and ring.engine == "int" and not ring.quotient_polys):
        raise NotIntegerRing(f"the divisible-group model needs ZZ, not {ring}")
    free = 0
    counts: dict = {}
    for d in M.invariant_factors():
        n = d.get((), 0) if d else 0
        if n == 0:
            free += 1
        else:
            for p in sympy.primefactors(n):
                counts[p] = counts.get(p, 0) + 1
    return free, counts


def divisible_injective_hull(M: ModulePresentation) -> DivisibleGroup:
    """E(ZZ^a + sum ZZ/p^e) = QQ^a + sum Z(p^inf)."""
    free, counts = _integer_data(M)
    return DivisibleGroup.make(free, 0, counts)


def divisible_cosyzygy(M: ModulePresentation, k: int) -> DivisibleGroup:
    """A divisible group with the same associated primes as the k-th cosyzygy of M.

    k = 0 returns E(M), which shares its associated primes with M; k = 1 is E(M)/M
    exactly; higher cosyzygies vanish over ZZ.
    """
    free, counts = _integer_data(M)
    if k < 0:
        return DivisibleGroup()
    if k == 0:
        return DivisibleGroup.make(free, 0, counts)
    if k == 1:
        # QQ^a / ZZ^a = (QQ/ZZ)^a, and Z(p^inf) / (ZZ/p^e) = Z(p^inf)
        return DivisibleGroup.make(0, free, {p: free + n for p, n in counts.items()})
    return DivisibleGroup()


def divisible_ass(D: DivisibleGroup, p: PrimeIdeal) -> bool:
    q = _prime_number(p)
    if q == 0:
        return D.rank > 0
    return D.mult(q) > 0


def _prime_number(p: PrimeIdeal) -> int:
    pre = p.ideal.preimage_polys()
    return pre[0][()] if pre else 0


def prime_hull(p: PrimeIdeal) -> DivisibleGroup:
    """E(ZZ/p): QQ for p = (0), the Pruefer group Z(p^inf) otherwise."""
    q = _prime_number(p)
    return DivisibleGroup.make(1, 0, {}) if q == 0 else DivisibleGroup.make(0, 0, {q: 1})


def hom_into_divisible_nonzero(M: ModulePresentation, D: DivisibleGroup) -> bool:
    """Hom(M, D) != 0, from invariant factors: ZZ maps onto anything nonzero;
    ZZ/n reaches Z(p^inf) exactly when p divides n, and never QQ."""
    free, counts = _integer_data(M)
    if D.is_zero():
        return False
    if free:
        return True
    return any(D.mult(p) > 0 for p in counts)


def divisible_supp_within(D: DivisibleGroup, S: SpecSet) -> bool:
    """Supp(D) inside S; QQ is supported everywhere, Z(p^inf) only at (p)."""
    zero = PrimeIdeal(S.ring.zero_ideal(), AUTO)
    if D.rank > 0 or D.default > 0:
        return S.contains(zero)
    return all(S.contains(PrimeIdeal(S.ring.ideal(p), AUTO)) for p, b in D.exceptions if b > 0)


def divisible_torsion_free(D: DivisibleGroup, S: SpecSet) -> bool:
    """Gamma_S(D) = 0: no Pruefer summand at a prime of S, and no QQ when S is everything."""
    ring = S.ring
    zero = PrimeIdeal(ring.zero_ideal(), AUTO)
    if S.contains(zero):
        return D.is_zero()
    for p in S.primes:
        if D.mult(_prime_number(p)) > 0:
            return False
    return True


# Cor 7.10 -----------------------------------------------------------------------------------


def cor710_failures(i: ModuleMap, pi: ModuleMap, k: int, candidates, check_exact: bool = True) -> list:
    """Clauses of the cosyzygy containments that fail for 0 -> M' -> M -> M'' -> 0 at degree k."""
    if check_exact and not verify_short_exact(i, pi):
        raise ValueError("the given maps do not form a short exact sequence")
    A, B, C = i.source, i.target, pi.target
    cache: dict = {}

    def ass(j, X, tag, p):
        key = (j, tag, p)
        if key not in cache:
            cache[key] = cosyzygy_ass_membership(p, j, X)
        return cache[key]

    failures = []
    for p in candidates:
        if ass(k, A, "A", p) and not (ass(k, B, "B", p) or ass(k - 1, C, "C", p)):
            failures.append({"prime": p.generator_strings(), "degree": k, "clause": 1})
        if ass(k, B, "B", p) and not (ass(k, A, "A", p) or ass(k, C, "C", p)):
            failures.append({"prime": p.generator_strings(), "degree": k, "clause": 2})
        if ass(k, C, "C", p) and not (ass(k, B, "B", p) or ass(k + 1, A, "A", p)):
            failures.append({"prime": p.generator_strings(), "degree": k, "clause": 3})
    return failures


def cor710_check(i: ModuleMap, pi: ModuleMap, k: int, candidates) -> bool:
    return not cor710_failures(i, pi, k, candidates)

