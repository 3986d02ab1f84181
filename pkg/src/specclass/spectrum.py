"""Primes, specialization-closed sets, support, associated primes and prime filtrations."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import sympy

from .errors import NeedCandidates, NotPrime, RingMismatch, UnsupportedRing
from .kernel.ops import radical_contains
from .kernel.polys import p_format
from .kernel.rings import Ideal, Ring, RingElement
from .modules.presentation import (
    ModulePresentation,
    colon_generators,
    ext_module,
    hom_module,
)

AUTO = "auto"
ASSERTED = "asserted"


# factorization helpers ---------------------------------------------------------


def _to_sympy(ring: Ring, poly: dict):
    x = sympy.Symbol("x")
    expr = sympy.Integer(0)
    for m, c in poly.items():
        if isinstance(c, Fraction):
            c = sympy.Rational(c.numerator, c.denominator)
        expr += c * x ** (m[0] if m else 0)
    if ring.base == "QQ":
        return sympy.Poly(expr, x, domain="QQ")
    return sympy.Poly(expr, x, modulus=ring.dom.p)


def _from_sympy(ring: Ring, poly) -> dict:
    out = {}
    for (e,), c in poly.terms():
        if ring.base == "QQ":
            c = Fraction(int(c.p), int(c.q))
        c = ring.dom.convert(int(c) if not isinstance(c, Fraction) else c)
        c = ring.dom.norm(c)
        if c:
            out[(e,)] = c
    _, lc = max(out.items(), key=lambda t: t[0])
    inv = ring.dom.inv(lc)
    return {m: ring.dom.norm(c * inv) for m, c in out.items()}


def irreducible_factors(ring: Ring, poly: dict) -> list:
    """Distinct monic irreducible factors of a univariate polynomial over QQ or GF(p),
    or distinct prime factors of an integer."""
    if ring.engine == "int":
        return [{(): p} for p in sympy.primefactors(abs(poly.get((), 0)))]
    if ring.engine != "field" or ring.nvars != 1:
        raise UnsupportedRing(f"{ring}: factorization needs ZZ or a univariate field ring")
    if not poly or all(not any(m) for m in poly):
        return []
    _, facs = _to_sympy(ring, poly).factor_list()
    out = [_from_sympy(ring, f) for f, _ in facs if f.degree() > 0]
    out.sort(key=lambda p: p_format(p, ring.variables))
    return out


def _is_linear_basis(polys) -> bool:
    return all(all(sum(m) <= 1 for m in p) for p in polys)


def _is_monomial_basis(vectors) -> bool:
    return all(sum(len(p) for p in v) == 1 for v in vectors)


# primes ----------------------------------------------------------------------------


class PrimeIdeal:
    """A prime ideal with its certification status (``auto`` or ``asserted``)."""

    def __init__(self, ideal: Ideal, certification: str = AUTO):
        self.ideal = ideal
        self.ring = ideal.ring
        self.certification = certification

    @classmethod
    def certify(cls, ideal: Ideal, assume: bool = False) -> "PrimeIdeal":
        verdict = prime_verdict(ideal)
        if verdict is True:
            return cls(ideal, AUTO)
        if verdict is False:
            raise NotPrime(f"{ideal} is not prime in {ideal.ring}")
        if assume:
            return cls(ideal, ASSERTED)
        raise NotPrime(f"cannot certify {ideal} as prime in {ideal.ring}; use 'assume prime'")

    @classmethod
    def of(cls, ring: Ring, *gens, assume: bool = False) -> "PrimeIdeal":
        return cls.certify(ring.ideal(*gens), assume=assume)

    def contains(self, f) -> bool:
        return self.ideal.contains(f)

    def issubset(self, other: "PrimeIdeal") -> bool:
        return self.ideal.issubset(other.ideal)

    def __le__(self, other):
        return self.issubset(other)

    def __eq__(self, other):
        return isinstance(other, PrimeIdeal) and self.ideal == other.ideal

    def __hash__(self):
        return hash(self.ideal)

    def generator_strings(self) -> list:
        return self.ideal.generator_strings()

    def sort_key(self):
        gens = self.generator_strings()
        return (len(gens), gens)

    def __str__(self):
        return str(self.ideal)

    def __repr__(self):
        return f"<PrimeIdeal {self} ({self.certification})>"


def prime_verdict(ideal: Ideal):
    """True (provably prime), False (provably not prime) or None (undecided)."""
    ring = ideal.ring
    ring.require_engine()
    if ideal.is_unit():
        return False
    pre = ideal.preimage_polys()
    if ring.engine == "int":
        g = pre[0].get((), 0) if pre else 0
        return g == 0 or sympy.isprime(g)
    if ring.nvars == 0:
        return not pre
    if ring.nvars == 1:
        if not pre:
            return True
        f = pre[0]
        facs = irreducible_factors(ring, f)
        return len(facs) == 1 and _sympy_is_squarefree(ring, f)
    if _is_linear_basis(pre):
        return True
    return None


def _sympy_is_squarefree(ring: Ring, f: dict) -> bool:
    _, facs = _to_sympy(ring, f).factor_list()
    return all(e == 1 for _, e in facs)


def monomial_primes(ring: Ring) -> list:
    """All primes generated by subsets of the variables that contain the quotient ideal."""
    out = []
    for r in range(ring.nvars + 1):
        for combo in itertools.combinations(ring.variables, r):
            I = ring.ideal(*combo) if combo else ring.zero_ideal()
            if _contains_quotient(ring, combo):
                out.append(PrimeIdeal(I, AUTO))
    return out


def _contains_quotient(ring: Ring, combo) -> bool:
    idx = [ring.variables.index(v) for v in combo]
    for q in ring.quotient_polys:
        if not all(any(m[i] > 0 for i in idx) for m in q):
            return False
    return True


def minimal_primes(ideal: Ideal) -> list:
    """Minimal primes over an ideal, in the full-enumeration class of rings."""
    ring = ideal.ring
    ring.require_engine()
    if ideal.is_unit():
        return []
    pre = ideal.preimage_polys()
    if ring.engine == "int" or (ring.engine == "field" and ring.nvars == 1):
        if not pre:
            return [PrimeIdeal(ring.zero_ideal(), AUTO)]
        facs = irreducible_factors(ring, pre[0])
        return sorted((PrimeIdeal(Ideal(ring, [RingElement(ring, f)]), AUTO) for f in facs), key=PrimeIdeal.sort_key)
    if ring.engine == "field" and ring.nvars == 0:
        return [PrimeIdeal(ring.zero_ideal(), AUTO)]
    if _is_monomial_basis([(p,) for p in pre]):
        supports = [[i for i, e in enumerate(next(iter(p))) if e > 0] for p in pre]
        covers = []
        for r in range(ring.nvars + 1):
            for combo in itertools.combinations(range(ring.nvars), r):
                s = set(combo)
                if any(c <= s for c in covers):
                    continue
                if all(s & set(sup) for sup in supports):
                    covers.append(s)
        out = []
        for c in covers:
            names = [ring.variables[i] for i in sorted(c)]
            out.append(PrimeIdeal(ring.ideal(*names) if names else ring.zero_ideal(), AUTO))
        return sorted(out, key=PrimeIdeal.sort_key)
    if _is_linear_basis(pre):
        return [PrimeIdeal(ideal, AUTO)]
    raise NeedCandidates(f"minimal primes of {ideal} are out of reach without primary decomposition")


# specialization-closed sets ---------------------------------------------------------


class SpecSet:
    """Finite union of closed sets V(p_1) u ... u V(p_r), stored as a minimal antichain."""

    def __init__(self, ring: Ring, primes=()):
        self.ring = ring
        kept: list = []
        for p in primes:
            if p.ring != ring:
                raise RingMismatch(f"{p.ring} vs {ring}")
            if any(q.issubset(p) for q in kept):
                continue
            kept = [q for q in kept if not p.issubset(q)]
            kept.append(p)
        self.primes = tuple(sorted(kept, key=PrimeIdeal.sort_key))

    @classmethod
    def empty(cls, ring: Ring) -> "SpecSet":
        return cls(ring, [])

    @classmethod
    def whole(cls, ring: Ring) -> "SpecSet":
        return cls(ring, minimal_primes(ring.zero_ideal()))

    @classmethod
    def of_ideal(cls, ideal: Ideal) -> "SpecSet":
        """V(I)."""
        return cls(ideal.ring, minimal_primes(ideal))

    def contains(self, q: PrimeIdeal) -> bool:
        return any(p.issubset(q) for p in self.primes)

    def __contains__(self, q):
        return self.contains(q)

    def issubset(self, other: "SpecSet") -> bool:
        return all(other.contains(p) for p in self.primes)

    def __le__(self, other):
        return self.issubset(other)

    def union(self, other: "SpecSet") -> "SpecSet":
        return SpecSet(self.ring, self.primes + other.primes)

    def is_empty(self) -> bool:
        return not self.primes

    def defining_ideal(self) -> Ideal:
        """The intersection of the generator primes (the unit ideal for the empty set)."""
        from .kernel.ops import intersect_all

        if not self.primes:
            return self.ring.unit_ideal()
        return intersect_all([p.ideal for p in self.primes])

    def __eq__(self, other):
        return isinstance(other, SpecSet) and set(self.primes) == set(other.primes)

    def __hash__(self):
        return hash(frozenset(self.primes))

    def strings(self) -> list:
        return [p.generator_strings() for p in self.primes]

    def __str__(self):
        return "closure{" + ", ".join(str(p) for p in self.primes) + "}"

    def __repr__(self):
        return f"<SpecSet {self}>"


def spec_closure(points, ring: Ring | None = None) -> SpecSet:
    points = list(points)
    if ring is None:
        if not points:
            raise ValueError("an empty closure needs the ring")
        ring = points[0].ring
    return SpecSet(ring, points)


# support and associated primes --------------------------------------------------------


def _check(p: PrimeIdeal, M: ModulePresentation):
    if p.ring != M.ring:
        raise RingMismatch(f"{p.ring} vs {M.ring}")


def supp_contains(p: PrimeIdeal, M: ModulePresentation) -> bool:
    _check(p, M)
    return M.annihilator.issubset(p.ideal)


def supp_specset(M: ModulePresentation) -> SpecSet:
    """Supp(M) = V(ann M) as a SpecSet."""
    return SpecSet.of_ideal(M.annihilator)


def supp_within(M: ModulePresentation, S: SpecSet) -> bool:
    """Supp(M) inside S, by radical containment of the defining ideal of S."""
    ann = M.annihilator
    J = S.defining_ideal()
    return all(radical_contains(ann, g) for g in J.gens)


def ass_contains(p: PrimeIdeal, M: ModulePresentation) -> bool:
    _check(p, M)
    if M.ngens == 0:
        return False
    R_p = ModulePresentation.cyclic(M.ring, p.ideal)
    H = hom_module(R_p, M).module
    return supp_contains(p, H)


def ass_candidates(M: ModulePresentation) -> list:
    """A finite set of primes containing Ass(M), when a complete strategy is available."""
    ring = M.ring
    ring.require_engine()
    if M.is_zero():
        return []
    if ring.is_principal_class:
        out = []
        seen = set()
        for d in M.invariant_factors():
            if not d:
                ps = [PrimeIdeal(ring.zero_ideal(), AUTO)]
            else:
                ps = [PrimeIdeal(Ideal(ring, [RingElement(ring, f)]), AUTO) for f in irreducible_factors(ring, d)]
            for p in ps:
                if p not in seen:
                    seen.add(p)
                    out.append(p)
        return out
    if _is_monomial_basis(M.basis.elements):
        ann = M.annihilator
        return [p for p in monomial_primes(ring) if ann.issubset(p.ideal)]
    if ring.engine == "field" and not ring.quotient_polys:
        # over a polynomial ring, the associated primes of codimension c are
        # minimal over ann Ext^c(M, S)
        free = ModulePresentation.free(ring, 1)
        out = []
        for c in range(ring.nvars + 1):
            E = ext_module(c, M, free).module
            if E.is_zero():
                continue
            for p in minimal_primes(E.annihilator):
                if p not in out:
                    out.append(p)
        return out
    raise NeedCandidates(f"no complete associated-prime strategy for {M}; supply candidate primes")


def ass_enumerate(M: ModulePresentation, candidates=None) -> list:
    """Exactly Ass(M), as a sorted list of primes."""
    if candidates is None:
        candidates = ass_candidates(M)
    out = [p for p in candidates if ass_contains(p, M)]
    uniq = []
    for p in out:
        if p not in uniq:
            uniq.append(p)
    return sorted(uniq, key=PrimeIdeal.sort_key)


def ass_closure(M: ModulePresentation, candidates=None) -> SpecSet:
    return SpecSet(M.ring, ass_enumerate(M, candidates))


# prime filtrations --------------------------------------------------------------------


@dataclass
class PrimeFiltration:
    module: ModulePresentation
    elements: list  # ambient vectors g_1, ..., g_k; M_i = <g_1, ..., g_i>
    primes: list

    def __len__(self):
        return len(self.primes)

    def step_module(self, i: int) -> ModulePresentation:
        """M / M_i as a presentation on the ambient generators."""
        M = self.module
        return ModulePresentation(M.ring, M.ngens, list(M.relations) + self.elements[:i])

    def verify(self) -> bool:
        for i, (g, p) in enumerate(zip(self.elements, self.primes)):
            Q = self.step_module(i)
            if Q.is_zero_element(g):
                return False
            if Q.element_annihilator(g) != p.ideal:
                return False
        return self.step_module(len(self.elements)).is_zero()


def _witness(M: ModulePresentation, p: PrimeIdeal):
    """A generator of (0 :_M p) whose annihilator is exactly p."""
    ring = M.ring
    gens = colon_generators(ring, M.relations, M.ngens, [g.poly for g in p.ideal.gens])
    for g in gens:
        g = tuple(ring.normal(c) for c in g)
        if M.is_zero_element(g):
            continue
        if M.element_annihilator(g) == p.ideal:
            return M.reduce(g)
    return None


def _maximal_first(primes) -> list:
    primes = sorted(primes, key=PrimeIdeal.sort_key, reverse=True)
    tops = [p for p in primes if not any(p != q and p.issubset(q) for q in primes)]
    return tops


def prime_filtration(M: ModulePresentation, candidates=None) -> PrimeFiltration:
    ring = M.ring
    elements: list = []
    primes: list = []
    cur = M
    guard = 0
    while not cur.is_zero():
        guard += 1
        if guard > 4096:
            raise RuntimeError("prime filtration failed to terminate")
        cand = None if candidates is None else [p for p in candidates]
        ass = ass_enumerate(cur, cand)
        if not ass:
            raise NeedCandidates("candidate primes do not cover Ass of a filtration quotient")
        p = _maximal_first(ass)[0]
        g = _witness(cur, p)
        if g is None:
            raise AssertionError(f"no witness for associated prime {p}")
        elements.append(g)
        primes.append(p)
        cur = ModulePresentation(ring, M.ngens, list(M.relations) + elements)
    filt = PrimeFiltration(M, elements, primes)
    if not filt.verify():
        raise AssertionError("prime filtration failed verification")
    return filt


def is_spectral(M: ModulePresentation, candidates=None):
    """The prime p when ann(M) = p and Ass(M) = {p}; otherwise None."""
    if M.is_zero():
        return None
    ass = ass_enumerate(M, candidates)
    if len(ass) != 1:
        return None
    (p,) = ass
    return p if M.annihilator == p.ideal else None


def subquotient_rel(P: ModulePresentation, M: ModulePresentation) -> bool:
    """R/p < M for a prime quotient P = R/p, decided as p in Supp(M)."""
    pruned, _, _ = P.prune()
    if pruned.ngens != 1:
        raise ValueError("left argument must be a cyclic prime quotient R/p")
    ann = pruned.annihilator
    try:
        p = PrimeIdeal.certify(ann)
    except NotPrime as exc:
        raise ValueError(f"left argument must be R/p with p prime: {exc}") from exc
    return supp_contains(p, M)
