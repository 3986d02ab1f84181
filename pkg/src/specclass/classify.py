"""Membership predicates for the classified subcategory families.

Serre classes Supp^-1(S), torsion and torsion-free classes, 1-resolving classes,
the classes C(Y) cut out by G-sequences, and the Ass-defined classes Psi(S).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import sympy

from .errors import NeedCandidates
from .kernel.rings import Ideal, Ring, RingElement
from .localalg import bass_nonvanishing, default_candidates, torsion_free_member
from .modules.presentation import ModulePresentation
from .spectrum import (
    AUTO,
    PrimeIdeal,
    SpecSet,
    ass_enumerate,
    supp_within,
)

PROVED = "proved"
SAMPLED = "sampled"


def serre_member(M: ModulePresentation, S: SpecSet) -> bool:
    """M in Supp^-1(S)."""
    return supp_within(M, S)


def supp_of_family(ms, ring: Ring | None = None) -> SpecSet:
    """Union of the supports, as the closure of all associated primes."""
    ms = list(ms)
    if ring is None:
        if not ms:
            raise ValueError("an empty family needs the ring")
        ring = ms[0].ring
    points = []
    for M in ms:
        points.extend(ass_enumerate(M))
    return SpecSet(ring, points)


def one_resolving_member(M: ModulePresentation, S: SpecSet) -> bool:
    return torsion_free_member(M, S)


def _generator(ring: Ring, G):
    return ModulePresentation.free(ring, 1) if G is None else G


def one_resolving_valid(S: SpecSet, G: ModulePresentation | None = None) -> bool:
    G = _generator(S.ring, G)
    return not any(S.contains(p) for p in ass_enumerate(G))


# closed-form cosyzygy data over principal and Artinian rings -----------------------------


def is_artinian_principal(ring: Ring) -> bool:
    return ring.is_principal_class and not ring.is_pid


@dataclass
class CosyzygyAss:
    """Ass of a cosyzygy, complete over PIDs and Artinian principal rings.

    ``primes`` lists the members among the listed candidates; ``generic`` says
    whether every maximal prime off the list is a member as well.
    """

    primes: list
    candidates: list
    generic: bool
    exact: bool

    def meets(self, p: PrimeIdeal) -> bool:
        """Whether Ass meets V(p)."""
        if p.ideal.is_zero() and p.ring.is_pid:
            return bool(self.primes) or self.generic
        if p in self.candidates:
            return any(p.issubset(q) for q in self.primes)
        # p is maximal and off the list
        return self.generic


def _generic_prime(M: ModulePresentation):
    """A maximal prime at which M is locally free; None when none is easy to name."""
    ring = M.ring
    factors = [RingElement(ring, d) for d in M.invariant_factors() if d]
    if ring.engine == "int":
        q = 2
        while any(d.poly[()] % q == 0 for d in factors):
            q = int(sympy.nextprime(q))
        return PrimeIdeal(ring.ideal(q), AUTO)
    limit = 64 if ring.base == "QQ" else ring.modulus
    x = ring.gens[0]
    for c in range(limit):
        f = x - c
        if not any(Ideal(ring, [f]).contains(d) for d in factors):
            return PrimeIdeal(ring.ideal(f), AUTO)
    return None


def cosyzygy_ass_closed_form(M: ModulePresentation, k: int) -> CosyzygyAss:
    ring = M.ring
    if not ring.is_principal_class:
        raise NeedCandidates("closed-form cosyzygy data needs a principal ring")
    if k < 0 or M.is_zero():
        return CosyzygyAss([], [], False, True)
    if is_artinian_principal(ring) or ring.is_field():
        cands = list(SpecSet.whole(ring).primes)
        hits = [p for p in cands if bass_nonvanishing(p, k, M)]
        return CosyzygyAss(hits, cands, False, True)
    cands = default_candidates(M)
    hits = [p for p in cands if bass_nonvanishing(p, k, M)]
    g = _generic_prime(M)
    if g is None:
        return CosyzygyAss(hits, cands, False, False)
    return CosyzygyAss(hits, cands, bass_nonvanishing(g, k, M), True)


# G-sequences --------------------------------------------------------------------------------


@dataclass
class GSequence:
    sets: list
    generator: ModulePresentation | None = None
    ring: Ring | None = None

    def __post_init__(self):
        self.sets = list(self.sets)
        if self.ring is None:
            if self.generator is not None:
                self.ring = self.generator.ring
            elif self.sets:
                self.ring = self.sets[0].ring
            else:
                raise ValueError("a G-sequence needs a ring")
        if self.generator is None:
            self.generator = ModulePresentation.free(self.ring, 1)

    def __len__(self):
        return len(self.sets)

    def is_decreasing(self) -> bool:
        return all(b.issubset(a) for a, b in zip(self.sets, self.sets[1:]))

    def key(self) -> tuple:
        return tuple(frozenset(s.primes) for s in self.sets)

    def __str__(self):
        return "(" + ", ".join(str(s) for s in self.sets) + ")"


@dataclass
class GSequenceReport:
    valid: bool
    status: str
    decreasing: bool
    clauses: list = field(default_factory=list)
    sample: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {"valid": self.valid, "status": self.status, "decreasing": self.decreasing,
                "clauses": self.clauses, "sample": [p.generator_strings() for p in self.sample]}


def _exact_class(ring: Ring) -> bool:
    return ring.is_principal_class


def g_sequence_validate(Y: GSequence, sample=()) -> GSequenceReport:
    """Check Ass(cosyzygy_{i-1}(G)) and Y_i are disjoint for every i."""
    G = Y.generator
    decreasing = Y.is_decreasing()
    clauses = []
    ok = decreasing
    proved = _exact_class(Y.ring)
    for i, S in enumerate(Y.sets, start=1):
        closed = cosyzygy_ass_closed_form(G, i - 1) if proved else None
        if closed is not None and not closed.exact:
            proved = False
        for p in S.primes:
            hit = bass_nonvanishing(p, i - 1, G)
            if closed is not None and closed.exact:
                hit = hit or closed.meets(p)
            clauses.append({"index": i, "prime": p.generator_strings(), "meets": hit})
            ok = ok and not hit
        if not proved:
            for q in sample:
                if S.contains(q) and q not in S.primes:
                    hit = bass_nonvanishing(q, i - 1, G)
                    clauses.append({"index": i, "prime": q.generator_strings(), "meets": hit, "sampled": True})
                    ok = ok and not hit
    return GSequenceReport(ok, PROVED if proved else SAMPLED, decreasing, clauses, list(sample))


def c_tilde_member(M: ModulePresentation, Y: GSequence, sample=()):
    """M in C(Y): Ass(cosyzygy_{i-1}(M)) misses Y_i for all i.  Returns (member, status)."""
    exact = _exact_class(Y.ring)
    status = PROVED
    for i, S in enumerate(Y.sets, start=1):
        if exact:
            closed = cosyzygy_ass_closed_form(M, i - 1)
            if closed.exact:
                if any(closed.meets(p) for p in S.primes):
                    return False, PROVED
                continue
            status = SAMPLED
        for p in S.primes:
            if bass_nonvanishing(p, i - 1, M):
                return False, status
        status = SAMPLED
        for q in sample:
            if S.contains(q) and bass_nonvanishing(q, i - 1, M):
                return False, SAMPLED
    return True, status


def c_tilde_truncate(Y: GSequence, j: int) -> GSequence:
    """(Y_j, ..., Y_n)."""
    if not 1 <= j <= len(Y):
        raise IndexError(f"truncation index {j} outside 1..{len(Y)}")
    return GSequence(Y.sets[j - 1:], Y.generator, Y.ring)


# point sets and Ass-defined classes ------------------------------------------------------


class PointSet:
    """An arbitrary set of primes: a finite list, or every prime of an Artinian ring."""

    def __init__(self, ring: Ring, primes=(), everything: bool = False):
        self.ring = ring
        self.everything = everything
        if everything:
            if not (is_artinian_principal(ring) or ring.is_field()):
                raise ValueError("'all primes' is only available for Artinian rings")
            primes = SpecSet.whole(ring).primes
        uniq: list = []
        for p in primes:
            if p not in uniq:
                uniq.append(p)
        self.primes = tuple(sorted(uniq, key=PrimeIdeal.sort_key))

    def contains(self, p: PrimeIdeal) -> bool:
        return p in self.primes

    def __contains__(self, p):
        return self.contains(p)

    def issubset(self, other: "PointSet") -> bool:
        return all(other.contains(p) for p in self.primes)

    def __eq__(self, other):
        return isinstance(other, PointSet) and set(self.primes) == set(other.primes)

    def __hash__(self):
        return hash(frozenset(self.primes))

    def __len__(self):
        return len(self.primes)

    def strings(self) -> list:
        return [p.generator_strings() for p in self.primes]

    def __str__(self):
        return "{" + ", ".join(str(p) for p in self.primes) + "}"


def psi_member(M: ModulePresentation, S: PointSet) -> bool:
    return all(S.contains(p) for p in ass_enumerate(M))


def phi_of_family(ms, ring: Ring | None = None) -> PointSet:
    ms = list(ms)
    if ring is None:
        if not ms:
            raise ValueError("an empty family needs the ring")
        ring = ms[0].ring
    pts = []
    for M in ms:
        pts.extend(ass_enumerate(M))
    return PointSet(ring, pts)
