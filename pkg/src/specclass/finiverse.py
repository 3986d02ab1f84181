"""Bounded universes of finite modules over Artinian principal rings.

Over ZZ/n and F_p[x]/(x^k) every finitely generated module is a direct sum of
cyclic modules R/(pi^j), so an isomorphism class is a partition per prime.  The
relations used by the closure computations (subobjects, quotients, extensions,
cokernels, essential extensions, the subquotient order) are decided from these
partitions, and each rule is compared once against a raw search over explicit
element tables of the small modules before it is used.
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass, field
from functools import lru_cache

import sympy

from .errors import ExplosionGuard, UnsupportedRing
from .kernel.rings import Ring
from .modules.presentation import ModulePresentation
from .spectrum import AUTO, PrimeIdeal

DEFAULT_BOUND = 144
FAMILY_CAP = 2 ** 20
GATE_BOUND = 32

SUB, QUOT, EXT, COKER, SUM, ESS = "sub", "quot", "ext", "coker", "sum", "ess"


# partitions and Littlewood-Richardson coefficients ------------------------------------------


def partitions_upto(total: int, largest: int):
    """All partitions of n <= total with parts <= largest, as descending tuples."""
    out = []

    def rec(remaining, maxpart, prefix):
        out.append(tuple(prefix))
        for part in range(min(remaining, maxpart), 0, -1):
            prefix.append(part)
            rec(remaining - part, part, prefix)
            prefix.pop()

    rec(total, largest, [])
    return out


def contains(lam: tuple, mu: tuple) -> bool:
    """Young diagram of mu inside that of lam."""
    if len(mu) > len(lam):
        return False
    return all(m <= l for m, l in zip(mu, lam))


@lru_cache(maxsize=None)
def lr_coefficient(lam: tuple, mu: tuple, nu: tuple) -> int:
    """Number of Littlewood-Richardson tableaux of shape lam/mu and content nu."""
    if sum(lam) != sum(mu) + sum(nu) or not contains(lam, mu) or not contains(lam, nu):
        return 0
    if not nu:
        return 1
    mu_p = list(mu) + [0] * (len(lam) - len(mu))
    k = len(nu)
    total = 0

    def fill(r, above: dict, counts: list):
        nonlocal total
        if r == len(lam):
            if counts == list(nu):
                total += 1
            return
        start, stop = mu_p[r], lam[r]
        length = stop - start
        for seq in itertools.combinations_with_replacement(range(1, k + 1), length):
            ok = True
            for c, v in zip(range(start, stop), seq):
                if c in above and v <= above[c]:
                    ok = False
                    break
            if not ok:
                continue
            cnt = list(counts)
            for v in reversed(seq):
                cnt[v - 1] += 1
                if cnt[v - 1] > nu[v - 1] or (v > 1 and cnt[v - 1] > cnt[v - 2]):
                    ok = False
                    break
            if not ok:
                continue
            fill(r + 1, dict(zip(range(start, stop), seq)), cnt)

    fill(0, {}, [0] * k)
    return total


# the rings -------------------------------------------------------------------------------------


@dataclass(frozen=True)
class LocalFactor:
    label: str  # "2" or "x"
    q: int  # residue field size
    e: int  # nilpotency index of the maximal ideal in this factor
    value: int  # the integer p, or 0 for the variable x


class ArtinianRing:
    """ZZ/n or F_p[x]/(x^k), split into its local factors."""

    def __init__(self, ring: Ring):
        self.ring = ring
        if ring.engine == "int" and ring.base == "ZZ/" and not ring.variables:
            n = ring.modulus
            facs = sympy.factorint(n)
            self.kind = "int"
            self.factors = tuple(LocalFactor(str(p), p, e, p) for p, e in sorted(facs.items()))
            self.char = n
        elif ring.engine == "field" and ring.nvars == 1 and ring.base in ("GF", "ZZ/"):
            pre = [e[0] for e in ring.qbasis.elements]
            if len(pre) != 1 or len(pre[0]) != 1:
                raise UnsupportedRing(f"{ring}: expected F_p[x]/(x^k)")
            ((mono, _),) = pre[0].items()
            if mono[0] < 1:
                raise UnsupportedRing(f"{ring}: expected F_p[x]/(x^k)")
            self.kind = "poly"
            self.factors = (LocalFactor(ring.variables[0], ring.modulus, mono[0], 0),)
            self.char = ring.modulus
        else:
            raise UnsupportedRing(f"{ring} is not ZZ/n or F_p[x]/(x^k)")

    def prime(self, i: int) -> PrimeIdeal:
        f = self.factors[i]
        gen = f.value if self.kind == "int" else f.label
        return PrimeIdeal(self.ring.ideal(gen), AUTO)

    def primes(self) -> list:
        return [self.prime(i) for i in range(len(self.factors))]

    def cyclic_label(self, i: int, j: int) -> str:
        f = self.factors[i]
        if self.kind == "int":
            return f"Z/{f.value ** j}"
        return f"R/({f.label}^{j})" if j > 1 else f"R/({f.label})"


# classes ---------------------------------------------------------------------------------------


@dataclass(frozen=True)
class ModuleClass:
    """Isomorphism class: one partition (descending exponents) per local factor."""

    parts: tuple

    def size(self, R: ArtinianRing) -> int:
        out = 1
        for f, lam in zip(R.factors, self.parts):
            out *= f.q ** sum(lam)
        return out

    def label(self, R: ArtinianRing) -> str:
        pieces = [R.cyclic_label(i, j) for i, lam in enumerate(self.parts) for j in lam]
        return "+".join(pieces) if pieces else "0"

    def is_zero(self) -> bool:
        return not any(self.parts)

    def ass(self) -> tuple:
        """Indices of local factors where the class is nonzero (its associated primes)."""
        return tuple(i for i, lam in enumerate(self.parts) if lam)

    def presentation(self, R: ArtinianRing) -> ModulePresentation:
        ring = R.ring
        rels = []
        for i, lam in enumerate(self.parts):
            f = R.factors[i]
            for j in lam:
                rels.append(f.value ** j if R.kind == "int" else f"{f.label}^{j}")
        rows = [[0] * len(rels) for _ in rels]
        for k, r in enumerate(rels):
            rows[k][k] = r
        return ModulePresentation.from_rows(ring, rows)


def direct_sum_class(a: ModuleClass, b: ModuleClass) -> ModuleClass:
    return ModuleClass(tuple(tuple(sorted(x + y, reverse=True)) for x, y in zip(a.parts, b.parts)))


# universes ---------------------------------------------------------------------------------------


@dataclass
class FiniteUniverse:
    ring: ArtinianRing
    bound: int
    classes: list
    index: dict = field(default_factory=dict)

    def __post_init__(self):
        self.index = {c: i for i, c in enumerate(self.classes)}
        self._tables: dict = {}
        self._lock = threading.RLock()

    def __len__(self):
        return len(self.classes)

    def labels(self) -> list:
        return [c.label(self.ring) for c in self.classes]

    def spectrum(self) -> list:
        return self.ring.primes()

    def size(self, i: int) -> int:
        return self.classes[i].size(self.ring)

    # relation tables (computed once) -------------------------------------------------------------

    def table(self, name: str):
        with self._lock:
            if name not in self._tables:
                self._tables[name] = getattr(self, "_build_" + name)()
            return self._tables[name]

    def _build_sub(self):
        out = []
        for c in self.classes:
            out.append(frozenset(i for i, d in enumerate(self.classes)
                                 if all(contains(l, m) for l, m in zip(c.parts, d.parts))))
        return out

    def _build_quot(self):
        # finite modules over these rings are self-dual, so quotient types are the sub types
        return self._build_sub()

    def _build_ext(self):
        """(a, c) -> classes E with a submodule of type a and quotient of type c."""
        out = {}
        n = len(self.classes)
        by_size: dict = {}
        for i in range(n):
            by_size.setdefault(self.size(i), []).append(i)
        for a in range(n):
            for c in range(n):
                s = self.size(a) * self.size(c)
                hits = []
                for e in by_size.get(s, []):
                    E = self.classes[e]
                    if all(lr_coefficient(l, m, v) > 0 for l, m, v in
                           zip(E.parts, self.classes[a].parts, self.classes[c].parts)):
                        hits.append(e)
                out[(a, c)] = frozenset(hits)
        return out

    def _build_coker(self):
        """(n, m) -> cokernel types of maps from class n to class m."""
        subs = self.table("sub")
        out = {}
        k = len(self.ring.factors)
        for a in range(len(self.classes)):
            for b in range(len(self.classes)):
                per_prime = []
                for i in range(k):
                    lam_m = self.classes[b].parts[i]
                    images = [self.classes[t].parts[i] for t in subs[a]]
                    images = set(images)
                    cok = set()
                    for tau in images:
                        for nu in partitions_upto(sum(lam_m) - sum(tau), self.ring.factors[i].e):
                            if sum(nu) == sum(lam_m) - sum(tau) and lr_coefficient(lam_m, tau, nu) > 0:
                                cok.add(nu)
                    per_prime.append(cok)
                hits = []
                for combo in itertools.product(*per_prime):
                    c = ModuleClass(tuple(combo))
                    if c in self.index:
                        hits.append(self.index[c])
                out[(a, b)] = frozenset(hits)
        return out

    def _build_sum(self):
        out = {}
        for a, A in enumerate(self.classes):
            for b, B in enumerate(self.classes):
                out[(a, b)] = self.index.get(direct_sum_class(A, B))
        return out

    def _build_ess(self):
        """n -> classes M containing a copy of n as an essential submodule."""
        out = []
        for N in self.classes:
            hits = []
            for j, M in enumerate(self.classes):
                if all(contains(l, m) and len(l) == len(m) for l, m in zip(M.parts, N.parts)):
                    hits.append(j)
            out.append(frozenset(hits))
        return out

    def _build_prec(self):
        """X < Y: ann(Y) inside ann(X), factor by factor."""
        out = {}
        for a, X in enumerate(self.classes):
            for b, Y in enumerate(self.classes):
                out[(a, b)] = all((max(x) if x else 0) <= (max(y) if y else 0)
                                  for x, y in zip(X.parts, Y.parts))
        return out


def enumerate_universe(ring: Ring, bound: int = DEFAULT_BOUND) -> FiniteUniverse:
    R = ArtinianRing(ring)
    per = []
    for f in R.factors:
        top = 0
        while f.q ** (top + 1) <= bound:
            top += 1
        per.append([lam for lam in partitions_upto(top, f.e)])
    classes = []
    for combo in itertools.product(*per):
        c = ModuleClass(tuple(combo))
        if c.size(R) <= bound:
            classes.append(c)
    classes.sort(key=lambda c: (c.size(R), c.label(R)))
    return FiniteUniverse(R, bound, classes)


# explicit modules and raw searches ------------------------------------------------------------------


class ExplicitModule:
    """Element table of a finite module: tuples with coordinatewise arithmetic."""

    def __init__(self, R: ArtinianRing, cls: ModuleClass):
        self.R = R
        self.cls = cls
        if R.kind == "int":
            self.moduli = []
            for f, lam in zip(R.factors, cls.parts):
                self.moduli.extend(f.value ** j for j in lam)
            self.blocks = []
        else:
            f = R.factors[0]
            self.moduli = [f.q] * sum(cls.parts[0])
            self.blocks = list(cls.parts[0])
        self.elements = [tuple(v) for v in itertools.product(*[range(m) for m in self.moduli])]
        self.zero = tuple(0 for _ in self.moduli)

    def add(self, a, b):
        return tuple((x + y) % m for x, y, m in zip(a, b, self.moduli))

    def pi(self, a, i: int):
        """Multiply by the uniformizer of local factor i."""
        if self.R.kind == "int":
            p = self.R.factors[i].value
            return tuple((p * x) % m for x, m in zip(a, self.moduli))
        out = []
        pos = 0
        for j in self.blocks:
            block = a[pos:pos + j]
            out.extend((0,) + block[:-1])
            pos += j
        return tuple(out)

    def pi_power(self, a, i: int, k: int):
        for _ in range(k):
            a = self.pi(a, i)
        return a

    def closure(self, gens) -> frozenset:
        """Submodule generated by gens: the additive span of all pi-iterates."""
        span = set()
        for g in gens:
            while g not in span and g != self.zero:
                span.add(g)
                if self.R.kind != "poly":
                    break
                g = self.pi(g, 0)
        out = {self.zero}
        for g in span:
            if g in out:
                continue
            layer = set(out)
            h = g
            while h not in out:
                layer |= {self.add(h, x) for x in out}
                h = self.add(h, g)
            out = layer
        return frozenset(out)

    def submodules(self) -> list:
        zero = frozenset([self.zero])
        found = {zero}
        queue = [zero]
        while queue:
            N = queue.pop()
            for g in self.elements:
                if g in N:
                    continue
                M = self.closure(list(N) + [g])
                if M not in found:
                    found.add(M)
                    queue.append(M)
        return sorted(found, key=lambda s: (len(s), sorted(s)))

    def subquotient_class(self, N: frozenset, L: frozenset) -> ModuleClass:
        """Type of N / L for submodules L inside N."""
        parts = []
        for i, f in enumerate(self.R.factors):
            sizes = [len(L)]
            for k in range(1, f.e + 1):
                sizes.append(sum(1 for m in N if self.pi_power(m, i, k) in L))
            # sizes[k] / |L| = q^(sum of min(part, k))
            logs = [round(_log(s // len(L), f.q)) for s in sizes]
            conj = [logs[k] - logs[k - 1] for k in range(1, len(logs))]
            lam = []
            for j in range(1, f.e + 1):
                c_j = conj[j - 1]
                c_next = conj[j] if j < len(conj) else 0
                lam.extend([j] * (c_j - c_next))
            parts.append(tuple(sorted(lam, reverse=True)))
        return ModuleClass(tuple(parts))


def _log(x: int, q: int) -> float:
    k = 0
    while x > 1:
        x //= q
        k += 1
    return k


def direct_power(R: ArtinianRing, cls: ModuleClass, m: int) -> ModuleClass:
    out = ModuleClass(tuple(() for _ in R.factors))
    for _ in range(m):
        out = direct_sum_class(out, cls)
    return out


def raw_relations(U: FiniteUniverse, bound: int = GATE_BOUND) -> dict:
    """Relations among classes of size <= bound, by search over element tables."""
    R = U.ring
    small = [i for i in range(len(U)) if U.size(i) <= bound]
    sub, quot, ext, ess = {}, {}, set(), {}
    sub_lists = {}
    for e in small:
        X = ExplicitModule(R, U.classes[e])
        subs = X.submodules()
        sub_lists[e] = (X, subs)
        full = frozenset(X.elements)
        zero = frozenset([X.zero])
        sub_types, quot_types, ess_types = set(), set(), set()
        simples = [S for S in subs if len(S) > 1 and not any(T != zero and T < S for T in subs)]
        for N in subs:
            a = U.index[X.subquotient_class(N, zero)]
            c = U.index[X.subquotient_class(full, N)]
            sub_types.add(a)
            quot_types.add(c)
            ext.add((a, c, e))
            if all(S <= N for S in simples):
                ess_types.add(a)
        sub[e] = frozenset(sub_types)
        quot[e] = frozenset(quot_types)
        ess[e] = frozenset(ess_types)
    coker = {}
    for a in small:
        qa = quot[a]
        for b in small:
            X, subs = sub_lists[b]
            full = frozenset(X.elements)
            zero = frozenset([X.zero])
            hits = set()
            for L in subs:
                if U.index[X.subquotient_class(L, zero)] in qa:
                    hits.add(U.index[X.subquotient_class(full, L)])
            coker[(a, b)] = frozenset(hits)
    prec = {}
    for a in small:
        A = U.classes[a]
        m = max(1, sum(len(lam) for lam in A.parts))
        for b in small:
            W = direct_power(R, U.classes[b], m)
            if W.size(R) > bound:
                continue
            X = ExplicitModule(R, W)
            subs = X.submodules()
            found = False
            for N in subs:
                for L in subs:
                    if L <= N and X.subquotient_class(N, L) == A:
                        found = True
                        break
                if found:
                    break
            prec[(a, b)] = found
    return {"small": small, "sub": sub, "quot": quot, "ext": ext, "ess": ess, "coker": coker, "prec": prec}


class GateMismatch(AssertionError):
    pass


def gate_fast_paths(U: FiniteUniverse, bound: int = GATE_BOUND) -> dict:
    """Compare every fast rule with raw search on the classes of size <= bound.

    Raises GateMismatch on any difference; returns a summary of what was compared.
    """
    raw = raw_relations(U, bound)
    small = set(raw["small"])
    subs, quots, ess = U.table("sub"), U.table("quot"), U.table("ess")
    ext, coker, prec = U.table("ext"), U.table("coker"), U.table("prec")
    checked = {"classes": len(small), "sub": 0, "quot": 0, "ext": 0, "ess": 0, "coker": 0, "prec": 0}
    for e in small:
        fast_sub = {i for i in subs[e]}
        if fast_sub != set(raw["sub"][e]):
            raise GateMismatch(f"subobject rule differs at {U.classes[e].label(U.ring)}")
        if set(quots[e]) != set(raw["quot"][e]):
            raise GateMismatch(f"quotient rule differs at {U.classes[e].label(U.ring)}")
        fast_ess = {i for i in small if e in ess[i]}
        if fast_ess != set(raw["ess"][e]):
            raise GateMismatch(f"essential-extension rule differs at {U.classes[e].label(U.ring)}")
        checked["sub"] += 1
        checked["quot"] += 1
        checked["ess"] += 1
    fast_ext = {(a, c, e) for (a, c), es in ext.items() for e in es if e in small}
    if fast_ext != raw["ext"]:
        diff = sorted(fast_ext ^ raw["ext"])[:3]
        raise GateMismatch(f"extension rule differs: {diff}")
    checked["ext"] = len(fast_ext)
    for key, hits in raw["coker"].items():
        if set(coker[key]) != set(hits):
            raise GateMismatch(f"cokernel rule differs at {key}")
        checked["coker"] += 1
    for key, val in raw["prec"].items():
        if prec[key] != val:
            raise GateMismatch(f"subquotient order differs at {key}")
        checked["prec"] += 1
    return checked


_GATES: dict = {}
_GATE_LOCK = threading.Lock()


def gated(U: FiniteUniverse) -> dict:
    """Run the gate once per ring (on a universe of size GATE_BOUND)."""
    key = str(U.ring.ring)
    with _GATE_LOCK:
        if key not in _GATES:
            small = U if U.bound == GATE_BOUND else enumerate_universe(U.ring.ring, GATE_BOUND)
            _GATES[key] = gate_fast_paths(small)
        return _GATES[key]


# relations between classes ----------------------------------------------------------------------------


def brute_subquotient(U: FiniteUniverse, x: int, y: int, raw: bool = False) -> bool:
    """Class x is a subquotient of a finite direct sum of copies of class y."""
    if raw:
        rel = raw_relations(U)["prec"]
        if (x, y) not in rel:
            raise ValueError("raw search only covers pairs whose direct powers stay within the gate bound")
        return rel[(x, y)]
    gated(U)
    return U.table("prec")[(x, y)]


def brute_equiv(U: FiniteUniverse, x: int, y: int, raw: bool = False) -> bool:
    return brute_subquotient(U, x, y, raw) and brute_subquotient(U, y, x, raw)


# closures --------------------------------------------------------------------------------------------


@dataclass(frozen=True)
class ClosedFamily:
    members: frozenset
    ops: frozenset

    def labels(self, U: FiniteUniverse) -> list:
        return [U.classes[i].label(U.ring) for i in sorted(self.members)]


def close_family(U: FiniteUniverse, seed, ops) -> ClosedFamily:
    """Least family containing the seed and stable under the flagged operations (within U)."""
    gated(U)
    ops = frozenset(ops)
    fam = set(seed)
    subs, quots, ess = U.table("sub"), U.table("quot"), U.table("ess")
    ext = U.table("ext") if EXT in ops else None
    cok = U.table("coker") if COKER in ops else None
    sums = U.table("sum") if SUM in ops else None
    work = list(fam)
    while work:
        a = work.pop()
        new = set()
        if SUB in ops:
            new |= subs[a]
        if QUOT in ops:
            new |= quots[a]
        if ESS in ops:
            new |= ess[a]
        for b in list(fam):
            for x, y in ((a, b), (b, a)):
                if ext is not None:
                    new |= ext[(x, y)]
                if cok is not None:
                    new |= cok[(x, y)]
                if sums is not None and sums[(x, y)] is not None:
                    new.add(sums[(x, y)])
        if ext is not None:
            new |= ext[(a, a)]
        if cok is not None:
            new |= cok[(a, a)]
        if sums is not None and sums[(a, a)] is not None:
            new.add(sums[(a, a)])
        for n in new - fam:
            fam.add(n)
            work.append(n)
    return ClosedFamily(frozenset(fam), ops)


def is_closed(U: FiniteUniverse, members, ops) -> bool:
    return close_family(U, members, ops).members == frozenset(members)


def all_closed_families(U: FiniteUniverse, ops, cap: int = FAMILY_CAP) -> list:
    """Every family stable under ``ops`` that contains the zero module."""
    zero = U.index[ModuleClass(tuple(() for _ in U.ring.factors))]
    start = close_family(U, [zero], ops).members
    seen = {start}
    queue = [start]
    while queue:
        F = queue.pop()
        for c in range(len(U)):
            if c in F:
                continue
            G = close_family(U, F | {c}, ops).members
            if G not in seen:
                seen.add(G)
                if len(seen) > cap:
                    raise ExplosionGuard(f"more than {cap} closed families")
                queue.append(G)
    return sorted(seen, key=lambda s: (len(s), sorted(s)))


# theorems ------------------------------------------------------------------------------------------------


def _subsets(n: int) -> list:
    return [frozenset(c) for r in range(n + 1) for c in itertools.combinations(range(n), r)]


def _supp(U: FiniteUniverse, members) -> frozenset:
    out = set()
    for i in members:
        out.update(U.classes[i].ass())
    return frozenset(out)


def _supp_inverse(U: FiniteUniverse, S: frozenset) -> frozenset:
    return frozenset(i for i, c in enumerate(U.classes) if set(c.ass()) <= S)


def _prime_strings(U: FiniteUniverse, S) -> list:
    return [U.ring.prime(i).generator_strings() for i in sorted(S)]


def verify_bijection(theorem: str, U: FiniteUniverse, cap: int = FAMILY_CAP) -> dict:
    """Exhaustive check of a classification theorem inside the universe."""
    gate = gated(U)
    nprimes = len(U.ring.factors)
    # every prime is maximal, so every subset of the spectrum is specialization closed
    subsets = _subsets(nprimes)
    counterexamples = []
    matching = []
    extra = {}
    if theorem in ("p3_9", "p5corr"):
        ops = {SUB, QUOT, EXT} if theorem == "p3_9" else {SUB, QUOT, EXT, SUM}
        fams = all_closed_families(U, ops, cap)
        images = {}
        for S in subsets:
            F = _supp_inverse(U, S)
            if not is_closed(U, F, ops):
                counterexamples.append({"set": _prime_strings(U, S), "reason": "Supp^-1(S) is not closed"})
            if _supp(U, F) != S:
                counterexamples.append({"set": _prime_strings(U, S), "reason": "Supp(Supp^-1(S)) != S"})
            images[S] = F
            matching.append({"set": _prime_strings(U, S), "family": [U.classes[i].label(U.ring) for i in sorted(F)]})
        for F in fams:
            if _supp_inverse(U, _supp(U, F)) != F:
                counterexamples.append({"family": [U.classes[i].label(U.ring) for i in sorted(F)],
                                        "reason": "family is not Supp^-1 of its support"})
        lhs, rhs = len(subsets), len(fams)
        bij = not counterexamples and set(images.values()) == set(fams) and len(set(images.values())) == lhs
    elif theorem == "ashah":
        narrow = all_closed_families(U, {EXT, COKER}, cap)
        serre = all_closed_families(U, {SUB, QUOT, EXT}, cap)
        for F in narrow:
            if not is_closed(U, F, {SUB, QUOT, EXT}):
                counterexamples.append({"family": [U.classes[i].label(U.ring) for i in sorted(F)],
                                        "reason": "closed under extensions and cokernels but not Serre"})
        for F in serre:
            if not is_closed(U, F, {EXT, COKER}):
                counterexamples.append({"family": [U.classes[i].label(U.ring) for i in sorted(F)],
                                        "reason": "Serre but not closed under cokernels"})
        for F in narrow:
            matching.append({"set": _prime_strings(U, _supp(U, F)),
                             "family": [U.classes[i].label(U.ring) for i in sorted(F)]})
        lhs, rhs = len(serre), len(narrow)
        bij = not counterexamples and set(narrow) == set(serre)
    elif theorem == "dr9_4":
        ops = {SUB, SUM, ESS}
        fams = all_closed_families(U, ops, cap)
        images = {}
        for S in subsets:
            F = _supp_inverse(U, S)  # Ass of a nonzero class is its set of primes
            if not is_closed(U, F, ops):
                counterexamples.append({"set": _prime_strings(U, S), "reason": "Psi(S) is not closed"})
            if _supp(U, F) != S:
                counterexamples.append({"set": _prime_strings(U, S), "reason": "Phi(Psi(S)) != S"})
            images[S] = F
            matching.append({"set": _prime_strings(U, S), "family": [U.classes[i].label(U.ring) for i in sorted(F)]})
        for F in fams:
            if _supp_inverse(U, _supp(U, F)) != F:
                counterexamples.append({"family": [U.classes[i].label(U.ring) for i in sorted(F)],
                                        "reason": "Psi(Phi(family)) != family"})
        lemma91 = lemma_9_1_failures(U, fams)
        counterexamples.extend(lemma91)
        extra["lemma_9_1_checked"] = len(fams)
        lhs, rhs = len(subsets), len(fams)
        bij = not counterexamples and set(images.values()) == set(fams) and len(set(images.values())) == lhs
    else:
        raise ValueError(f"unknown theorem {theorem!r}")
    report = {
        "theorem": theorem,
        "ring": str(U.ring.ring),
        "bound": U.bound,
        "universe_size": len(U),
        "spectrum": _prime_strings(U, range(nprimes)),
        "lhs": lhs,
        "rhs": rhs,
        "bijection": bool(bij),
        "matching": matching,
        "counterexamples": counterexamples,
        "gate": gate,
    }
    report.update(extra)
    return report


def lemma_9_1_failures(U: FiniteUniverse, fams) -> list:
    """If one class with Ass = {p} lies in a family, all such classes do."""
    out = []
    by_ass: dict = {}
    for i, c in enumerate(U.classes):
        a = c.ass()
        if len(a) == 1:
            by_ass.setdefault(a[0], set()).add(i)
    for F in fams:
        for p, group in by_ass.items():
            if F & group and not group <= F:
                out.append({"family": [U.classes[i].label(U.ring) for i in sorted(F)],
                            "prime": U.ring.prime(p).generator_strings(),
                            "reason": "family meets but does not contain the classes with Ass = {p}"})
    return out


def essential_pairs_ass_failures(U: FiniteUniverse) -> list:
    """Pairs N inside M essential whose associated primes differ."""
    ess = U.table("ess")
    out = []
    for n, targets in enumerate(ess):
        for m in targets:
            if U.classes[n].ass() != U.classes[m].ass():
                out.append((n, m))
    return out


def bound_sensitivity(theorem: str, ring: Ring, bound: int) -> dict:
    """Re-run at twice the bound and compare the counts."""
    a = verify_bijection(theorem, enumerate_universe(ring, bound))
    b = verify_bijection(theorem, enumerate_universe(ring, 2 * bound))
    return {"bound": bound, "counts": [a["lhs"], a["rhs"]], "double_bound_counts": [b["lhs"], b["rhs"]],
            "stable": (a["lhs"], a["rhs"], a["bijection"]) == (b["lhs"], b["rhs"], b["bijection"])}
