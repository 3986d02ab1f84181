"""Ideal arithmetic and the elimination primitives shared with module code."""

from __future__ import annotations

import sympy

from ..errors import IterationCap, RingMismatch, UnsupportedRing
from .polys import gkey, mono_div, mono_divides, mono_lcm, p_const, p_mul, p_mul_term, p_sub, v_is_zero
from .rings import Ideal, Ring, RingElement

CHAIN_CAP = 64


def kernel_of(ring: Ring, cols, rank: int, relations=()) -> list:
    """Generators (in S^m) of {a : sum_j a_j cols_j in span(relations) + Q S^rank}.

    Computed by eliminating the first ``rank`` components from the module
    generated by (col_j, e_j) and (r, 0).
    """
    cols = [tuple(c) for c in cols]
    m = len(cols)
    if m == 0:
        return []
    total = rank + m
    one = ring.dom.convert(1)
    gens = []
    for j, c in enumerate(cols):
        tail = tuple(p_const(one, ring.nvars) if k == j else {} for k in range(m))
        gens.append(tuple(c) + tail)
    empty = tuple({} for _ in range(m))
    for r in relations:
        gens.append(tuple(r) + empty)
    for q in ring.quotient_vectors(rank):
        gens.append(q + empty)
    basis = ring.make_basis(gens, total, with_quotient=False)
    out = []
    for e in basis.elements:
        if v_is_zero(e[:rank]):
            out.append(tuple(ring.normal(p) for p in e[rank:]))
    return [v for v in out if not v_is_zero(v)]


def _check_same(I: Ideal, J: Ideal):
    if I.ring != J.ring:
        raise RingMismatch(f"{I.ring} vs {J.ring}")


def canonical_basis(I: Ideal) -> list:
    return I.canonical_basis()


def ideal_contains(I: Ideal, f) -> bool:
    if isinstance(f, RingElement) and f.ring != I.ring:
        raise RingMismatch(f"{f.ring} vs {I.ring}")
    return I.contains(f)


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    _check_same(I, J)
    return Ideal(I.ring, I.gens + J.gens)


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    _check_same(I, J)
    return Ideal(I.ring, [a * b for a in I.gens for b in J.gens])


def ideal_power(I: Ideal, n: int) -> Ideal:
    out = I.ring.unit_ideal()
    for _ in range(n):
        out = ideal_product(out, I)
    return out


def ideal_intersection(I: Ideal, J: Ideal) -> Ideal:
    """I cap J as the kernel of R -> R/I (+) R/J."""
    _check_same(I, J)
    ring = I.ring
    one = p_const(ring.dom.convert(1), ring.nvars)
    rels = [(g.poly, {}) for g in I.gens] + [({}, g.poly) for g in J.gens]
    gens = kernel_of(ring, [(one, one)], 2, rels)
    return Ideal(ring, [RingElement(ring, v[0]) for v in gens])


def intersect_all(ideals) -> Ideal:
    ideals = list(ideals)
    if not ideals:
        raise ValueError("empty intersection")
    out = ideals[0]
    for J in ideals[1:]:
        out = ideal_intersection(out, J)
    return out


def ideal_quotient(I: Ideal, J: Ideal) -> Ideal:
    """(I : J) = {f : f J in I}."""
    _check_same(I, J)
    ring = I.ring
    jg = [g.poly for g in J.gens if g]
    if not jg:
        return ring.unit_ideal()
    k = len(jg)
    rels = []
    for i in range(k):
        for g in I.gens:
            rels.append(tuple(g.poly if t == i else {} for t in range(k)))
    gens = kernel_of(ring, [tuple(jg)], k, rels)
    return Ideal(ring, [RingElement(ring, v[0]) for v in gens])


def saturation(I: Ideal, J: Ideal, cap: int = CHAIN_CAP):
    """(I : J^infinity) and the exponent at which the chain (I : J^n) stabilizes."""
    _check_same(I, J)
    if J.is_zero():
        raise ValueError("saturation needs a nonzero ideal J")
    cur = I
    for n in range(1, cap + 1):
        nxt = ideal_quotient(cur, J)
        if nxt == cur:
            return cur, n - 1
        cur = nxt
    raise IterationCap(f"saturation did not stabilize within {cap} steps")


def radical_contains(I: Ideal, f) -> bool:
    """Whether f lies in the radical of I."""
    ring = I.ring
    f = ring.element(f)
    if f.is_zero():
        return True
    ring.require_engine()
    if ring.engine == "int":
        (g,) = [e[0].get((), 0) for e in I.basis.elements] or [0]
        a = f.poly.get((), 0)
        if g == 0:
            return a == 0
        return all(a % p == 0 for p in sympy.primefactors(g))
    t = "_t"
    while t in ring.variables:
        t += "_"
    ext = ring.extend(t)
    lift = lambda p: {m + (0,): c for m, c in p.items()}
    one = p_const(ring.dom.convert(1), ext.nvars)
    tvar = {(0,) * ring.nvars + (1,): ring.dom.convert(1)}
    rab = p_sub(one, p_mul(tvar, lift(f.poly), ring.dom), ring.dom)
    gens = [(lift(g.poly),) for g in I.gens] + [(rab,)]
    return ext.make_basis(gens, 1).is_unit_ideal()


def bounded_radical_contains(I: Ideal, f, bound: int = 8) -> bool:
    """Brute force: some f^k with k <= bound lies in I."""
    f = I.ring.element(f)
    p = I.ring.one
    for _ in range(bound):
        p = p * f
        if I.contains(p):
            return True
    return False


def elimination_saturation(I: Ideal, g) -> Ideal:
    """(I : g^infinity) as (I S[t] + (1 - t g)) cap S, by elimination of t.

    Independent of the iterated-quotient route; used as an oracle.
    """
    ring = I.ring
    g = ring.element(g)
    if ring.engine != "field":
        raise UnsupportedRing("elimination saturation is implemented over fields")
    t = "_t"
    while t in ring.variables:
        t += "_"
    ext = ring.extend(t)
    lift = lambda p: {m + (0,): c for m, c in p.items()}
    one = p_const(ring.dom.convert(1), ext.nvars)
    tvar = {(0,) * ring.nvars + (1,): ring.dom.convert(1)}
    rab = p_sub(one, p_mul(tvar, lift(g.poly), ring.dom), ring.dom)
    basis = _lex_t_basis(
        ext, [lift(h.poly) for h in I.gens] + [lift(q) for q in ring.quotient_polys] + [rab]
    )
    out = []
    for e in basis:
        if all(m[-1] == 0 for m in e):
            out.append(RingElement(ring, {m[:-1]: c for m, c in e.items()}))
    return Ideal(ring, out)


def _lex_t_basis(ext: Ring, polys) -> list:
    """Unreduced Groebner basis for the block order (deg_t first, then grevlex)."""
    dom = ext.dom

    def key(m):
        return (m[-1], gkey(m[:-1]))

    def lead(p):
        m = max(p, key=key)
        return m, p[m]

    def reduce(f, G):
        f = dict(f)
        r = {}
        while f:
            m, c = lead(f)
            for g in G:
                lm, lc = lead(g)
                if mono_divides(lm, m):
                    f = p_sub(f, p_mul_term(g, mono_div(m, lm), dom.norm(c * dom.inv(lc)), dom), dom)
                    break
            else:
                r[m] = c
                del f[m]
        return r

    G = []
    for p in polys:
        p = reduce(p, G)
        if p:
            G.append(p)
    pairs = [(i, j) for i in range(len(G)) for j in range(i)]
    while pairs:
        i, j = pairs.pop(0)
        (mi, ci), (mj, cj) = lead(G[i]), lead(G[j])
        L = mono_lcm(mi, mj)
        s = p_sub(
            p_mul_term(G[i], mono_div(L, mi), dom.inv(ci), dom),
            p_mul_term(G[j], mono_div(L, mj), dom.inv(cj), dom),
            dom,
        )
        s = reduce(s, G)
        if s:
            G.append(s)
            pairs.extend((len(G) - 1, k) for k in range(len(G) - 1))
    return G
