"""Canonical bases of submodules of free modules S^N.

Two engines share one interface:

* ``FieldBasis``: reduced Groebner basis over k[x_1..x_n] (k = QQ or GF(p)),
  position-over-term order with component 0 largest and grevlex inside a
  component.  Buchberger's algorithm with the Gebauer-Moeller pair update and
  the normal selection strategy.
* ``IntegerBasis``: Hermite normal form over ZZ (no variables).

Both orders eliminate leading components: the basis elements whose leading
component is >= k generate the intersection with 0 (+) S^{N-k}.  Syzygy,
intersection and colon computations rely on this.
"""

from __future__ import annotations

import heapq

from .polys import (
    gkey,
    mono_div,
    mono_divides,
    mono_lcm,
    p_mul_term,
    p_scale,
    p_sub,
    v_key,
    v_lead,
)


class FieldBasis:
    """Reduced Groebner basis of a submodule of S^N over a field."""

    def __init__(self, gens, rank: int, dom, nvars: int):
        self.rank = rank
        self.dom = dom
        self.nvars = nvars
        self.elements = _reduced_groebner([tuple(g) for g in gens], dom, rank)
        self._index = _lead_index(self.elements)

    def reduce(self, v):
        return _normal_form(tuple(v), self._index, self.dom)

    def contains(self, v) -> bool:
        return not any(self.reduce(v))

    def is_unit_ideal(self) -> bool:
        return (
            self.rank == 1
            and len(self.elements) == 1
            and all(not any(m) for m in self.elements[0][0])
        )

    def key(self) -> tuple:
        return tuple(v_key(e) for e in self.elements)


class IntegerBasis:
    """Hermite normal form of a subgroup of ZZ^N, with vectors stored as polynomials in no variables."""

    def __init__(self, gens, rank: int):
        self.rank = rank
        rows = [[_int_entry(p) for p in g] for g in gens]
        self.rows = hermite_rows(rows, rank)
        self.elements = [_int_vector(r) for r in self.rows]

    def reduce(self, v):
        w = [_int_entry(p) for p in v]
        for row in self.rows:
            piv = _pivot(row)
            q = w[piv] // row[piv]
            if q:
                w = [a - q * b for a, b in zip(w, row)]
        return _int_vector(w)

    def contains(self, v) -> bool:
        return not any(self.reduce(v))

    def is_unit_ideal(self) -> bool:
        return self.rank == 1 and self.rows == [[1]]

    def key(self) -> tuple:
        return tuple(tuple(r) for r in self.rows)


def _int_entry(p: dict) -> int:
    return p.get((), 0) if p else 0


def _int_vector(row) -> tuple:
    return tuple({(): a} if a else {} for a in row)


def _pivot(row) -> int:
    for i, a in enumerate(row):
        if a:
            return i
    return -1


def hermite_rows(rows, ncols: int) -> list:
    """Row-style Hermite normal form: positive pivots, strictly increasing pivot
    columns, entries above each pivot reduced into [0, pivot)."""
    rem = [list(r) for r in rows if any(r)]
    done: list = []
    for col in range(ncols):
        while True:
            nz = [r for r in rem if r[col]]
            if len(nz) <= 1:
                break
            p = min(nz, key=lambda r: abs(r[col]))
            new = []
            for r in rem:
                if r is p or not r[col]:
                    new.append(r)
                    continue
                q = r[col] // p[col]
                r2 = [a - q * b for a, b in zip(r, p)]
                if any(r2):
                    new.append(r2)
            rem = new
        nz = [r for r in rem if r[col]]
        if not nz:
            continue
        p = nz[0]
        rem = [r for r in rem if r is not p]
        if p[col] < 0:
            p = [-a for a in p]
        for k, r in enumerate(done):
            q = r[col] // p[col]
            if q:
                done[k] = [a - q * b for a, b in zip(r, p)]
        done.append(p)
    return done


def _desc(m: tuple) -> tuple:
    return (-sum(m), tuple(reversed(m)))


def _lead_index(elements):
    """Per-component list of (lead monomial, lead coeff, element)."""
    idx: dict = {}
    for e in elements:
        comp, m, c = v_lead(e)
        idx.setdefault(comp, []).append((m, c, e))
    return idx


def _normal_form(v, index, dom):
    v = [dict(p) for p in v]
    out = [dict() for _ in v]
    for comp in range(len(v)):
        reducers = index.get(comp, ())
        p = v[comp]
        while p:
            m = max(p, key=gkey)
            c = p[m]
            for lm, lc, g in reducers:
                if mono_divides(lm, m):
                    shift = mono_div(m, lm)
                    coef = dom.norm(c * dom.inv(lc))
                    for j in range(comp, len(v)):
                        if g[j]:
                            v[j] = p_sub(v[j], p_mul_term(g[j], shift, coef, dom), dom)
                    p = v[comp]
                    break
            else:
                out[comp][m] = c
                del p[m]
                v[comp] = p
    return tuple(out)


def _monic(v, dom):
    comp, m, c = v_lead(v)
    if c == 1:
        return v
    inv = dom.inv(c)
    return tuple(p_scale(p, inv, dom) for p in v)


def _spoly(f, g, dom):
    cf, mf, af = v_lead(f)
    _, mg, ag = v_lead(g)
    lcm = mono_lcm(mf, mg)
    sf = mono_div(lcm, mf)
    sg = mono_div(lcm, mg)
    cf_ = dom.inv(af)
    cg_ = dom.inv(ag)
    return tuple(
        p_sub(p_mul_term(a, sf, cf_, dom), p_mul_term(b, sg, cg_, dom), dom)
        for a, b in zip(f, g)
    )


def _reduced_groebner(gens, dom, rank: int):
    G: list = []
    leads: list = []
    active: list = []
    heap: list = []
    pairs: set = set()

    def pair_entry(i, j):
        ci, mi = leads[i]
        lcm = mono_lcm(mi, leads[j][1])
        return (-ci, gkey(lcm), min(i, j), max(i, j)), lcm

    def update(h_idx):
        ch, mh = leads[h_idx]
        cand = []
        for i in active:
            if leads[i][0] == ch:
                cand.append((i, mono_lcm(leads[i][1], mh)))
        disjoint = {}
        for i, lcm in cand:
            disjoint[i] = rank == 1 and all(
                not (a and b) for a, b in zip(leads[i][1], mh)
            )
        kept = []
        rest = list(cand)
        while rest:
            i, lcm = rest.pop(0)
            if disjoint[i] or not any(
                mono_divides(l2, lcm) for _, l2 in rest + kept
            ):
                kept.append((i, lcm))
        # Gebauer-Moeller chain criterion on old pairs
        for key in list(pairs):
            i, j = key
            if leads[i][0] != ch:
                continue
            lcm = mono_lcm(leads[i][1], leads[j][1])
            if (
                mono_divides(mh, lcm)
                and mono_lcm(leads[i][1], mh) != lcm
                and mono_lcm(leads[j][1], mh) != lcm
            ):
                pairs.discard(key)
        for i, lcm in kept:
            if disjoint[i]:
                continue
            key = (min(i, h_idx), max(i, h_idx))
            pairs.add(key)
            entry, _ = pair_entry(*key)
            heapq.heappush(heap, entry)
        still = []
        for i in active:
            if leads[i][0] == ch and mono_divides(mh, leads[i][1]):
                continue
            still.append(i)
        still.append(h_idx)
        active[:] = still

    def add(v):
        v = _monic(v, dom)
        G.append(v)
        c, m, _ = v_lead(v)
        leads.append((c, m))
        update(len(G) - 1)

    index_cache = {"n": -1, "idx": None}

    def reduce_current(v):
        if index_cache["n"] != len(G):
            index_cache["idx"] = _lead_index(G)
            index_cache["n"] = len(G)
        return _normal_form(v, index_cache["idx"], dom)

    for g in gens:
        if not any(g):
            continue
        r = reduce_current(g)
        if any(r):
            add(r)

    while heap:
        entry = heapq.heappop(heap)
        key = (entry[2], entry[3])
        if key not in pairs:
            continue
        pairs.discard(key)
        s = _spoly(G[key[0]], G[key[1]], dom)
        r = reduce_current(s)
        if any(r):
            add(r)

    # interreduce
    minimal = []
    seen_leads = set()
    for i in sorted(range(len(G)), key=lambda i: (leads[i][0], _desc(leads[i][1]), i)):
        ci, mi = leads[i]
        if (ci, mi) in seen_leads:
            continue
        if any(
            leads[j][0] == ci and j != i and mono_divides(leads[j][1], mi) and leads[j][1] != mi
            for j in range(len(G))
        ):
            continue
        seen_leads.add((ci, mi))
        minimal.append(G[i])
    out = []
    for n, g in enumerate(minimal):
        others = minimal[:n] + minimal[n + 1:]
        idx = _lead_index(others)
        c, m, lc = v_lead(g)
        head = list({} for _ in g)
        head[c] = {m: lc}
        tail = tuple(
            p_sub(p, head[k], dom) if k == c else p for k, p in enumerate(g)
        )
        red = _normal_form(tail, idx, dom)
        red = tuple(dict(p) for p in red)
        red[c][m] = lc
        out.append(_monic(red, dom))
    out.sort(key=lambda v: (v_lead(v)[0], _desc(v_lead(v)[1])))
    return out
