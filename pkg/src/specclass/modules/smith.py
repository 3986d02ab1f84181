"""Smith normal form over ZZ and k[x] (and, by working in the ambient ring, their quotients)."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import NotPID
from ..kernel.polys import (
    p_add,
    p_const,
    p_format,
    p_lead,
    p_mul,
    p_mul_term,
    p_scale,
    p_sub,
)


class Euclid:
    """Euclidean-domain operations on polynomial dicts of the ambient ring S."""

    def __init__(self, ring):
        if not ring.is_principal_class:
            raise NotPID(f"{ring} is not ZZ, ZZ/n, a field, k[x] or a quotient of one")
        self.ring = ring
        self.dom = ring.dom
        self.nvars = ring.nvars
        self.integer = ring.engine == "int"

    def one(self):
        return p_const(self.dom.convert(1), self.nvars)

    def norm(self, a: dict) -> int:
        if not a:
            return -1
        if self.integer:
            return abs(a[()])
        return max(sum(m) for m in a)

    def divmod(self, a: dict, b: dict):
        if self.integer:
            q, r = divmod(a.get((), 0), b[()])
            return ({(): q} if q else {}), ({(): r} if r else {})
        dom = self.dom
        q: dict = {}
        r = dict(a)
        mb, cb = p_lead(b)
        inv = dom.inv(cb)
        db = sum(mb)
        while r:
            mr, cr = p_lead(r)
            if sum(mr) < db:
                break
            shift = tuple(x - y for x, y in zip(mr, mb))
            c = dom.norm(cr * inv)
            q = p_add(q, {shift: c}, dom)
            r = p_sub(r, p_mul_term(b, shift, c, dom), dom)
        return q, r

    def canon(self, a: dict):
        """(unit, unit * a) with unit * a the canonical associate."""
        if not a:
            return self.one(), {}
        if self.integer:
            u = 1 if a[()] > 0 else -1
            return {(): u}, {(): a[()] * u}
        _, c = p_lead(a)
        inv = self.dom.inv(c)
        return p_const(inv, self.nvars), p_scale(a, inv, self.dom)

    def gcd(self, a: dict, b: dict) -> dict:
        while b:
            _, r = self.divmod(a, b)
            a, b = b, r
        return self.canon(a)[1]

    def is_unit(self, a: dict) -> bool:
        if not a:
            return False
        if self.integer:
            return abs(a[()]) == 1
        return self.norm(a) == 0

    def divides(self, a: dict, b: dict) -> bool:
        if not a:
            return not b
        return not self.divmod(b, a)[1]

    def fmt(self, a: dict) -> str:
        return p_format(a, self.ring.variables)


@dataclass
class SmithForm:
    """U * A * V = D with D diagonal, d_1 | d_2 | ...; entries are polynomials of the ambient ring."""

    diagonal: list
    U: list
    V: list
    D: list
    ring: object

    def invariant_factors(self) -> list:
        return [d for d in self.diagonal]

    def strings(self) -> list:
        return [p_format(d, self.ring.variables) for d in self.diagonal]


def mat_mul(A, B, dom):
    n = len(B[0]) if B else 0
    out = []
    for row in A:
        new = []
        for j in range(n):
            acc: dict = {}
            for k, a in enumerate(row):
                if a and B[k][j]:
                    acc = p_add(acc, p_mul(a, B[k][j], dom), dom)
            new.append(acc)
        out.append(new)
    return out


def identity(n: int, one: dict):
    return [[dict(one) if i == j else {} for j in range(n)] for i in range(n)]


def smith_normal_form(ring, rows) -> SmithForm:
    """Diagonalize an m x n matrix (list of rows of polynomial dicts).

    Pivot choice: smallest norm in the active block, ties broken by (row, col).
    """
    E = Euclid(ring)
    dom = E.dom
    A = [[dict(x) for x in row] for row in rows]
    m = len(A)
    n = len(A[0]) if m else 0
    U = identity(m, E.one())
    V = identity(n, E.one())

    def row_op(i, k, q):  # row_i -= q * row_k
        A[i] = [p_sub(a, p_mul(q, b, dom), dom) for a, b in zip(A[i], A[k])]
        U[i] = [p_sub(a, p_mul(q, b, dom), dom) for a, b in zip(U[i], U[k])]

    def col_op(j, k, q):  # col_j -= q * col_k
        for r in A:
            r[j] = p_sub(r[j], p_mul(q, r[k], dom), dom)
        for r in V:
            r[j] = p_sub(r[j], p_mul(q, r[k], dom), dom)

    def swap_rows(i, k):
        A[i], A[k] = A[k], A[i]
        U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        for r in A:
            r[j], r[k] = r[k], r[j]
        for r in V:
            r[j], r[k] = r[k], r[j]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if A[i][j]:
                        key = (E.norm(A[i][j]), i, j)
                        if best is None or key < best:
                            best = key
            if best is None:
                break
            _, bi, bj = best
            swap_rows(t, bi)
            swap_cols(t, bj)
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    q, r = E.divmod(A[i][t], A[t][t])
                    row_op(i, t, q)
                    dirty = dirty or bool(r)
            for j in range(t + 1, n):
                if A[t][j]:
                    q, r = E.divmod(A[t][j], A[t][t])
                    col_op(j, t, q)
                    dirty = dirty or bool(r)
            if dirty:
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if A[i][j] and not E.divides(A[t][t], A[i][j]):
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            # row_t += row_bad, then re-eliminate
            row_op(t, bad, p_const(dom.convert(-1), E.nvars))
        if A[t][t]:
            u, _ = E.canon(A[t][t])
            A[t] = [p_mul(u, a, dom) for a in A[t]]
            U[t] = [p_mul(u, a, dom) for a in U[t]]
    diag = [A[i][i] for i in range(min(m, n))]
    return SmithForm(diagonal=diag, U=U, V=V, D=A, ring=ring)


def verify_smith(ring, rows, sf: SmithForm) -> bool:
    dom = ring.dom
    if not rows or not rows[0]:
        return True
    lhs = mat_mul(mat_mul(sf.U, rows, dom), sf.V, dom)
    if lhs != sf.D:
        return False
    for i, r in enumerate(sf.D):
        for j, a in enumerate(r):
            if i != j and a:
                return False
    E = Euclid(ring)
    d = sf.diagonal
    for a, b in zip(d, d[1:]):
        if not E.divides(a, b):
            return False
    return True


def determinant(ring, M) -> dict:
    """Determinant by cofactor expansion (small matrices only; used for unimodularity checks)."""
    dom = ring.dom
    n = len(M)
    if n == 0:
        return p_const(dom.convert(1), ring.nvars)
    if n == 1:
        return dict(M[0][0])
    acc: dict = {}
    for j in range(n):
        if not M[0][j]:
            continue
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = p_mul(M[0][j], determinant(ring, minor), dom)
        acc = p_add(acc, term, dom) if j % 2 == 0 else p_sub(acc, term, dom)
    return acc
