"""Finitely presented modules M = R^n / (column span of the relation matrix).

All computations run in the ambient ring S (see ``kernel.rings``) with the
quotient ideal Q folded into every submodule, so a module over R = S/Q is the
S-module S^n / (relations + Q S^n).  Vectors are tuples of polynomial dicts.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .._once import new_lock, once_property
from ..errors import IllDefinedMap, IterationCap, RingMismatch
from ..kernel.ops import CHAIN_CAP, kernel_of
from ..kernel.polys import (
    p_const,
    p_format,
    p_mul,
    p_sub,
    v_add,
    v_is_zero,
    v_key,
    v_scale,
    v_unit,
)
from ..kernel.rings import Ideal, Ring, RingElement
from .smith import Euclid, smith_normal_form


def _as_poly(ring: Ring, x) -> dict:
    if isinstance(x, RingElement):
        if x.ring != ring:
            raise RingMismatch(f"{x.ring} vs {ring}")
        return x.poly
    if isinstance(x, dict):
        return ring.normal(x)
    return ring.element(x).poly


class ModulePresentation:
    """coker of a relation matrix: ``ngens`` rows, one column per relation."""

    def __init__(self, ring: Ring, ngens: int, relations=()):
        self.ring = ring
        self.ngens = ngens
        rels = []
        seen = set()
        for col in relations:
            col = tuple(_as_poly(ring, x) for x in col)
            if len(col) != ngens:
                raise ValueError(f"relation of length {len(col)} in a module with {ngens} generators")
            if v_is_zero(col):
                continue
            k = v_key(col)
            if k in seen:
                continue
            seen.add(k)
            rels.append(col)
        self.relations = tuple(rels)
        self._lock = new_lock()

    # constructors ---------------------------------------------------------

    @classmethod
    def from_rows(cls, ring: Ring, rows) -> "ModulePresentation":
        """Rows are ambient generators, columns are relations."""
        rows = [list(r) for r in rows]
        n = len(rows)
        width = max((len(r) for r in rows), default=0)
        cols = []
        for j in range(width):
            cols.append([rows[i][j] if j < len(rows[i]) else 0 for i in range(n)])
        return cls(ring, n, cols)

    @classmethod
    def free(cls, ring: Ring, n: int) -> "ModulePresentation":
        return cls(ring, n, [])

    @classmethod
    def cyclic(cls, ring: Ring, ideal) -> "ModulePresentation":
        """R/I."""
        gens = ideal.gens if isinstance(ideal, Ideal) else [ring.element(g) for g in ideal]
        return cls(ring, 1, [[g] for g in gens])

    @classmethod
    def zero(cls, ring: Ring) -> "ModulePresentation":
        return cls(ring, 0, [])

    # cached structure -----------------------------------------------------

    @once_property
    def basis(self):
        """Canonical basis of relations + Q S^n inside S^n."""
        return self.ring.make_basis(self.relations, self.ngens)

    def relation_gens(self) -> list:
        return list(self.relations) + self.ring.quotient_vectors(self.ngens)

    def vector(self, entries) -> tuple:
        return tuple(_as_poly(self.ring, x) for x in entries)

    def unit(self, i: int) -> tuple:
        return v_unit(i, self.ngens, self.ring.nvars, self.ring.dom)

    def reduce(self, v) -> tuple:
        return tuple(self.basis.reduce(v))

    def is_zero_element(self, v) -> bool:
        return self.basis.contains(v)

    def is_zero(self) -> bool:
        return all(self.is_zero_element(self.unit(i)) for i in range(self.ngens))

    @once_property
    def annihilator(self) -> Ideal:
        n = self.ngens
        if n == 0:
            return self.ring.unit_ideal()
        one = p_const(self.ring.dom.convert(1), self.ring.nvars)
        # block i of the column holds e_i
        col = []
        for i in range(n):
            for k in range(n):
                col.append(one if k == i else {})
        rels = []
        for i in range(n):
            for r in self.relation_gens():
                v = [{}] * (n * n)
                v = list(v)
                v[i * n:(i + 1) * n] = list(r)
                rels.append(tuple(v))
        gens = kernel_of(self.ring, [tuple(col)], n * n, rels)
        return Ideal(self.ring, [RingElement(self.ring, g[0]) for g in gens])

    def element_annihilator(self, v) -> Ideal:
        gens = kernel_of(self.ring, [tuple(v)], self.ngens, self.relation_gens())
        return Ideal(self.ring, [RingElement(self.ring, g[0]) for g in gens])

    # structure over principal rings -------------------------------------

    def lifted_rows(self) -> list:
        """Relation matrix with the quotient folded in, as rows."""
        cols = self.relation_gens()
        return [[c[i] for c in cols] for i in range(self.ngens)]

    def invariant_factors(self) -> list:
        """Ambient-ring factors d_i (canonical associates, units dropped) with M = (+) S/(d_i).

        Zero entries stand for free summands.  Needs a principal-class ring.
        """
        E = Euclid(self.ring)
        rows = self.lifted_rows()
        if self.ngens == 0:
            return []
        if not rows[0]:
            return [{} for _ in range(self.ngens)]
        sf = smith_normal_form(self.ring, rows)
        diag = list(sf.diagonal) + [{}] * (self.ngens - len(sf.diagonal))
        return [E.canon(d)[1] for d in diag if not E.is_unit(d)]

    def invariant_factor_strings(self) -> list:
        return [p_format(d, self.ring.variables) for d in self.invariant_factors()]

    # simplification -------------------------------------------------------

    def prune(self):
        """Eliminate generators made redundant by unit entries.

        Returns (pruned, to_new, from_new): ``to_new[i]`` is the image of old
        generator i in the pruned module, ``from_new[j]`` the old vector that
        new generator j stands for.
        """
        ring, dom = self.ring, self.ring.dom
        n = self.ngens
        rels = [list(ring.normal(p) for p in c) for c in self.relations]
        images = [list(self.unit(i)) for i in range(n)]
        alive = list(range(n))
        while True:
            pick = None
            for ri, r in enumerate(rels):
                for i in alive:
                    if _is_unit_scalar(ring, r[i]):
                        pick = (ri, i)
                        break
                if pick:
                    break
            if pick is None:
                break
            ri, i = pick
            r = rels.pop(ri)
            inv = p_const(dom.inv(r[i][(0,) * ring.nvars]), ring.nvars)
            for s in rels:
                if s[i]:
                    f = p_mul(s[i], inv, dom)
                    for k in range(n):
                        if r[k]:
                            s[k] = ring.normal(p_sub(s[k], p_mul(f, r[k], dom), dom))
            for t in images:
                if t[i]:
                    f = p_mul(t[i], inv, dom)
                    for k in range(n):
                        if r[k]:
                            t[k] = ring.normal(p_sub(t[k], p_mul(f, r[k], dom), dom))
            alive.remove(i)
        new_rels = [tuple(r[i] for i in alive) for r in rels]
        pruned = ModulePresentation(ring, len(alive), new_rels)
        to_new = [tuple(t[i] for i in alive) for t in images]
        from_new = [self.unit(i) for i in alive]
        return pruned, to_new, from_new

    # display ----------------------------------------------------------------

    def rows_display(self) -> list:
        return [
            [p_format(c[i], self.ring.variables) for c in self.relations]
            for i in range(self.ngens)
        ]

    def __str__(self):
        rows = self.rows_display()
        body = ", ".join("[" + ", ".join(r) + "]" for r in rows)
        return f"coker [{body}] over {self.ring}"

    def __repr__(self):
        return f"<ModulePresentation {self}>"


def _is_unit_scalar(ring: Ring, p: dict) -> bool:
    if not p or len(p) != 1:
        return False
    (m, c), = p.items()
    if any(m):
        return False
    if ring.engine == "int":
        return c in (1, -1)
    return True


@dataclass
class ModuleMap:
    """Homomorphism given by images of the source generators (columns in the target's ambient)."""

    source: ModulePresentation
    target: ModulePresentation
    columns: list
    check: bool = field(default=True, repr=False)

    def __post_init__(self):
        if self.source.ring != self.target.ring:
            raise RingMismatch(f"{self.source.ring} vs {self.target.ring}")
        self.columns = [tuple(_as_poly(self.target.ring, x) for x in c) for c in self.columns]
        if len(self.columns) != self.source.ngens:
            raise IllDefinedMap("need one image per source generator")
        if any(len(c) != self.target.ngens for c in self.columns):
            raise IllDefinedMap("image vectors must live in the target's ambient free module")
        if self.check:
            for r in self.source.relations:
                if not self.target.is_zero_element(self.apply(r)):
                    raise IllDefinedMap("a relation of the source does not map to zero")

    def apply(self, v) -> tuple:
        dom = self.target.ring.dom
        out = tuple({} for _ in range(self.target.ngens))
        for coeff, col in zip(v, self.columns):
            if coeff:
                out = v_add(out, v_scale(col, coeff, dom), dom)
        return tuple(self.target.ring.normal(p) for p in out)

    def compose(self, other: "ModuleMap") -> "ModuleMap":
        """self o other."""
        return ModuleMap(other.source, self.target, [self.apply(c) for c in other.columns], check=False)

    def is_zero(self) -> bool:
        return all(self.target.is_zero_element(c) for c in self.columns)

    def matrix_display(self) -> list:
        names = self.target.ring.variables
        return [[p_format(c[i], names) for c in self.columns] for i in range(self.target.ngens)]


def identity_map(M: ModulePresentation) -> ModuleMap:
    return ModuleMap(M, M, [M.unit(i) for i in range(M.ngens)], check=False)


# subquotients ---------------------------------------------------------------


def subquotient(ring: Ring, gens, relations, rank: int, prune: bool = True):
    """Present span(gens) / (span(relations) + Q S^rank), with span(relations) inside span(gens)
    modulo Q.  Returns (module, generator vectors in S^rank)."""
    gens = [tuple(g) for g in gens]
    rels = kernel_of(ring, gens, rank, relations)
    M = ModulePresentation(ring, len(gens), rels)
    if not prune:
        return M, gens
    P, _, from_new = M.prune()
    dom = ring.dom
    vecs = []
    for v in from_new:
        acc = tuple({} for _ in range(rank))
        for coeff, g in zip(v, gens):
            if coeff:
                acc = v_add(acc, v_scale(g, coeff, dom), dom)
        vecs.append(tuple(ring.normal(p) for p in acc))
    return P, vecs


def submodule(M: ModulePresentation, gens):
    """Submodule of M generated by the given ambient vectors, with its inclusion."""
    gens = [M.vector(g) for g in gens]
    N, vecs = subquotient(M.ring, gens, M.relation_gens(), M.ngens)
    return N, ModuleMap(N, M, vecs, check=False)


def quotient(M: ModulePresentation, gens):
    """M / <gens>, with the projection."""
    gens = [M.vector(g) for g in gens]
    Q = ModulePresentation(M.ring, M.ngens, list(M.relations) + gens)
    return Q, ModuleMap(M, Q, [M.unit(i) for i in range(M.ngens)], check=False)


def contains_submodule(M: ModulePresentation, big, small) -> bool:
    """Whether <small> is inside <big> + relations of M."""
    basis = M.ring.make_basis(list(big) + list(M.relations), M.ngens)
    return all(basis.contains(v) for v in small)


# combinators -----------------------------------------------------------------


def direct_sum(*modules: ModulePresentation):
    """(M_1 (+) ... (+) M_k, inclusions, projections)."""
    if not modules:
        raise ValueError("need at least one summand")
    ring = modules[0].ring
    for M in modules:
        if M.ring != ring:
            raise RingMismatch(f"{M.ring} vs {ring}")
    total = sum(M.ngens for M in modules)
    rels = []
    offsets = []
    off = 0
    for M in modules:
        offsets.append(off)
        for r in M.relations:
            v = [{}] * total
            v[off:off + M.ngens] = list(r)
            rels.append(tuple(v))
        off += M.ngens
    S = ModulePresentation(ring, total, rels)
    incs, projs = [], []
    for M, off in zip(modules, offsets):
        incs.append(ModuleMap(M, S, [S.unit(off + i) for i in range(M.ngens)], check=False))
        cols = []
        for j in range(total):
            if off <= j < off + M.ngens:
                cols.append(M.unit(j - off))
            else:
                cols.append(tuple({} for _ in range(M.ngens)))
        projs.append(ModuleMap(S, M, cols, check=False))
    return S, incs, projs


def cokernel(f: ModuleMap):
    T = f.target
    C = ModulePresentation(T.ring, T.ngens, list(T.relations) + list(f.columns))
    return C, ModuleMap(T, C, [T.unit(i) for i in range(T.ngens)], check=False)


def preimage_generators(f: ModuleMap) -> list:
    """Generators in S^{n_src} of {x : f(x) = 0 in the target}."""
    return kernel_of(f.source.ring, f.columns, f.target.ngens, f.target.relation_gens())


def kernel(f: ModuleMap):
    """ker f as a submodule of the source, with its inclusion."""
    S = f.source
    pre = preimage_generators(f)
    K, vecs = subquotient(S.ring, pre, S.relation_gens(), S.ngens)
    return K, ModuleMap(K, S, vecs, check=False)


def image(f: ModuleMap):
    T = f.target
    I, vecs = subquotient(T.ring, f.columns, T.relation_gens(), T.ngens)
    return I, ModuleMap(I, T, vecs, check=False)


def is_injective(f: ModuleMap) -> bool:
    K, _ = kernel(f)
    return K.is_zero()


def is_surjective(f: ModuleMap) -> bool:
    C, _ = cokernel(f)
    return C.is_zero()


def verify_short_exact(i: ModuleMap, p: ModuleMap) -> bool:
    """0 -> A -i-> B -p-> C -> 0 is exact."""
    if i.target is not p.source and i.target.ngens != p.source.ngens:
        return False
    if not is_injective(i) or not is_surjective(p):
        return False
    if not p.compose(i).is_zero():
        return False
    ker_gens = preimage_generators(p)
    return contains_submodule(p.source, i.columns, ker_gens)


# colon submodules and torsion ----------------------------------------------------


def colon_generators(ring: Ring, sub_gens, rank: int, ideal_polys) -> list:
    """Generators of (U :_{S^rank} J) = {x : g x in U + Q S^rank for all g in J}."""
    ideal_polys = [g for g in ideal_polys if g]
    if not ideal_polys:
        return [v_unit(i, rank, ring.nvars, ring.dom) for i in range(rank)]
    k = len(ideal_polys)
    cols = []
    for j in range(rank):
        v = [{}] * (rank * k)
        v = list(v)
        for l, g in enumerate(ideal_polys):
            v[l * rank + j] = g
        cols.append(tuple(v))
    rels = []
    base = list(sub_gens) + ring.quotient_vectors(rank)
    for l in range(k):
        for u in base:
            v = [{}] * (rank * k)
            v = list(v)
            v[l * rank:(l + 1) * rank] = list(u)
            rels.append(tuple(v))
    return kernel_of(ring, cols, rank * k, rels)


@dataclass
class TorsionPart:
    sub: ModulePresentation
    inclusion: ModuleMap
    exponent: int
    generators: list


def torsion_submodule(M: ModulePresentation, J: Ideal, cap: int = CHAIN_CAP) -> TorsionPart:
    """Gamma_J(M), the union of the chain (0 :_M J^n), with the exponent where it stabilizes."""
    ring = M.ring
    if J.ring != ring:
        raise RingMismatch(f"{J.ring} vs {ring}")
    U = M.relation_gens()
    jp = [g.poly for g in J.gens if g]
    if not jp:
        gens = [M.unit(i) for i in range(M.ngens)]
        exponent = 1
    else:
        cur = list(U)
        cur_basis = ring.make_basis(cur, M.ngens)
        exponent = 0
        for step in range(1, cap + 1):
            nxt = colon_generators(ring, cur, M.ngens, jp)
            if all(cur_basis.contains(v) for v in nxt):
                break
            cur = nxt
            cur_basis = ring.make_basis(cur, M.ngens)
            exponent = step
        else:
            raise IterationCap(f"torsion chain did not stabilize within {cap} steps")
        gens = [tuple(e) for e in cur_basis.elements]
        gens = [g for g in gens if not M.is_zero_element(g)]
    sub, vecs = subquotient(ring, gens, U, M.ngens)
    return TorsionPart(sub, ModuleMap(sub, M, vecs, check=False), exponent, vecs)


# Hom and Ext --------------------------------------------------------------------------


def _flatten_index(i: int, j: int, rows: int) -> int:
    return j * rows + i


def _cochain_kernel(ring, D_next, r_k: int, N: ModulePresentation) -> list:
    """Generators of {X in S^{n x r_k} : X D_next has columns in U_N}, X flattened column-major."""
    n = N.ngens
    size = n * r_k
    if size == 0:
        return []
    if not D_next:
        return [v_unit(i, size, ring.nvars, ring.dom) for i in range(size)]
    a = len(D_next)
    cols = []
    for j in range(r_k):
        for i in range(n):
            v = [{}] * (n * a)
            v = list(v)
            for c, d in enumerate(D_next):
                if d[j]:
                    v[c * n + i] = d[j]
            cols.append(tuple(v))
    rels = []
    for c in range(a):
        for u in N.relations:
            v = [{}] * (n * a)
            v = list(v)
            v[c * n:(c + 1) * n] = list(u)
            rels.append(tuple(v))
    return kernel_of(ring, cols, n * a, rels)


def _cochain_boundaries(ring, D_k, r_km1: int, n: int) -> list:
    """Images Y D_k for Y running over a basis of S^{n x r_{k-1}}."""
    out = []
    if not D_k:
        return out
    r_k = len(D_k)
    one = p_const(ring.dom.convert(1), ring.nvars)
    for j in range(r_km1):
        for i in range(n):
            v = [{}] * (n * r_k)
            v = list(v)
            for c, d in enumerate(D_k):
                if d[j]:
                    v[c * n + i] = p_mul(one, d[j], ring.dom)
            if any(v):
                out.append(tuple(v))
    return out


def free_resolution(M: ModulePresentation, length: int) -> list:
    """Differentials D_1, ..., D_length of a free resolution of M over R.

    D_i is a list of columns in S^{r_{i-1}} (r_0 = M.ngens).  Composites are
    checked to vanish; exactness holds because each D_{i+1} generates the
    syzygies of D_i.  Stops early once a differential is zero.
    """
    ring = M.ring
    if length < 0:
        raise ValueError("length must be >= 0")
    out = []
    prev = [tuple(c) for c in M.relations]
    rank = M.ngens
    for _ in range(length):
        if not prev:
            break
        out.append(prev)
        syz = kernel_of(ring, prev, rank, [])
        syz = [tuple(ring.normal(p) for p in v) for v in syz]
        syz = [v for v in syz if not v_is_zero(v)]
        rank = len(prev)
        for s in syz:
            comp = tuple({} for _ in range(len(prev[0])))
            for coeff, col in zip(s, prev):
                if coeff:
                    comp = v_add(comp, v_scale(col, coeff, ring.dom), ring.dom)
            if not v_is_zero(tuple(ring.normal(p) for p in comp)):
                raise AssertionError("free resolution composite is nonzero")
        prev = syz
    return out


def resolution_ranks(M: ModulePresentation, diffs) -> list:
    ranks = [M.ngens]
    for D in diffs:
        ranks.append(len(D))
    return ranks


@dataclass
class ExtModule:
    module: ModulePresentation
    generators: list  # flattened n_N x r_k matrices
    degree: int
    source: ModulePresentation
    target: ModulePresentation
    source_ranks: list = field(default_factory=list)

    def decode(self, coeffs) -> ModuleMap:
        """Degree-0 only: a Hom element (coefficients on the generators) as a module map."""
        if self.degree != 0:
            raise ValueError("only Hom elements decode to module maps")
        ring = self.module.ring
        dom = ring.dom
        n = self.target.ngens
        size = n * self.source.ngens
        acc = tuple({} for _ in range(size))
        for c, g in zip(coeffs, self.generators):
            c = _as_poly(ring, c)
            if c:
                acc = v_add(acc, v_scale(g, c, dom), dom)
        cols = [tuple(acc[j * n:(j + 1) * n]) for j in range(self.source.ngens)]
        return ModuleMap(self.source, self.target, cols)

    def generator_maps(self) -> list:
        one = self.module.ring.one
        out = []
        for k in range(len(self.generators)):
            coeffs = [one if j == k else 0 for j in range(len(self.generators))]
            out.append(self.decode(coeffs))
        return out


def ext_module(k: int, M: ModulePresentation, N: ModulePresentation) -> ExtModule:
    """Ext^k_R(M, N) as the cohomology of Hom(F, N) for a free resolution F of M."""
    if M.ring != N.ring:
        raise RingMismatch(f"{M.ring} vs {N.ring}")
    if k < 0:
        raise ValueError("degree must be >= 0")
    ring = M.ring
    diffs = free_resolution(M, k + 1)
    ranks = resolution_ranks(M, diffs)
    n = N.ngens
    if k >= len(ranks):
        Z = ModulePresentation.zero(ring)
        return ExtModule(Z, [], k, M, N, ranks)
    r_k = ranks[k]
    D_next = diffs[k] if k < len(diffs) else []
    cyc = _cochain_kernel(ring, D_next, r_k, N)
    bnd = _cochain_boundaries(ring, diffs[k - 1], ranks[k - 1], n) if k >= 1 else []
    rels = list(bnd)
    for j in range(r_k):
        for u in N.relations:
            v = [{}] * (n * r_k)
            v = list(v)
            v[j * n:(j + 1) * n] = list(u)
            rels.append(tuple(v))
    E, vecs = subquotient(ring, cyc, rels, n * r_k)
    return ExtModule(E, vecs, k, M, N, ranks)


def hom_module(M: ModulePresentation, N: ModulePresentation) -> ExtModule:
    """Hom_R(M, N) with decoding of its elements into module maps."""
    return ext_module(0, M, N)
