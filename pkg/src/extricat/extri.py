"""Extriangulated structure on top of a spectroid.

An `Instance` packages a spectroid with an extension bifunctor given by
tables (dimensions of E(c, a) on indecomposables plus action matrices
for every Hom basis element), a realization oracle for connected
extension classes, designated projectives/injectives with cover and
envelope oracles, and deflation/inflation rules.

`realize` extends the oracle additively: the class is split into
connected components of its block-support graph, isolated summands
produce split conflations, and the pieces are reassembled in the
original summand order.  The axiom checker verifies the bifunctor laws,
realization additivity, completion of commuting squares, gluing of
composable conflations, the factorization criterion for morphisms of
conflations, and six-term exactness, all within explicit bounds.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .errors import (
    NoCompletion,
    NoProjectives,
    RealizationMissing,
    SearchExhausted,
    StableEqualityFails,
)
from .fincat import (
    Mor,
    Obj,
    Spectroid,
    Subcat,
    compose,
    factor_left,
    factor_right,
    hom_basis,
    hom_dim,
    ideal_subspace,
    opposite_spectroid,
    postcompose_matrix,
    precompose_matrix,
)
from .linalg import kernel_basis, rank, solve_right, zeros

__all__ = [
    "ExtTables",
    "ExtElem",
    "Conflation",
    "STriangle",
    "Instance",
    "mor_is_iso",
    "mor_inverse",
    "equivalent_conflations",
    "complete_morphism",
    "et4_glue",
    "et4op_glue",
    "ET4Data",
    "deflation_sum",
    "lift_mod_projectives",
    "six_term_check",
    "check_axioms",
    "AxiomReport",
    "all_objects",
    "triangle_test_set",
    "triangle_morphism_space",
    "op_instance",
    "op_mor",
    "op_triangle",
]


# ---------------------------------------------------------------------------
# extension tables and elements


class ExtTables:
    """Dimensions and action matrices of the extension bifunctor.

    dims[(c, a)] = dim E(c, a) on indecomposables (absent = 0).
    cov[(x, y, k, c)] : action of the k-th basis morphism x -> y on
        E(c, x) -> E(c, y), shape (dim E(c,y), dim E(c,x)).
    con[(x, y, k, a)] : action of the same morphism on E(y, a) -> E(x, a),
        shape (dim E(x,a), dim E(y,a)).
    Absent action keys mean the zero matrix.
    """

    def __init__(self, p, dims, cov, con):
        self.p = p
        self.dims = {k: int(v) for k, v in dims.items() if v}
        self.cov = {k: np.asarray(v, dtype=np.int64) % p for k, v in cov.items()}
        self.con = {k: np.asarray(v, dtype=np.int64) % p for k, v in con.items()}

    def dim(self, c, a) -> int:
        return self.dims.get((c, a), 0)

    def cov_mat(self, x, y, k, c) -> np.ndarray:
        m = self.cov.get((x, y, k, c))
        if m is None:
            m = zeros(self.dim(c, y), self.dim(c, x))
        return m

    def con_mat(self, x, y, k, a) -> np.ndarray:
        m = self.con.get((x, y, k, a))
        if m is None:
            m = zeros(self.dim(x, a), self.dim(y, a))
        return m


class ExtElem:
    """An element of E(C, A) for formal sums C, A.

    Coordinates are the concatenation of the blocks E(C_i, A_j), the
    index i over C's summands outermost.
    """

    __slots__ = ("C", "A", "coords")

    def __init__(self, C: Obj, A: Obj, coords):
        self.C = C
        self.A = A
        self.coords = np.asarray(coords, dtype=np.int64)

    def __eq__(self, other):
        return (
            isinstance(other, ExtElem)
            and self.C == other.C
            and self.A == other.A
            and np.array_equal(self.coords, other.coords)
        )

    def __hash__(self):
        return hash((self.C, self.A, self.coords.tobytes()))

    def __repr__(self):
        return f"ExtElem({self.C}; {self.A}; {self.coords.tolist()})"

    def is_zero(self) -> bool:
        return not np.any(self.coords)


@dataclass(frozen=True)
class Conflation:
    """A pair of composable morphisms A -> B -> C with y . x = 0."""

    A: Obj
    B: Obj
    C: Obj
    x: Mor
    y: Mor

    def __post_init__(self):
        if self.x.dom != self.A or self.x.cod != self.B:
            raise ValueError("x endpoints do not match")
        if self.y.dom != self.B or self.y.cod != self.C:
            raise ValueError("y endpoints do not match")
        if not compose(self.y, self.x).is_zero():
            raise ValueError("y . x != 0")


@dataclass(frozen=True)
class STriangle:
    """A conflation together with its extension class."""

    conf: Conflation
    delta: ExtElem

    def __post_init__(self):
        if self.delta.C != self.conf.C or self.delta.A != self.conf.A:
            raise ValueError("class endpoints do not match the conflation")

    @property
    def A(self):
        return self.conf.A

    @property
    def B(self):
        return self.conf.B

    @property
    def C(self):
        return self.conf.C

    @property
    def x(self):
        return self.conf.x

    @property
    def y(self):
        return self.conf.y

    def __repr__(self):
        return f"STri({self.A} -> {self.B} -> {self.C}; {self.delta.coords.tolist()})"


# ---------------------------------------------------------------------------
# instance


@dataclass
class Instance:
    """A complete extriangulated category package.

    realize_core(C, A, coords) must handle *connected* classes (no zero
    block-row or block-column, connected block-support graph) and raise
    RealizationMissing outside its coverage.  deflation_rule /
    inflation_rule are callables Mor -> bool, the string "always", or
    None (bounded search fallback).  class_oracle(Conflation) -> coords
    or None is optional (fast path for generated instances).
    """

    name: str
    spec: Spectroid
    ext: ExtTables
    realize_core: object
    projectives: Subcat
    injectives: Subcat
    covers: dict
    envelopes: dict
    deflation_rule: object = None
    inflation_rule: object = None
    class_oracle: object = None
    enough_projectives: bool = False
    enough_injectives: bool = False
    max_summands: int = 4
    realize_coverage: int = 3
    meta: dict = field(default_factory=dict)

    # -- extension spaces ------------------------------------------------

    @property
    def p(self):
        return self.spec.p

    def edim(self, C: Obj, A: Obj) -> int:
        return sum(self.ext.dim(c, a) for c in C.summands for a in A.summands)

    def ext_zero(self, C: Obj, A: Obj) -> ExtElem:
        return ExtElem(C, A, np.zeros(self.edim(C, A), dtype=np.int64))

    def ext_elem(self, C: Obj, A: Obj, coords) -> ExtElem:
        coords = np.asarray(coords, dtype=np.int64) % self.p
        if len(coords) != self.edim(C, A):
            raise ValueError("coordinate length mismatch")
        return ExtElem(C, A, coords)

    def ext_block_slices(self, C: Obj, A: Obj):
        out = {}
        pos = 0
        for i, c in enumerate(C.summands):
            for j, a in enumerate(A.summands):
                d = self.ext.dim(c, a)
                out[(i, j)] = slice(pos, pos + d)
                pos += d
        return out

    def ext_all_elems(self, C: Obj, A: Obj, include_zero=True):
        d = self.edim(C, A)
        for coords in itertools.product(range(self.p), repeat=d):
            if not include_zero and not any(coords):
                continue
            yield ExtElem(C, A, np.array(coords, dtype=np.int64))

    # -- bifunctor actions -------------------------------------------------

    def push(self, a: Mor, delta: ExtElem) -> ExtElem:
        """Covariant action: a_* delta for a: A -> A'."""
        if a.dom != delta.A:
            raise ValueError(f"endpoint mismatch: {a.dom} vs {delta.A}")
        C, A, A2 = delta.C, delta.A, a.cod
        src = self.ext_block_slices(C, A)
        dst = self.ext_block_slices(C, A2)
        out = np.zeros(self.edim(C, A2), dtype=np.int64)
        for i, c in enumerate(C.summands):
            for jp, a2 in enumerate(A2.summands):
                acc = out[dst[(i, jp)]]
                for j, a1 in enumerate(A.summands):
                    blk = delta.coords[src[(i, j)]]
                    if not np.any(blk):
                        continue
                    coeffs = a.blocks[jp][j]
                    for k in range(self.spec.dim(a1, a2)):
                        if coeffs[k]:
                            acc = acc + coeffs[k] * (self.ext.cov_mat(a1, a2, k, c) @ blk)
                out[dst[(i, jp)]] = acc % self.p
        return ExtElem(C, A2, out)

    def pull(self, c: Mor, delta: ExtElem) -> ExtElem:
        """Contravariant action: c^* delta for c: C' -> C."""
        if c.cod != delta.C:
            raise ValueError(f"endpoint mismatch: {c.cod} vs {delta.C}")
        C, A, C2 = delta.C, delta.A, c.dom
        src = self.ext_block_slices(C, A)
        dst = self.ext_block_slices(C2, A)
        out = np.zeros(self.edim(C2, A), dtype=np.int64)
        for ip, c2 in enumerate(C2.summands):
            for j, a in enumerate(A.summands):
                acc = out[dst[(ip, j)]]
                for i, c1 in enumerate(C.summands):
                    blk = delta.coords[src[(i, j)]]
                    if not np.any(blk):
                        continue
                    coeffs = c.blocks[i][ip]
                    for k in range(self.spec.dim(c2, c1)):
                        if coeffs[k]:
                            acc = acc + coeffs[k] * (self.ext.con_mat(c2, c1, k, a) @ blk)
                out[dst[(ip, j)]] = acc % self.p
        return ExtElem(C2, A, out)

    def push_matrix(self, a: Mor, C: Obj) -> np.ndarray:
        """Matrix of E(C, dom a) -> E(C, cod a)."""
        src = self.edim(C, a.dom)
        m = zeros(self.edim(C, a.cod), src)
        for k in range(src):
            v = np.zeros(src, dtype=np.int64)
            v[k] = 1
            m[:, k] = self.push(a, ExtElem(C, a.dom, v)).coords
        return m

    def pull_matrix(self, c: Mor, A: Obj) -> np.ndarray:
        """Matrix of E(cod c, A) -> E(dom c, A)."""
        src = self.edim(c.cod, A)
        m = zeros(self.edim(c.dom, A), src)
        for k in range(src):
            v = np.zeros(src, dtype=np.int64)
            v[k] = 1
            m[:, k] = self.pull(c, ExtElem(c.cod, A, v)).coords
        return m

    # -- realization --------------------------------------------------------

    def split_conflation(self, C: Obj, A: Obj) -> Conflation:
        """The canonical split conflation A -> A (+) C -> C."""
        B = A.plus(C)
        x = Mor.zero(self.spec, A, B)
        for j, s in enumerate(A.summands):
            x.blocks[j][j] = self.spec.identity[s].copy()
        y = Mor.zero(self.spec, B, C)
        na = len(A.summands)
        for i, s in enumerate(C.summands):
            y.blocks[i][na + i] = self.spec.identity[s].copy()
        return Conflation(A, B, C, x, y)

    def realize(self, delta: ExtElem) -> STriangle:
        """Realize an extension class as an s-triangle.

        Zero classes give the split conflation; classes whose block
        support decomposes split into connected components realized
        separately and reassembled in the original summand order.
        """
        C, A = delta.C, delta.A
        if delta.is_zero():
            return STriangle(self.split_conflation(C, A), delta)
        sl = self.ext_block_slices(C, A)
        nc, na = len(C.summands), len(A.summands)
        # connected components of the block-support bipartite graph
        parent = list(range(nc + na))

        def find(u):
            while parent[u] != u:
                parent[u] = parent[parent[u]]
                u = parent[u]
            return u

        def union(u, v):
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[max(ru, rv)] = min(ru, rv)

        for i in range(nc):
            for j in range(na):
                if np.any(delta.coords[sl[(i, j)]]):
                    union(i, nc + j)
        comps: dict = {}
        for i in range(nc):
            comps.setdefault(find(i), [[], []])[0].append(i)
        for j in range(na):
            comps.setdefault(find(nc + j), [[], []])[1].append(j)
        order = sorted(comps)
        # realize each component
        pieces = []  # (c_idx, a_idx, Conflation)
        for root in order:
            c_idx, a_idx = comps[root]
            Cc = Obj(tuple(C.summands[i] for i in c_idx))
            Ac = Obj(tuple(A.summands[j] for j in a_idx))
            sub = np.concatenate(
                [delta.coords[sl[(i, j)]] for i in c_idx for j in a_idx]
            ) if (c_idx and a_idx) else np.zeros(0, dtype=np.int64)
            if not np.any(sub):
                pieces.append((c_idx, a_idx, self.split_conflation(Cc, Ac)))
            else:
                pieces.append((c_idx, a_idx, self._realize_connected(Cc, Ac, sub)))
        # reassemble with original summand order on the ends
        B_parts = []
        for _, _, conf in pieces:
            B_parts.append(conf.B)
        B = Obj(sum((b.summands for b in B_parts), ()))
        x = Mor.zero(self.spec, A, B)
        y = Mor.zero(self.spec, B, C)
        boff = 0
        for (c_idx, a_idx, conf) in pieces:
            for jb in range(len(conf.B.summands)):
                for ja, ja_orig in enumerate(a_idx):
                    x.blocks[boff + jb][ja_orig] = conf.x.blocks[jb][ja].copy()
                for ic, ic_orig in enumerate(c_idx):
                    y.blocks[ic_orig][boff + jb] = conf.y.blocks[ic][jb].copy()
            boff += len(conf.B.summands)
        return STriangle(Conflation(A, B, C, x, y), delta)

    def _realize_connected(self, C: Obj, A: Obj, coords) -> Conflation:
        # normalize summand order so table oracles can key on sorted tuples
        cperm = sorted(range(len(C.summands)), key=lambda i: (C.summands[i], i))
        aperm = sorted(range(len(A.summands)), key=lambda j: (A.summands[j], j))
        Cs = Obj(tuple(C.summands[i] for i in cperm))
        As = Obj(tuple(A.summands[j] for j in aperm))
        sl = self.ext_block_slices(C, A)
        chunks = []
        for i in cperm:
            for j in aperm:
                chunks.append(coords[sl[(i, j)]])
        sorted_coords = np.concatenate(chunks) if chunks else np.zeros(0, dtype=np.int64)
        conf = self.realize_core(Cs, As, sorted_coords)
        if cperm == sorted(cperm) and aperm == sorted(aperm) and Cs == C and As == A:
            if cperm == list(range(len(cperm))) and aperm == list(range(len(aperm))):
                return conf
        # conjugate back along the permutation isomorphisms
        pa = Mor.zero(self.spec, A, As)
        for spos, j in enumerate(aperm):
            pa.blocks[spos][j] = self.spec.identity[A.summands[j]].copy()
        pc = Mor.zero(self.spec, Cs, C)
        for spos, i in enumerate(cperm):
            pc.blocks[i][spos] = self.spec.identity[C.summands[i]].copy()
        x = compose(conf.x, pa)
        y = compose(pc, conf.y)
        return Conflation(A, conf.B, C, x, y)

    def striangle(self, conf: Conflation, delta: ExtElem, check=True) -> STriangle:
        """Wrap a conflation with its class, verifying equivalence."""
        t = STriangle(conf, delta)
        if check:
            ref = self.realize(delta)
            if equivalent_conflations(self, t.conf, ref.conf) is None:
                raise ValueError("conflation is not equivalent to the realization of its class")
        return t

    def find_class(self, conf: Conflation) -> ExtElem | None:
        """The class realized by a conflation, or None if no table entry matches."""
        if self.class_oracle is not None:
            coords = self.class_oracle(conf)
            if coords is not None:
                return ExtElem(conf.C, conf.A, coords)
            return None
        for delta in self.ext_all_elems(conf.C, conf.A):
            try:
                ref = self.realize(delta)
            except RealizationMissing:
                continue
            if equivalent_conflations(self, conf, ref.conf) is not None:
                return delta
        return None

    # -- deflations ----------------------------------------------------------

    def deflation_status(self, y: Mor) -> str:
        """'yes' / 'no' / 'unknown' per the deflation rule or a bounded search."""
        rule = self.deflation_rule
        if rule == "always":
            return "yes"
        if callable(rule):
            return "yes" if rule(y) else "no"
        return self._conflation_search(y, side="deflation")

    def inflation_status(self, x: Mor) -> str:
        rule = self.inflation_rule
        if rule == "always":
            return "yes"
        if callable(rule):
            return "yes" if rule(x) else "no"
        return self._conflation_search(x, side="inflation")

    def _conflation_search(self, f: Mor, side: str) -> str:
        """Search for a conflation exhibiting f as deflation/inflation."""
        missed = False
        bound = self.max_summands
        for other in all_objects(self.spec, bound):
            if side == "deflation":
                pairs = self.ext_all_elems(f.cod, other)
            else:
                pairs = self.ext_all_elems(other, f.dom)
            for delta in pairs:
                try:
                    t = self.realize(delta)
                except RealizationMissing:
                    missed = True
                    continue
                if side == "deflation":
                    # iso phi: t.B -> dom f with f . phi = t.y
                    if _aligned_iso(self, t.B, f.dom, lambda phi: compose(f, phi) == t.y):
                        return "yes"
                else:
                    if _aligned_iso(self, f.cod, t.B, lambda phi: compose(phi, f) == t.x):
                        return "yes"
        return "unknown" if missed else "no"

    def is_deflation(self, y: Mor) -> bool:
        return self.deflation_status(y) == "yes"

    def is_inflation(self, x: Mor) -> bool:
        return self.inflation_status(x) == "yes"

    # -- projectives, syzygies ----------------------------------------------

    def cover_triangle(self, s: str) -> STriangle:
        """Designated cover conflation Omega(s) -> P -> s for an indecomposable."""
        if s in self.projectives:
            xo = Obj((s,))
            # minimal cover of a projective: 0 -> s -> s
            z = Obj()
            x = Mor.zero(self.spec, z, xo)
            y = Mor.identity(self.spec, xo)
            conf = Conflation(z, xo, xo, x, y)
            return STriangle(conf, self.ext_zero(xo, z))
        data = self.covers.get(s)
        if data is None:
            raise NoProjectives(f"no projective cover available for {s}")
        return data

    def envelope_triangle(self, s: str) -> STriangle:
        if s in self.injectives:
            xo = Obj((s,))
            z = Obj()
            x = Mor.identity(self.spec, xo)
            y = Mor.zero(self.spec, xo, z)
            conf = Conflation(xo, xo, z, x, y)
            return STriangle(conf, self.ext_zero(z, xo))
        data = self.envelopes.get(s)
        if data is None:
            raise NoProjectives(f"no injective envelope available for {s}")
        return data

    def omega(self, x: Obj) -> STriangle:
        """Cover conflation Omega(x) -> P0 -> x (direct sum of designated covers)."""
        parts = [self.cover_triangle(s) for s in x.summands]
        return direct_sum_triangles(self, parts)

    def sigma(self, x: Obj) -> STriangle:
        parts = [self.envelope_triangle(s) for s in x.summands]
        return direct_sum_triangles(self, parts)

    def omega_obj(self, x: Obj, i: int = 1) -> Obj:
        for _ in range(i):
            x = self.omega(x).A
        return x

    def omega_mor(self, f: Mor) -> Mor:
        """A lift Omega(f) completing f between the designated covers."""
        tx, ty = self.omega(f.dom), self.omega(f.cod)
        # lift f . y_x through y_y (projectivity of the middle), then restrict
        lifted = factor_left(compose(f, tx.y), ty.y)
        if lifted is None:
            raise NoProjectives("cover middle failed to lift a morphism")
        g = complete_morphism(self, tx, ty, {"b": lifted, "c": f})[0]
        return g

    def ext_i_dim(self, x: Obj, y: Obj, i: int) -> int:
        """dim E^i(x, y) = dim E(Omega^{i-1} x, y)."""
        if i < 1:
            raise ValueError("i must be >= 1")
        return self.edim(self.omega_obj(x, i - 1), y)

    def is_projective(self, pobj: Obj, deflations=None) -> bool:
        """Lifting test against the bounded deflation enumeration."""
        if pobj.is_zero():
            return True
        if deflations is None:
            deflations = [t.y for t in triangle_test_set(self)]
        for y in deflations:
            for c in hom_basis(self.spec, pobj, y.cod):
                if factor_left(c, y) is None:
                    return False
        return True


def _zero_triangle(inst: Instance) -> STriangle:
    z = Obj()
    m = Mor.zero(inst.spec, z, z)
    return STriangle(Conflation(z, z, z, m, m), inst.ext_zero(z, z))


def _direct_sum_triangles(inst, parts) -> STriangle:
    A = Obj(sum((t.A.summands for t in parts), ()))
    B = Obj(sum((t.B.summands for t in parts), ()))
    C = Obj(sum((t.C.summands for t in parts), ()))
    x = Mor.direct_sum([t.x for t in parts]) if parts else Mor.zero(inst.spec, A, B)
    y = Mor.direct_sum([t.y for t in parts]) if parts else Mor.zero(inst.spec, B, C)
    coords = np.zeros(inst.edim(C, A), dtype=np.int64)
    sl = inst.ext_block_slices(C, A)
    coff = aoff = 0
    for t in parts:
        tsl = inst.ext_block_slices(t.C, t.A)
        for i in range(len(t.C.summands)):
            for j in range(len(t.A.summands)):
                coords[sl[(coff + i, aoff + j)]] = t.delta.coords[tsl[(i, j)]]
        coff += len(t.C.summands)
        aoff += len(t.A.summands)
    return STriangle(Conflation(A, B, C, x, y), ExtElem(C, A, coords))


def direct_sum_triangles(inst: Instance, parts) -> STriangle:
    if not parts:
        return _zero_triangle(inst)
    return _direct_sum_triangles(inst, parts)


# ---------------------------------------------------------------------------
# isomorphism utilities


def mor_inverse(f: Mor) -> Mor | None:
    """Two-sided inverse of f when invertible, else None."""
    spec = f.spec
    if len(f.dom.summands) != len(f.cod.summands):
        return None
    # solve g . f = id_dom and f . g = id_cod jointly, linear in g
    d_g = hom_dim(spec, f.cod, f.dom)
    id_dom = Mor.identity(spec, f.dom).to_vec()
    id_cod = Mor.identity(spec, f.cod).to_vec()
    basis = hom_basis(spec, f.cod, f.dom)
    m_left = zeros(len(id_dom), d_g)
    m_right = zeros(len(id_cod), d_g)
    for k, g in enumerate(basis):
        m_left[:, k] = compose(g, f).to_vec()
        m_right[:, k] = compose(f, g).to_vec()
    sys = np.vstack([m_left, m_right])
    target = np.concatenate([id_dom, id_cod]).reshape(-1, 1)
    sol = solve_right(sys, target, spec.p)
    if sol is None:
        return None
    return Mor.from_vec(spec, f.cod, f.dom, sol.ravel())


def mor_is_iso(f: Mor) -> bool:
    return mor_inverse(f) is not None


def _affine_solutions(sys, rhs, p, cap=4096):
    """Iterate solutions of sys @ v = rhs (deterministic, bounded)."""
    part = solve_right(sys, rhs.reshape(-1, 1), p)
    if part is None:
        return
    part = part.ravel()
    ker = kernel_basis(sys, p)
    k = ker.shape[1]
    count = 0
    for coeffs in itertools.product(range(p), repeat=k):
        v = part.copy()
        if k:
            v = (v + ker @ np.array(coeffs, dtype=np.int64)) % p
        yield v
        count += 1
        if count >= cap:
            return


def _aligned_iso(inst: Instance, src: Obj, dst: Obj, predicate) -> Mor | None:
    """Find an isomorphism src -> dst satisfying a linear predicate.

    The predicate is given as a check on candidate morphisms; candidates
    run over the full Hom space solution set of nothing (all morphisms),
    so callers should pre-restrict by passing src/dst of matching class.
    """
    from .fincat import iso_obj

    spec = inst.spec
    if iso_obj(spec, src, dst) is None:
        return None
    d = hom_dim(spec, src, dst)
    if d == 0:
        if src.is_zero() and dst.is_zero():
            z = Mor.zero(spec, src, dst)
            return z if predicate(z) else None
        return None
    for coords in itertools.product(range(spec.p), repeat=d):
        f = Mor.from_vec(spec, src, dst, np.array(coords, dtype=np.int64))
        if predicate(f) and mor_is_iso(f):
            return f
    return None


def equivalent_conflations(inst: Instance, c1: Conflation, c2: Conflation) -> Mor | None:
    """Middle isomorphism b with b.x1 = x2 and y2.b = y1, or None.

    Solves the linear constraints first, then scans the affine solution
    set for an invertible element.
    """
    if c1.A != c2.A or c1.C != c2.C:
        return None
    spec = inst.spec
    from .fincat import iso_obj

    if iso_obj(spec, c1.B, c2.B) is None:
        return None
    d = hom_dim(spec, c1.B, c2.B)
    if d == 0:
        z = Mor.zero(spec, c1.B, c2.B)
        if compose(z, c1.x) == c2.x and compose(c2.y, z) == c1.y and c1.B.is_zero():
            return z
        return None
    # constraints: b . x1 = x2  and  y2 . b = y1, both linear in b
    bx = zeros(hom_dim(spec, c1.A, c2.B), d)
    yb = zeros(hom_dim(spec, c1.B, c1.C), d)
    basis = hom_basis(spec, c1.B, c2.B)
    for k, b in enumerate(basis):
        bx[:, k] = compose(b, c1.x).to_vec()
        yb[:, k] = compose(c2.y, b).to_vec()
    sys = np.vstack([bx, yb])
    rhs = np.concatenate([c2.x.to_vec(), c1.y.to_vec()])
    for v in _affine_solutions(sys, rhs, spec.p):
        b = Mor.from_vec(spec, c1.B, c2.B, v)
        if mor_is_iso(b):
            return b
    return None


# ---------------------------------------------------------------------------
# (ET3): completion of commuting squares


def complete_morphism(inst: Instance, t: STriangle, t2: STriangle, given: dict):
    """Complete two of (a, b, c) to a morphism of s-triangles t -> t2.

    Conditions: b.x = x'.a, c.y = y'.b, push(a, delta) = pull(c, delta').
    Raises NoCompletion when the linear system is inconsistent.
    """
    spec = inst.spec
    p = spec.p
    keys = set(given)
    if keys == {"a", "b"}:
        a, b = given["a"], given["b"]
        if compose(b, t.x) != compose(t2.x, a):
            raise NoCompletion("given square (a, b) does not commute")
        d = hom_dim(spec, t.C, t2.C)
        cy = zeros(hom_dim(spec, t.B, t2.C), d)
        pullm = zeros(inst.edim(t.C, t2.A), d)
        basis = hom_basis(spec, t.C, t2.C)
        for k, c in enumerate(basis):
            cy[:, k] = compose(c, t.y).to_vec()
            pullm[:, k] = inst.pull(c, t2.delta).coords
        sys = np.vstack([cy, pullm])
        rhs = np.concatenate([compose(t2.y, b).to_vec(), inst.push(a, t.delta).coords])
        sol = solve_right(sys, rhs.reshape(-1, 1), p)
        if sol is None:
            raise NoCompletion("no completion c exists")
        c = Mor.from_vec(spec, t.C, t2.C, sol.ravel())
        return a, b, c
    if keys == {"b", "c"}:
        b, c = given["b"], given["c"]
        if compose(c, t.y) != compose(t2.y, b):
            raise NoCompletion("given square (b, c) does not commute")
        d = hom_dim(spec, t.A, t2.A)
        xa = zeros(hom_dim(spec, t.A, t2.B), d)
        pushm = zeros(inst.edim(t.C, t2.A), d)
        basis = hom_basis(spec, t.A, t2.A)
        for k, a in enumerate(basis):
            xa[:, k] = compose(t2.x, a).to_vec()
            pushm[:, k] = inst.push(a, t.delta).coords
        sys = np.vstack([xa, pushm])
        rhs = np.concatenate([compose(b, t.x).to_vec(), inst.pull(c, t2.delta).coords])
        sol = solve_right(sys, rhs.reshape(-1, 1), p)
        if sol is None:
            raise NoCompletion("no completion a exists")
        a = Mor.from_vec(spec, t.A, t2.A, sol.ravel())
        return a, b, c
    if keys == {"a", "c"}:
        a, c = given["a"], given["c"]
        if inst.push(a, t.delta) != inst.pull(c, t2.delta):
            raise NoCompletion("(a, c) is not a morphism of extensions")
        d = hom_dim(spec, t.B, t2.B)
        bx = zeros(hom_dim(spec, t.A, t2.B), d)
        yb = zeros(hom_dim(spec, t.B, t2.C), d)
        basis = hom_basis(spec, t.B, t2.B)
        for k, b in enumerate(basis):
            bx[:, k] = compose(b, t.x).to_vec()
            yb[:, k] = compose(t2.y, b).to_vec()
        sys = np.vstack([bx, yb])
        rhs = np.concatenate([compose(t2.x, a).to_vec(), compose(c, t.y).to_vec()])
        sol = solve_right(sys, rhs.reshape(-1, 1), p)
        if sol is None:
            raise NoCompletion("no realizing middle morphism exists")
        b = Mor.from_vec(spec, t.B, t2.B, sol.ravel())
        return a, b, c
    raise ValueError("given must fix exactly two of a, b, c")


# ---------------------------------------------------------------------------
# gluing of composable conflations


@dataclass
class ET4Data:
    E: Obj
    delta2: ExtElem  # class of the glued second row, in E(E, A)
    h: Mor
    h_prime: Mor
    d: Mor
    e: Mor


def et4_glue(inst: Instance, t1: STriangle, t2: STriangle, obj_bound=None) -> ET4Data:
    """Glue conflations (A -> B -> D) and (B -> C -> F) into the nine diagram.

    Searches middles E by ascending size, classes lexicographically.
    Returns data satisfying: (A -> C -> E, delta2) is an s-triangle with
    first map h = g.f; pull(d, delta2) = delta1; push(f, delta2) =
    pull(e, delta'); and (D -> E -> F) realizes push(f', delta').
    """
    if t1.B != t2.A:
        raise ValueError("conflations are not composable")
    spec = inst.spec
    p = spec.p
    A, B, D = t1.A, t1.B, t1.C
    C, F = t2.B, t2.C
    f, fp = t1.x, t1.y
    g, gp = t2.x, t2.y
    h = compose(g, f)
    third_class = inst.push(fp, t2.delta)  # in E(F, D)
    if obj_bound is None:
        obj_bound = inst.max_summands
    for E in all_objects(spec, obj_bound):
        for delta2 in inst.ext_all_elems(E, A):
            try:
                ref = inst.realize(delta2)
            except RealizationMissing:
                continue
            phi = _aligned_iso(inst, ref.B, C, lambda m: compose(m, ref.x) == h)
            if phi is None:
                continue
            phi_inv = mor_inverse(phi)
            hp = compose(ref.y, phi_inv)
            # solve d: D -> E with d.f' = h'.g and pull(d, delta2) = delta1
            dd = hom_dim(spec, D, E)
            sys1 = zeros(hom_dim(spec, B, E), dd)
            sys2 = zeros(inst.edim(D, A), dd)
            basis = hom_basis(spec, D, E)
            for k, cand in enumerate(basis):
                sys1[:, k] = compose(cand, fp).to_vec()
                sys2[:, k] = inst.pull(cand, delta2).coords
            sys = np.vstack([sys1, sys2])
            rhs = np.concatenate([compose(hp, g).to_vec(), t1.delta.coords])
            sol = solve_right(sys, rhs.reshape(-1, 1), p)
            if sol is None:
                continue
            d = Mor.from_vec(spec, D, E, sol.ravel())
            # solve e: E -> F with e.h' = g' and pull(e, delta') = push(f, delta2)
            de = hom_dim(spec, E, F)
            sys1 = zeros(hom_dim(spec, C, F), de)
            sys2 = zeros(inst.edim(E, B), de)
            basis_e = hom_basis(spec, E, F)
            for k, cand in enumerate(basis_e):
                sys1[:, k] = compose(cand, hp).to_vec()
                sys2[:, k] = inst.pull(cand, t2.delta).coords
            sys = np.vstack([sys1, sys2])
            rhs = np.concatenate([gp.to_vec(), inst.push(f, delta2).coords])
            sol = solve_right(sys, rhs.reshape(-1, 1), p)
            if sol is None:
                continue
            e = Mor.from_vec(spec, E, F, sol.ravel())
            # third column must realize push(f', delta')
            try:
                refc = inst.realize(third_class)
            except RealizationMissing:
                continue
            cand_conf_ok = compose(e, d).is_zero()
            if not cand_conf_ok:
                continue
            col = Conflation(D, E, F, d, e)
            if equivalent_conflations(inst, col, refc.conf) is None:
                continue
            return ET4Data(E, delta2, h, hp, d, e)
    raise SearchExhausted("no gluing diagram found within bounds")


def et4op_glue(inst: Instance, t1: STriangle, t2: STriangle, obj_bound=None) -> ET4Data:
    """Dual gluing: conflations (D -> A -> B) and (F -> B -> C).

    The deflations A -> B and B -> C compose; the result is computed by
    running et4_glue on the opposite instance.  In the original category
    the returned data satisfies: (E -> A -> C, delta2) is an s-triangle
    whose second map is h = the composite deflation, (D -> d E -> e F)
    realizes pull(g', delta1), push(e, delta2) = delta', and
    push(d, delta1) = pull(g, delta2).
    """
    if t1.C != t2.B:
        raise ValueError("deflations are not composable")
    op = op_instance(inst)
    r = et4_glue(op, op_triangle(op, t2), op_triangle(op, t1), obj_bound)
    # translate morphisms back
    return ET4Data(
        E=r.E,
        delta2=ExtElem(
            r.delta2.A, r.delta2.C, _transpose_ext_coords(op, r.delta2)
        ),
        h=op_mor(inst.spec, r.h),
        h_prime=op_mor(inst.spec, r.h_prime),
        d=op_mor(inst.spec, r.e),
        e=op_mor(inst.spec, r.d),
    )


# ---------------------------------------------------------------------------
# lemmas with projectives


def deflation_sum(inst: Instance, f: Mor, pi: Mor) -> Mor:
    """(f, -pi): X (+) P -> Y for a deflation pi from a projective P.

    Asserts the result is a deflation and that it is isomorphic to f in
    the projective-stable morphism category.
    """
    if pi.cod != f.cod:
        raise ValueError("codomains differ")
    if not all(s in inst.projectives for s in pi.dom.summands):
        raise ValueError("pi must start at a projective object")
    if not inst.is_deflation(pi):
        raise ValueError("pi is not a deflation")
    spec = inst.spec
    dom = f.dom.plus(pi.dom)
    out = Mor.zero(spec, dom, f.cod)
    nx = len(f.dom.summands)
    for j in range(len(f.cod.summands)):
        for i in range(nx):
            out.blocks[j][i] = f.blocks[j][i].copy()
        for i in range(len(pi.dom.summands)):
            out.blocks[j][nx + i] = (-pi.blocks[j][i]) % spec.p
    if not inst.is_deflation(out):
        raise ValueError("(f, -pi) failed the deflation check")
    # stable isomorphism with f in the morphism category mod projectives:
    # u = (1;0), v = (1,0) give inverse-mod-[P] comparison morphisms.
    u = Mor.zero(spec, f.dom, dom)
    for i, s in enumerate(f.dom.summands):
        u.blocks[i][i] = spec.identity[s].copy()
    v = Mor.zero(spec, dom, f.dom)
    for i, s in enumerate(f.dom.summands):
        v.blocks[i][i] = spec.identity[s].copy()
    assert compose(out, u) == f
    diff = compose(f, v).sub(out)
    ideal = ideal_subspace(spec, dom, f.cod, inst.projectives)
    if not linalg.in_row_space(diff.to_vec(), ideal, spec.p):
        raise ValueError("(f, -pi) is not stably equal to f after projection")
    return out


def lift_mod_projectives(inst: Instance, f: Mor, g: Mor, h: Mor):
    """Given g.f = h modulo maps through projectives (g a deflation),
    produce (P, u, v) with g.(f - v.u) = h exactly."""
    spec = inst.spec
    p = spec.p
    if not inst.is_deflation(g):
        raise ValueError("g is not a deflation")
    gf = compose(g, f)
    diff = gf.sub(h)
    gens = []
    for mid in sorted(inst.projectives):
        mo = Obj((mid,))
        for u0 in hom_basis(spec, f.dom, mo):
            for w0 in hom_basis(spec, mo, h.cod):
                gens.append((mid, u0, w0, compose(w0, u0).to_vec()))
    if gens:
        m = np.stack([v for (_, _, _, v) in gens], axis=1)
        sol = solve_right(m, diff.to_vec().reshape(-1, 1), p)
    else:
        sol = None if np.any(diff.to_vec()) else zeros(0, 1)
    if sol is None:
        raise StableEqualityFails("g.f and h differ by more than maps through projectives")
    used = [(gens[t][0], gens[t][1], gens[t][2], int(sol[t, 0])) for t in range(len(gens)) if sol[t, 0]]
    if not used:
        pobj = Obj()
        return pobj, Mor.zero(spec, f.dom, pobj), Mor.zero(spec, pobj, g.dom)
    pobj = Obj(tuple(mid for (mid, _, _, _) in used))
    u = Mor.zero(spec, f.dom, pobj)
    w = Mor.zero(spec, pobj, h.cod)
    for t, (mid, u0, w0, cval) in enumerate(used):
        u.blocks[t][0] = u0.blocks[0][0].copy()
        w.blocks[0][t] = (cval * w0.blocks[0][0]) % p
    v = factor_left(w, g)
    if v is None:
        raise StableEqualityFails("discrepancy through projectives does not lift along g")
    got = compose(g, f.sub(compose(v, u)))
    assert got == h, "lift identity g(f - vu) = h failed"
    return pobj, u, v


# ---------------------------------------------------------------------------
# six-term exactness


def _exact_at(p, f_mat, g_mat):
    """im(f) == ker(g) for composable matrices f: L->M, g: M->N."""
    comp = (g_mat @ f_mat) % p if f_mat.size and g_mat.size else zeros(g_mat.shape[0], f_mat.shape[1])
    if np.any(comp):
        return False
    dim_mid = f_mat.shape[0]
    return rank(f_mat, p) + rank(g_mat, p) == dim_mid


def _hom_action_matrix(spec, m: Mor, w: Obj, side: str):
    if side == "post":
        return postcompose_matrix(m, w)
    return precompose_matrix(m, w)


def _connecting_contra(inst: Instance, t: STriangle, w: Obj):
    """Matrix of Hom(w, C) -> E(w, A), c |-> pull(c, delta)."""
    d = hom_dim(inst.spec, w, t.C)
    m = zeros(inst.edim(w, t.A), d)
    for k, c in enumerate(hom_basis(inst.spec, w, t.C)):
        m[:, k] = inst.pull(c, t.delta).coords
    return m


def _connecting_co(inst: Instance, t: STriangle, w: Obj):
    """Matrix of Hom(A, w) -> E(C, w), a |-> push(a, delta)."""
    d = hom_dim(inst.spec, t.A, w)
    m = zeros(inst.edim(t.C, w), d)
    for k, a in enumerate(hom_basis(inst.spec, t.A, w)):
        m[:, k] = inst.push(a, t.delta).coords
    return m


def _higher_connecting_contra(inst: Instance, t: STriangle, w: Obj, i: int):
    """E^i(w, C) -> E^{i+1}(w, A) via the cover of Omega^{i-1} w."""
    wi = inst.omega_obj(w, i - 1)
    cov = inst.omega(wi)  # Omega wi -> P -> wi, class sigma in E(wi, Omega wi)
    sigma = cov.delta
    src_dim = inst.edim(wi, t.C)
    out = zeros(inst.edim(cov.A, t.A), src_dim)
    # For eps in E(wi, C): find g: Omega wi -> C with push(g, sigma) = eps;
    # the value is pull(g, delta).
    d_g = hom_dim(inst.spec, cov.A, t.C)
    pm = zeros(inst.edim(wi, t.C), d_g)
    gb = hom_basis(inst.spec, cov.A, t.C)
    for k, g in enumerate(gb):
        pm[:, k] = inst.push(g, sigma).coords
    for k in range(src_dim):
        eps = np.zeros(src_dim, dtype=np.int64)
        eps[k] = 1
        sol = solve_right(pm, eps.reshape(-1, 1), inst.p)
        if sol is None:
            raise NoProjectives("higher connecting map: class does not lift")
        g = Mor.from_vec(inst.spec, cov.A, t.C, sol.ravel())
        out[:, k] = inst.pull(g, t.delta).coords
    return out


def _classifying_map(inst: Instance, t: STriangle) -> Mor:
    """w: Omega(C) -> A with push(w, sigma_C) = delta."""
    cov = inst.omega(t.C)
    d = hom_dim(inst.spec, cov.A, t.A)
    pm = zeros(inst.edim(t.C, t.A), d)
    for k, g in enumerate(hom_basis(inst.spec, cov.A, t.A)):
        pm[:, k] = inst.push(g, cov.delta).coords
    sol = solve_right(pm, t.delta.coords.reshape(-1, 1), inst.p)
    if sol is None:
        raise NoProjectives("class does not factor through the cover connecting map")
    return Mor.from_vec(inst.spec, cov.A, t.A, sol.ravel())


def six_term_check(inst: Instance, t: STriangle, i_max: int = 1) -> list[str]:
    """Verify exactness of both six-term sequences at every indecomposable.

    With i_max > 1 (and covers available) the contravariant sequence is
    extended through E^i up to i_max.  Returns a list of failure
    descriptions (empty = all exact).
    """
    spec = inst.spec
    failures = []
    for wid in spec.objects:
        w = Obj((wid,))
        # contravariant: C(w,A) -> C(w,B) -> C(w,C) -> E(w,A) -> E(w,B) -> E(w,C)
        m1 = postcompose_matrix(t.x, w)
        m2 = postcompose_matrix(t.y, w)
        m3 = _connecting_contra(inst, t, w)
        m4 = inst.push_matrix(t.x, w)
        m5 = inst.push_matrix(t.y, w)
        chain = [m1, m2, m3, m4, m5]
        for pos in range(len(chain) - 1):
            if not _exact_at(inst.p, chain[pos], chain[pos + 1]):
                failures.append(f"contravariant sequence fails at {wid}, position {pos + 1}")
        # covariant: C(C,w) -> C(B,w) -> C(A,w) -> E(C,w) -> E(B,w) -> E(A,w)
        n1 = precompose_matrix(t.y, w)
        n2 = precompose_matrix(t.x, w)
        n3 = _connecting_co(inst, t, w)
        n4 = inst.pull_matrix(t.y, w)
        n5 = inst.pull_matrix(t.x, w)
        chain = [n1, n2, n3, n4, n5]
        for pos in range(len(chain) - 1):
            if not _exact_at(inst.p, chain[pos], chain[pos + 1]):
                failures.append(f"covariant sequence fails at {wid}, position {pos + 1}")
        if i_max >= 2:
            try:
                failures.extend(_six_term_higher_contra(inst, t, w, i_max))
                failures.extend(_six_term_higher_co(inst, t, w, i_max))
            except NoProjectives as exc:
                raise
    return failures


def _six_term_higher_contra(inst, t, w, i_max):
    failures = []
    prev = inst.push_matrix(t.y, w)  # E(w,B) -> E(w,C)
    for i in range(1, i_max):
        conn = _higher_connecting_contra(inst, t, w, i)
        wi1 = inst.omega_obj(w, i)
        m4 = _push_matrix_at(inst, t.x, wi1)
        m5 = _push_matrix_at(inst, t.y, wi1)
        wid = w.summands[0]
        if not _exact_at(inst.p, prev, conn):
            failures.append(f"extended contravariant fails at {wid}, level {i} (pre-connecting)")
        if not _exact_at(inst.p, conn, m4):
            failures.append(f"extended contravariant fails at {wid}, level {i} (post-connecting)")
        if not _exact_at(inst.p, m4, m5):
            failures.append(f"extended contravariant fails at {wid}, level {i + 1} (middle)")
        prev = m5
    return failures


def _six_term_higher_co(inst, t, w, i_max):
    failures = []
    wid = w.summands[0]
    wmap = _classifying_map(inst, t)  # Omega C -> A
    prev = inst.pull_matrix(t.x, w)  # E(B,w) -> E(A,w)
    for i in range(1, i_max):
        # connecting E^i(A, w) -> E^{i+1}(C, w): pull along Omega^{i-1} w_delta
        wi = _omega_iter_mor(inst, wmap, i - 1)
        conn = _pull_matrix_at(inst, wi, w)
        m4 = _pull_matrix_at(inst, _omega_iter_mor(inst, t.y, i), w)
        m5 = _pull_matrix_at(inst, _omega_iter_mor(inst, t.x, i), w)
        if not _exact_at(inst.p, prev, conn):
            failures.append(f"extended covariant fails at {wid}, level {i} (pre-connecting)")
        if not _exact_at(inst.p, conn, m4):
            failures.append(f"extended covariant fails at {wid}, level {i} (post-connecting)")
        if not _exact_at(inst.p, m4, m5):
            failures.append(f"extended covariant fails at {wid}, level {i + 1} (middle)")
        prev = m5
    return failures


def _omega_iter_mor(inst, f: Mor, i: int) -> Mor:
    for _ in range(i):
        f = inst.omega_mor(f)
    return f


def _push_matrix_at(inst, m: Mor, w: Obj):
    return inst.push_matrix(m, w)


def _pull_matrix_at(inst, m: Mor, w: Obj):
    return inst.pull_matrix(m, w)


# ---------------------------------------------------------------------------
# object enumeration and test sets


def all_objects(spec: Spectroid, max_summands: int, include_zero=True):
    """Formal sums with at most max_summands summands, ascending canonical order."""
    out = []
    if include_zero:
        out.append(Obj())
    for size in range(1, max_summands + 1):
        for combo in itertools.combinations_with_replacement(spec.objects, size):
            out.append(Obj(combo))
    return out


def triangle_test_set(inst: Instance, c_bound=1, a_bound=1, include_zero=True):
    """Canonical bounded family of s-triangles: all realizations of classes
    over object pairs within the summand bounds (coverage gaps skipped)."""
    out = []
    for C in all_objects(inst.spec, c_bound, include_zero=False):
        for A in all_objects(inst.spec, a_bound, include_zero=False):
            for delta in inst.ext_all_elems(C, A, include_zero=include_zero):
                try:
                    out.append(inst.realize(delta))
                except RealizationMissing:
                    continue
    return out


def triangle_morphism_space(inst: Instance, t: STriangle, t2: STriangle):
    """Basis of the space of s-triangle morphisms t -> t2.

    Unknowns (phi1, phi2, phi3) subject to phi2.x = x'.phi1,
    phi3.y = y'.phi2 and push(phi1, delta) = pull(phi3, delta').
    Returns (basis, dims) with basis a list of (Mor, Mor, Mor).
    """
    spec = inst.spec
    p = spec.p
    d1 = hom_dim(spec, t.A, t2.A)
    d2 = hom_dim(spec, t.B, t2.B)
    d3 = hom_dim(spec, t.C, t2.C)
    total = d1 + d2 + d3
    if total == 0:
        return [], (0, 0, 0)

    def unit(n, k):
        v = np.zeros(n, dtype=np.int64)
        v[k] = 1
        return v

    # phi2 . x - x' . phi1 = 0
    r1 = zeros(hom_dim(spec, t.A, t2.B), total)
    for k in range(d1):
        phi1 = Mor.from_vec(spec, t.A, t2.A, unit(d1, k))
        r1[:, k] = (-compose(t2.x, phi1).to_vec()) % p
    for k in range(d2):
        phi2 = Mor.from_vec(spec, t.B, t2.B, unit(d2, k))
        r1[:, d1 + k] = compose(phi2, t.x).to_vec()
    # phi3 . y - y' . phi2 = 0
    r2 = zeros(hom_dim(spec, t.B, t2.C), total)
    for k in range(d2):
        phi2 = Mor.from_vec(spec, t.B, t2.B, unit(d2, k))
        r2[:, d1 + k] = (-compose(t2.y, phi2).to_vec()) % p
    for k in range(d3):
        phi3 = Mor.from_vec(spec, t.C, t2.C, unit(d3, k))
        r2[:, d1 + d2 + k] = compose(phi3, t.y).to_vec()
    # push(phi1, delta) - pull(phi3, delta') = 0
    r3 = zeros(inst.edim(t.C, t2.A), total)
    for k in range(d1):
        phi1 = Mor.from_vec(spec, t.A, t2.A, unit(d1, k))
        r3[:, k] = inst.push(phi1, t.delta).coords
    for k in range(d3):
        phi3 = Mor.from_vec(spec, t.C, t2.C, unit(d3, k))
        r3[:, d1 + d2 + k] = (-inst.pull(phi3, t2.delta).coords) % p
    sys = np.vstack([r1, r2, r3])
    ker = kernel_basis(sys, p)
    basis = []
    for col in range(ker.shape[1]):
        v = ker[:, col]
        basis.append(
            (
                Mor.from_vec(spec, t.A, t2.A, v[:d1]),
                Mor.from_vec(spec, t.B, t2.B, v[d1 : d1 + d2]),
                Mor.from_vec(spec, t.C, t2.C, v[d1 + d2 :]),
            )
        )
    return basis, (d1, d2, d3)


# ---------------------------------------------------------------------------
# opposite instance


def op_mor(op_spec: Spectroid, f: Mor) -> Mor:
    """View f: X -> Y as a morphism Y -> X over the opposite spectroid."""
    blocks = [[f.blocks[j][i].copy() for j in range(len(f.cod))] for i in range(len(f.dom))]
    return Mor(op_spec, f.cod, f.dom, blocks)


def _transpose_ext_coords(inst_from: Instance, delta: ExtElem) -> np.ndarray:
    """Reorder block coordinates from E(C, A) layout to E(A, C) layout."""
    sl = inst_from.ext_block_slices(delta.C, delta.A)
    chunks = []
    for j in range(len(delta.A.summands)):
        for i in range(len(delta.C.summands)):
            chunks.append(delta.coords[sl[(i, j)]])
    return np.concatenate(chunks) if chunks else np.zeros(0, dtype=np.int64)


def op_triangle(op: Instance, t: STriangle) -> STriangle:
    """The s-triangle (C -> B -> A) of the opposite instance."""
    base = op.meta["op_of"]
    coords = _transpose_ext_coords(base, t.delta)
    conf = Conflation(t.C, t.B, t.A, op_mor(op.spec, t.y), op_mor(op.spec, t.x))
    return STriangle(conf, ExtElem(t.A, t.C, coords))


def op_instance(inst: Instance) -> Instance:
    """The opposite extriangulated category (cached on the instance)."""
    cached = inst.meta.get("op_cache")
    if cached is not None:
        return cached
    op_spec = opposite_spectroid(inst.spec)
    dims = {(a, c): d for (c, a), d in inst.ext.dims.items()}
    cov = {}
    con = {}
    for (x, y, k, c), m in inst.ext.con.items():
        # con[(x,y,k,a)] acts E(y,a) -> E(x,a); in op this is the covariant
        # action of the op-morphism y -> x on E_op(a, -).
        cov[(y, x, k, c)] = m
    for (x, y, k, c), m in inst.ext.cov.items():
        con[(y, x, k, c)] = m
    ext = ExtTables(inst.p, dims, cov, con)

    out = Instance(
        name=f"op({inst.name})",
        spec=op_spec,
        ext=ext,
        realize_core=None,
        projectives=inst.injectives,
        injectives=inst.projectives,
        covers={},
        envelopes={},
        deflation_rule=None,
        inflation_rule=None,
        class_oracle=None,
        enough_projectives=inst.enough_injectives,
        enough_injectives=inst.enough_projectives,
        max_summands=inst.max_summands,
        realize_coverage=inst.realize_coverage,
        meta={"op_of": inst},
    )

    def realize_core(C, A, coords):
        # E_op(C, A) = E(A, C): realize in the base and flip
        base_delta = ExtElem(A, C, _transpose_op_coords(out, C, A, coords))
        conf = inst.realize(base_delta).conf
        return Conflation(A, conf.B, C, op_mor(op_spec, conf.y), op_mor(op_spec, conf.x))

    def _transpose_op_coords(op_inst, C, A, coords):
        sl = op_inst.ext_block_slices(C, A)
        chunks = []
        for j in range(len(A.summands)):
            for i in range(len(C.summands)):
                chunks.append(np.asarray(coords)[sl[(i, j)]])
        return np.concatenate(chunks) if chunks else np.zeros(0, dtype=np.int64)

    def deflation_rule(y):
        return inst.is_inflation(op_mor(inst.spec, y))

    def inflation_rule(x):
        return inst.is_deflation(op_mor(inst.spec, x))

    out.realize_core = realize_core
    out.deflation_rule = deflation_rule
    out.inflation_rule = inflation_rule
    for s, t in inst.envelopes.items():
        out.covers[s] = op_triangle(out, t)
    for s, t in inst.covers.items():
        out.envelopes[s] = op_triangle(out, t)
    if inst.class_oracle is not None:
        def class_oracle(conf):
            base_conf = Conflation(
                conf.C, conf.B, conf.A, op_mor(inst.spec, conf.y), op_mor(inst.spec, conf.x)
            )
            coords = inst.class_oracle(base_conf)
            if coords is None:
                return None
            delta = ExtElem(base_conf.C, base_conf.A, coords)
            return _transpose_ext_coords(inst, delta)

        out.class_oracle = class_oracle
    inst.meta["op_cache"] = out
    return out


# ---------------------------------------------------------------------------
# axiom checker


@dataclass
class AxiomReport:
    name: str
    checks: list = field(default_factory=list)
    bounds: dict = field(default_factory=dict)

    def record(self, check: str, ok: bool, detail: str = ""):
        self.checks.append((check, bool(ok), detail))

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def failures(self):
        return [(c, d) for c, ok, d in self.checks if not ok]

    def summary(self) -> str:
        lines = [f"axiom report for {self.name}: {'PASS' if self.ok else 'FAIL'}"]
        for c, ok, d in self.checks:
            lines.append(f"  [{'ok' if ok else 'FAIL'}] {c}" + (f" -- {d}" if d and not ok else ""))
        return "\n".join(lines)


def _check_et1(inst: Instance, report: AxiomReport):
    spec = inst.spec
    p = inst.p
    ok = True
    detail = ""
    # identity actions are identities
    for c in spec.objects:
        for a in spec.objects:
            d = inst.ext.dim(c, a)
            if not d:
                continue
            ida = spec.identity[a]
            m = zeros(d, d)
            for k in range(spec.dim(a, a)):
                if ida[k]:
                    m = (m + ida[k] * inst.ext.cov_mat(a, a, k, c)) % p
            if not np.array_equal(m, linalg.eye(d)):
                ok, detail = False, f"covariant identity action not id on E({c},{a})"
            idc = spec.identity[c]
            m = zeros(d, d)
            for k in range(spec.dim(c, c)):
                if idc[k]:
                    m = (m + idc[k] * inst.ext.con_mat(c, c, k, a)) % p
            if not np.array_equal(m, linalg.eye(d)):
                ok, detail = False, f"contravariant identity action not id on E({c},{a})"
    # functoriality on composites of basis morphisms
    for x, y, i in spec.basis_pairs():
        for z in spec.objects:
            dyz = spec.dim(y, z)
            for j in range(dyz):
                comp = spec.compose_coords(
                    x, y, z, *(np.eye(spec.dim(x, y), dtype=np.int64)[i], np.eye(dyz, dtype=np.int64)[j])
                )
                for c in spec.objects:
                    if not (inst.ext.dim(c, x) or inst.ext.dim(c, z)):
                        continue
                    lhs = zeros(inst.ext.dim(c, z), inst.ext.dim(c, x))
                    for k in range(spec.dim(x, z)):
                        if comp[k]:
                            lhs = (lhs + comp[k] * inst.ext.cov_mat(x, z, k, c)) % p
                    rhs = (inst.ext.cov_mat(y, z, j, c) @ inst.ext.cov_mat(x, y, i, c)) % p
                    if not np.array_equal(lhs, rhs):
                        ok, detail = False, f"covariant functoriality fails on ({x}->{y}->{z})@{c}"
                for a in spec.objects:
                    if not (inst.ext.dim(x, a) or inst.ext.dim(z, a)):
                        continue
                    lhs = zeros(inst.ext.dim(x, a), inst.ext.dim(z, a))
                    for k in range(spec.dim(x, z)):
                        if comp[k]:
                            lhs = (lhs + comp[k] * inst.ext.con_mat(x, z, k, a)) % p
                    rhs = (inst.ext.con_mat(x, y, i, a) @ inst.ext.con_mat(y, z, j, a)) % p
                    if not np.array_equal(lhs, rhs):
                        ok, detail = False, f"contravariant functoriality fails on ({x}->{y}->{z})@{a}"
    # actions commute: (b_*)(c^*) = (c^*)(b_*)
    for x, y, i in spec.basis_pairs():
        for u, v, j in spec.basis_pairs():
            # b: x->y acts covariantly, c: u->v acts contravariantly
            lhs = (inst.ext.cov_mat(x, y, i, u) @ inst.ext.con_mat(u, v, j, x)) % p
            rhs = (inst.ext.con_mat(u, v, j, y) @ inst.ext.cov_mat(x, y, i, v)) % p
            if not np.array_equal(lhs, rhs):
                ok, detail = False, f"actions do not commute: ({x}->{y})[{i}] vs ({u}->{v})[{j}]"
    report.record("ET1 bifunctor laws", ok, detail)


def _check_et2(inst: Instance, triangles, report: AxiomReport):
    spec = inst.spec
    ok = True
    detail = ""
    # additivity: realize(0) is the canonical split conflation
    for c in spec.objects:
        for a in spec.objects:
            co, ao = Obj((c,)), Obj((a,))
            t = inst.realize(inst.ext_zero(co, ao))
            sp = inst.split_conflation(co, ao)
            if equivalent_conflations(inst, t.conf, sp) is None:
                ok, detail = False, f"realize(0) not split on ({c},{a})"
    # additivity on block-diagonal classes (sampled over indec pairs)
    pairs = [
        (c, a)
        for c in spec.objects
        for a in spec.objects
        if inst.ext.dim(c, a)
    ]
    for (c1, a1) in pairs:
        for (c2, a2) in pairs:
            C = Obj((c1, c2))
            A = Obj((a1, a2))
            sl = inst.ext_block_slices(C, A)
            coords = np.zeros(inst.edim(C, A), dtype=np.int64)
            coords[sl[(0, 0)]] = 1
            coords[sl[(1, 1)]] = 1
            try:
                t = inst.realize(ExtElem(C, A, coords))
            except RealizationMissing:
                continue
            v1 = np.zeros(inst.ext.dim(c1, a1), dtype=np.int64)
            v1[0] = 1
            v2 = np.zeros(inst.ext.dim(c2, a2), dtype=np.int64)
            v2[0] = 1
            t1 = inst.realize(ExtElem(Obj((c1,)), Obj((a1,)), v1))
            t2 = inst.realize(ExtElem(Obj((c2,)), Obj((a2,)), v2))
            ds = direct_sum_triangles(inst, [t1, t2])
            if equivalent_conflations(inst, t.conf, ds.conf) is None:
                ok, detail = False, f"additivity fails on diag({c1},{a1})+({c2},{a2})"
    # realization of morphisms of extensions: basis of the (a, c) space
    for t in triangles:
        for t2 in triangles:
            d1 = hom_dim(spec, t.A, t2.A)
            d3 = hom_dim(spec, t.C, t2.C)
            if d1 + d3 == 0:
                continue
            rows = zeros(inst.edim(t.C, t2.A), d1 + d3)
            for k in range(d1):
                v = np.zeros(d1, dtype=np.int64)
                v[k] = 1
                a = Mor.from_vec(spec, t.A, t2.A, v)
                rows[:, k] = inst.push(a, t.delta).coords
            for k in range(d3):
                v = np.zeros(d3, dtype=np.int64)
                v[k] = 1
                c = Mor.from_vec(spec, t.C, t2.C, v)
                rows[:, d1 + k] = (-inst.pull(c, t2.delta).coords) % inst.p
            ker = kernel_basis(rows, inst.p)
            for col in range(ker.shape[1]):
                a = Mor.from_vec(spec, t.A, t2.A, ker[:d1, col])
                c = Mor.from_vec(spec, t.C, t2.C, ker[d1:, col])
                try:
                    complete_morphism(inst, t, t2, {"a": a, "c": c})
                except NoCompletion:
                    ok, detail = False, f"extension morphism not realizable: {t} -> {t2}"
    report.record("ET2 additive realization", ok, detail)


def _check_et3(inst: Instance, triangles, report: AxiomReport):
    spec = inst.spec
    ok = True
    detail = ""
    for t in triangles:
        for t2 in triangles:
            # basis of commuting left squares (a, b): b.x = x'.a
            d1 = hom_dim(spec, t.A, t2.A)
            d2 = hom_dim(spec, t.B, t2.B)
            if d1 + d2:
                rows = zeros(hom_dim(spec, t.A, t2.B), d1 + d2)
                for k in range(d1):
                    v = np.zeros(d1, dtype=np.int64)
                    v[k] = 1
                    a = Mor.from_vec(spec, t.A, t2.A, v)
                    rows[:, k] = (-compose(t2.x, a).to_vec()) % inst.p
                for k in range(d2):
                    v = np.zeros(d2, dtype=np.int64)
                    v[k] = 1
                    b = Mor.from_vec(spec, t.B, t2.B, v)
                    rows[:, d1 + k] = compose(b, t.x).to_vec()
                ker = kernel_basis(rows, inst.p)
                for col in range(ker.shape[1]):
                    a = Mor.from_vec(spec, t.A, t2.A, ker[:d1, col])
                    b = Mor.from_vec(spec, t.B, t2.B, ker[d1:, col])
                    try:
                        complete_morphism(inst, t, t2, {"a": a, "b": b})
                    except NoCompletion:
                        ok, detail = False, f"(ET3) fails: {t} -> {t2}"
            # dual: commuting right squares (b, c)
            d3 = hom_dim(spec, t.C, t2.C)
            if d2 + d3:
                rows = zeros(hom_dim(spec, t.B, t2.C), d2 + d3)
                for k in range(d2):
                    v = np.zeros(d2, dtype=np.int64)
                    v[k] = 1
                    b = Mor.from_vec(spec, t.B, t2.B, v)
                    rows[:, k] = (-compose(t2.y, b).to_vec()) % inst.p
                for k in range(d3):
                    v = np.zeros(d3, dtype=np.int64)
                    v[k] = 1
                    c = Mor.from_vec(spec, t.C, t2.C, v)
                    rows[:, d2 + k] = compose(c, t.y).to_vec()
                ker = kernel_basis(rows, inst.p)
                for col in range(ker.shape[1]):
                    b = Mor.from_vec(spec, t.B, t2.B, ker[:d2, col])
                    c = Mor.from_vec(spec, t.C, t2.C, ker[d2:, col])
                    try:
                        complete_morphism(inst, t, t2, {"b": b, "c": c})
                    except NoCompletion:
                        ok, detail = False, f"(ET3)op fails: {t} -> {t2}"
    report.record("ET3 and dual completions", ok, detail)


def _check_et4(inst: Instance, triangles, report: AxiomReport):
    ok = True
    detail = ""
    count = 0
    for t1 in triangles:
        for t2 in triangles:
            if t1.B != t2.A or t1.B.is_zero():
                continue
            count += 1
            try:
                et4_glue(inst, t1, t2)
            except SearchExhausted:
                ok, detail = False, f"(ET4) fails on {t1} ; {t2}"
    report.record(f"ET4 gluing ({count} composable pairs)", ok, detail)
    ok = True
    detail = ""
    count = 0
    for t1 in triangles:
        for t2 in triangles:
            if t1.C != t2.B or t1.C.is_zero():
                continue
            count += 1
            try:
                et4op_glue(inst, t1, t2)
            except SearchExhausted:
                ok, detail = False, f"(ET4)op fails on {t1} ; {t2}"
    report.record(f"ET4op gluing ({count} composable-deflation pairs)", ok, detail)


def _check_factor_lemma(inst: Instance, triangles, report: AxiomReport):
    """a factors through x <=> push(a,delta) = pull(c,delta') = 0 <=> c factors
    through y', as subspaces of the morphism space."""
    spec = inst.spec
    ok = True
    detail = ""
    for t in triangles:
        for t2 in triangles:
            basis, dims = triangle_morphism_space(inst, t, t2)
            d1, d2, d3 = dims
            for (a, b, c) in basis:
                fa = factor_right(a, t.x) is not None  # a = h . x for some h
                zero_cls = inst.push(a, t.delta).is_zero() and inst.pull(c, t2.delta).is_zero()
                fc = factor_left(c, t2.y) is not None  # c = y' . h for some h
                # subspace equivalence is checked elementwise on a basis plus
                # pairwise sums (conditions are all linear)
                if not (fa == zero_cls == fc):
                    ok = False
                    detail = f"factor criterion fails between {t} and {t2}"
            for (a1, b1, c1) in basis:
                for (a2, b2, c2) in basis:
                    a = a1.add(a2)
                    c = c1.add(c2)
                    fa = factor_right(a, t.x) is not None
                    zero_cls = inst.push(a, t.delta).is_zero() and inst.pull(c, t2.delta).is_zero()
                    fc = factor_left(c, t2.y) is not None
                    if not (fa == zero_cls == fc):
                        ok = False
                        detail = f"factor criterion fails on a sum between {t} and {t2}"
    report.record("factorization criterion for triangle morphisms", ok, detail)


def _check_projectives(inst: Instance, triangles, report: AxiomReport):
    spec = inst.spec
    deflations = [t.y for t in triangles]
    ok = True
    detail = ""
    for s in spec.objects:
        declared = s in inst.projectives
        computed = inst.is_projective(Obj((s,)), deflations)
        if declared and not computed:
            ok, detail = False, f"declared projective {s} fails the lifting test"
        if not declared and computed and inst.enough_projectives:
            ok, detail = False, f"object {s} is projective but not declared"
    report.record("projectives match lifting test", ok, detail)
    if inst.enough_projectives:
        ok = True
        detail = ""
        for s in spec.objects:
            found = False
            if s in inst.projectives:
                found = True
            else:
                try:
                    t = inst.cover_triangle(s)
                    found = all(m in inst.projectives for m in t.B.summands)
                except NoProjectives:
                    # fall back: search the test triangles for a cover shape
                    for t in triangles:
                        if t.C == Obj((s,)) and all(m in inst.projectives for m in t.B.summands):
                            found = True
                            break
            if not found:
                ok, detail = False, f"no cover conflation from declared projectives onto {s}"
        report.record("enough projectives (constructive)", ok, detail)


def is_injective_obj(inst: Instance, iobj: Obj, inflations=None) -> bool:
    """Extension test: every map out of the first term of an inflation extends."""
    if iobj.is_zero():
        return True
    if inflations is None:
        inflations = [t.x for t in triangle_test_set(inst)]
    for x in inflations:
        for a in hom_basis(inst.spec, x.dom, iobj):
            if factor_right(a, x) is None:
                return False
    return True


def _check_injectives(inst: Instance, triangles, report: AxiomReport):
    spec = inst.spec
    inflations = [t.x for t in triangles]
    ok = True
    detail = ""
    for s in spec.objects:
        declared = s in inst.injectives
        computed = is_injective_obj(inst, Obj((s,)), inflations)
        if declared and not computed:
            ok, detail = False, f"declared injective {s} fails the extension test"
        if not declared and computed and inst.enough_injectives:
            ok, detail = False, f"object {s} is injective but not declared"
    report.record("injectives match extension test", ok, detail)
    if inst.enough_injectives:
        ok = True
        detail = ""
        for s in spec.objects:
            found = False
            if s in inst.injectives:
                found = True
            else:
                try:
                    t = inst.envelope_triangle(s)
                    found = all(m in inst.injectives for m in t.B.summands)
                except NoProjectives:
                    for t in triangles:
                        if t.A == Obj((s,)) and all(m in inst.injectives for m in t.B.summands):
                            found = True
                            break
            if not found:
                ok, detail = False, f"no envelope conflation into declared injectives from {s}"
        report.record("enough injectives (constructive)", ok, detail)


def _check_six_term(inst: Instance, triangles, report: AxiomReport, i_max):
    ok = True
    detail = ""
    for t in triangles:
        fails = six_term_check(inst, t, i_max=i_max)
        if fails:
            ok, detail = False, f"{t}: {fails[0]}"
    report.record(f"six-term exactness (i_max={i_max})", ok, detail)


def _check_class_consistency(inst: Instance, triangles, report: AxiomReport):
    if inst.class_oracle is None:
        return
    ok = True
    detail = ""
    for t in triangles:
        coords = inst.class_oracle(t.conf)
        if coords is None or not np.array_equal(coords % inst.p, t.delta.coords % inst.p):
            ok, detail = False, f"class of realize({t.delta}) differs"
    report.record("realization classes re-compute", ok, detail)


def check_axioms(inst: Instance, i_max: int = 1, pair_bound: int = 1) -> AxiomReport:
    """Exhaustively verify the extriangulated axioms within bounds."""
    report = AxiomReport(inst.name, bounds={
        "pair_bound": pair_bound,
        "max_summands": inst.max_summands,
        "i_max": i_max,
    })
    errs = inst.spec.validate()
    report.record("spectroid laws", not errs, errs[0] if errs else "")
    triangles = triangle_test_set(inst, c_bound=pair_bound, a_bound=pair_bound)
    _check_et1(inst, report)
    _check_et2(inst, triangles, report)
    _check_et3(inst, triangles, report)
    _check_et4(inst, triangles, report)
    _check_factor_lemma(inst, triangles, report)
    _check_six_term(inst, triangles, report, i_max)
    _check_projectives(inst, triangles, report)
    _check_injectives(inst, triangles, report)
    _check_class_consistency(inst, triangles, report)
    return report
