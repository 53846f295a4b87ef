"""Finitely presented functors over a finite spectroid.

A right module over a spectroid S is stored pointwise as a
`TableFunctor`: a dimension for every object and an action matrix
F(b): F(y) -> F(x) for every basis morphism b: x -> y, subject to the
functor laws.  A finitely presented functor additionally remembers its
presenting morphism (`FpFunctor` = coker Hom(-, f)).

Isomorphism testing solves the naturality equations and scans the
solution space for pointwise-invertible elements.  `enumerate_modules`
lists all modules up to isomorphism within a total dimension bound by
brute force over action assignments.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .fincat import (
    Mor,
    Obj,
    Spectroid,
    compose,
    hom_basis,
    hom_dim,
    precompose_matrix,
)
from .linalg import is_invertible, kernel_basis, rank, rref, solve_right, zeros

__all__ = [
    "TableFunctor",
    "FpFunctor",
    "NatTrans",
    "yoneda",
    "fp_from_morphism",
    "nat_space",
    "iso_fp",
    "nat_dim",
    "enumerate_modules",
    "OpModule",
    "op_wrap",
    "dual_table_functor",
    "functor_laws_ok",
    "presentation_of_module",
]


@dataclass(frozen=True)
class TableFunctor:
    """Pointwise data of a right module over a spectroid.

    act[(x, y, k)] has shape (dims[x], dims[y]): the action F(y) -> F(x)
    of the k-th basis morphism x -> y.  Missing keys mean zero.
    """

    base: Spectroid
    dims: dict
    act: dict

    def dim(self, z) -> int:
        return self.dims.get(z, 0)

    def total_dim(self) -> int:
        return sum(self.dims.get(z, 0) for z in self.base.objects)

    def dim_vector(self):
        return tuple(self.dims.get(z, 0) for z in self.base.objects)

    def action(self, x, y, k) -> np.ndarray:
        m = self.act.get((x, y, k))
        if m is None:
            m = zeros(self.dim(x), self.dim(y))
        return m

    def action_of(self, f: Mor) -> np.ndarray:
        """Action matrix of a (single-summand-blocks) morphism via linearity.

        f must be a morphism between single indecomposables of the base.
        """
        assert len(f.dom.summands) == 1 and len(f.cod.summands) == 1
        x, y = f.dom.summands[0], f.cod.summands[0]
        out = zeros(self.dim(x), self.dim(y))
        for k, c in enumerate(f.blocks[0][0]):
            if c:
                out = (out + int(c) * self.action(x, y, k)) % self.base.p
        return out

    def is_zero(self) -> bool:
        return self.total_dim() == 0


def functor_laws_ok(F: TableFunctor) -> bool:
    """Identity and composition laws for the stored actions."""
    spec = F.base
    p = spec.p
    for z in spec.objects:
        ide = zeros(F.dim(z), F.dim(z))
        for k, c in enumerate(spec.identity[z]):
            if c:
                ide = (ide + int(c) * F.action(z, z, k)) % p
        if not np.array_equal(ide, np.eye(F.dim(z), dtype=np.int64)):
            return False
    for x in spec.objects:
        for y in spec.objects:
            for z in spec.objects:
                dxy, dyz = spec.dim(x, y), spec.dim(y, z)
                if not dxy or not dyz:
                    continue
                for i in range(dxy):
                    for j in range(dyz):
                        comp = spec.compose_coords(
                            x, y, z,
                            np.eye(dxy, dtype=np.int64)[i],
                            np.eye(dyz, dtype=np.int64)[j],
                        )
                        lhs = zeros(F.dim(x), F.dim(z))
                        for k, c in enumerate(comp):
                            if c:
                                lhs = (lhs + int(c) * F.action(x, z, k)) % p
                        rhs = (F.action(x, y, i) @ F.action(y, z, j)) % p
                        if not np.array_equal(lhs, rhs):
                            return False
    return True


@dataclass(frozen=True)
class FpFunctor:
    """coker Hom(-, f) together with its pointwise table and projections."""

    base: Spectroid
    presentation: Mor
    table: TableFunctor
    projections: dict = field(default_factory=dict, compare=False)

    def dim(self, z) -> int:
        return self.table.dim(z)

    def dim_vector(self):
        return self.table.dim_vector()


def fp_from_morphism(spec: Spectroid, f: Mor) -> FpFunctor:
    """The functor with presentation Hom(-, Y) -> Hom(-, X) -> F -> 0 (f: Y -> X)."""
    p = spec.p
    dims = {}
    projections = {}
    sections = {}
    for z in spec.objects:
        zo = Obj((z,))
        m = zeros(hom_dim(spec, zo, f.cod), hom_dim(spec, zo, f.dom))
        for k, h in enumerate(hom_basis(spec, zo, f.dom)):
            m[:, k] = compose(f, h).to_vec()
        img = m.T  # rows span the image inside Hom(z, X)
        from .linalg import row_space_basis

        w = row_space_basis(img, p) if img.size else zeros(0, hom_dim(spec, zo, f.cod))
        full = hom_dim(spec, zo, f.cod)
        r = w.shape[0]
        _, pivots = rref(w, p) if r else (w, [])
        free = [c for c in range(full) if c not in pivots]
        proj = zeros(full - r, full)
        for row, fc in enumerate(free):
            proj[row, fc] = 1
            for trow, pc in enumerate(pivots):
                proj[row, pc] = (-w[trow, fc]) % p
        sect = zeros(full, full - r)
        for row, fc in enumerate(free):
            sect[fc, row] = 1
        dims[z] = full - r
        projections[z] = proj
        sections[z] = sect
    act = {}
    for x, y, k in spec.basis_pairs():
        if not dims.get(y) or not dims.get(x):
            continue
        b = spec.basis_morphism(spec.basis_names[(x, y)][k])
        pre = precompose_matrix(b, f.cod)  # Hom(y, X) -> Hom(x, X)
        m = (projections[x] @ pre @ sections[y]) % p
        if m.size and np.any(m):
            act[(x, y, k)] = m
    table = TableFunctor(spec, dims, act)
    return FpFunctor(spec, f, table, projections)


def yoneda(spec: Spectroid, x: Obj) -> FpFunctor:
    """The representable functor Hom(-, x), presented by 0 -> x."""
    zero = Mor.zero(spec, Obj(), x)
    return fp_from_morphism(spec, zero)


@dataclass(frozen=True)
class NatTrans:
    source: TableFunctor
    target: TableFunctor
    components: dict  # {obj: matrix target.dim x source.dim}

    def is_iso(self) -> bool:
        p = self.source.base.p
        return all(
            is_invertible(self.components.get(z, zeros(0, 0)), p)
            if (self.source.dim(z) or self.target.dim(z))
            else True
            for z in self.source.base.objects
        )


def _tables(f):
    return f.table if isinstance(f, FpFunctor) else f


def nat_space(f, g):
    """Basis of natural transformations f -> g as lists of components."""
    F, G = _tables(f), _tables(g)
    spec = F.base
    p = spec.p
    offs = {}
    pos = 0
    for z in spec.objects:
        offs[z] = pos
        pos += G.dim(z) * F.dim(z)
    total = pos
    if total == 0:
        return [], offs, 0
    rows = []
    for x, y, k in spec.basis_pairs():
        fx, fy = F.dim(x), F.dim(y)
        gx, gy = G.dim(x), G.dim(y)
        if gx == 0 or fy == 0:
            continue
        fb = F.action(x, y, k)  # F(y) -> F(x)
        gb = G.action(x, y, k)  # G(y) -> G(x)
        # N_x . F(b) = G(b) . N_y  in Hom(F(y), G(x))
        for u in range(gx):
            for v in range(fy):
                row = zeros(1, total).ravel()
                for w in range(fx):
                    row[offs[x] + u * fx + w] += fb[w, v]
                for w in range(gy):
                    row[offs[y] + w * fy + v] -= gb[u, w]
                rows.append(row % p)
    sys = np.stack(rows) if rows else zeros(0, total)
    ker = kernel_basis(sys, p)
    basis = []
    for col in range(ker.shape[1]):
        comp = {}
        for z in spec.objects:
            size = G.dim(z) * F.dim(z)
            comp[z] = ker[offs[z] : offs[z] + size, col].reshape(G.dim(z), F.dim(z))
        basis.append(comp)
    return basis, offs, total


def nat_dim(f, g) -> int:
    basis, _, total = nat_space(f, g)
    return len(basis) if total else 0


def iso_fp(f, g, cap: int = 4096) -> NatTrans | None:
    """An invertible natural transformation f -> g, or None."""
    F, G = _tables(f), _tables(g)
    if F.base is not G.base and F.base.objects != G.base.objects:
        raise ValueError("functors live over different bases")
    if F.dim_vector() != G.dim_vector():
        return None
    spec = F.base
    p = spec.p
    if F.total_dim() == 0:
        return NatTrans(F, G, {z: zeros(0, 0) for z in spec.objects})
    basis, offs, total = nat_space(F, G)
    k = len(basis)
    count = 0
    for coeffs in itertools.product(range(p), repeat=k):
        if not any(coeffs):
            continue
        comp = {}
        good = True
        for z in spec.objects:
            m = zeros(G.dim(z), F.dim(z))
            for t, c in enumerate(coeffs):
                if c:
                    m = (m + c * basis[t][z]) % p
            if F.dim(z) and not is_invertible(m, p):
                good = False
                break
            comp[z] = m
        if good:
            return NatTrans(F, G, comp)
        count += 1
        if count >= cap:
            break
    return None


def enumerate_modules(spec: Spectroid, total_dim_bound: int):
    """All modules with total dimension <= bound, one per iso class.

    Deterministic order: by (total dim, dim vector, action tuples).
    """
    p = spec.p
    objs = spec.objects
    found = []
    # zero module first
    found.append(TableFunctor(spec, {z: 0 for z in objs}, {}))
    basis_list = list(spec.basis_pairs())
    for total in range(1, total_dim_bound + 1):
        for dims_tuple in _compositions(total, len(objs)):
            dims = dict(zip(objs, dims_tuple))
            slots = []
            for (x, y, k) in basis_list:
                slots.append(((x, y, k), dims[x] * dims[y]))
            sizes = [s for _, s in slots]
            for assignment in itertools.product(
                *[itertools.product(range(p), repeat=s) for s in sizes]
            ):
                act = {}
                for ((key, s), vals) in zip(slots, assignment):
                    x, y, k = key
                    if s:
                        m = np.array(vals, dtype=np.int64).reshape(dims[x], dims[y])
                        if np.any(m):
                            act[key] = m
                cand = TableFunctor(spec, dims, act)
                if not functor_laws_ok(cand):
                    continue
                if any(
                    rep.dim_vector() == cand.dim_vector() and iso_fp(rep, cand)
                    for rep in found
                ):
                    continue
                found.append(cand)
    return found


def _compositions(total, parts):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


@dataclass(frozen=True)
class OpModule:
    """A module over an opposite spectroid viewed as an object of the
    doubly-opposite module category: comparisons keep iso semantics but
    morphism directions are reversed by the callers."""

    table: TableFunctor


def op_wrap(f) -> OpModule:
    return OpModule(_tables(f))


def presentation_of_module(spec: Spectroid, F: TableFunctor) -> Mor:
    """A presenting morphism f with coker Hom(-, f) isomorphic to F.

    X collects one copy of z per basis vector of F(z); the canonical
    evaluation epi Hom(-, X) -> F has pointwise kernels, and Y collects
    one copy of w per kernel basis vector at w.
    """
    p = spec.p
    x_summands = []
    slot = []  # (object, which basis vector of F(z))
    for z in spec.objects:
        for t in range(F.dim(z)):
            x_summands.append(z)
            slot.append((z, t))
    X = Obj(tuple(x_summands))

    def eval_matrix(w):
        cols = hom_dim(spec, Obj((w,)), X)
        m = zeros(F.dim(w), cols)
        pos = 0
        for j, z in enumerate(X.summands):
            zslot = slot[j][1]
            for k in range(spec.dim(w, z)):
                act = F.action(w, z, k)  # F(z) -> F(w)
                if act.size:
                    m[:, pos] = act[:, zslot]
                pos += 1
        return m

    y_summands = []
    y_vectors = []
    for w in spec.objects:
        ew = eval_matrix(w)
        if ew.shape[1] == 0:
            continue
        ker = kernel_basis(ew, p)
        for col in range(ker.shape[1]):
            y_summands.append(w)
            y_vectors.append(ker[:, col])
    Y = Obj(tuple(y_summands))
    f = Mor.zero(spec, Y, X)
    for i, (w, vec) in enumerate(zip(y_summands, y_vectors)):
        piece = Mor.from_vec(spec, Obj((w,)), X, vec)
        for j in range(len(X.summands)):
            f.blocks[j][i] = piece.blocks[j][0].copy()
    return f


def dual_table_functor(op_spec: Spectroid, F: TableFunctor) -> TableFunctor:
    """Pointwise vector-space dual: a module over the opposite spectroid.

    The action of the op-basis morphism (y, x, k) on the dual is the
    transpose of the original action of (x, y, k).
    """
    dims = dict(F.dims)
    act = {}
    for (x, y, k), m in F.act.items():
        # m: F(y) -> F(x); transpose: DF(x) -> DF(y), an action for the
        # op-morphism y -> x, keyed (y, x, k) over the opposite spectroid
        act[(y, x, k)] = m.T.copy()
    return TableFunctor(op_spec, dims, act)
