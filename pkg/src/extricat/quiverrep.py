"""Representations of linearly oriented A_n quivers over F_p.

A representation assigns a vector space to each vertex 1..n and a matrix
to each arrow i -> i+1.  Indecomposables are the interval modules [a, b]
(the identity chain supported on a..b).  This module computes Hom spaces
(intertwiners), Ext^1 via the standard cochain presentation

    0 -> Hom(M, N) -> prod_i Hom(M_i, N_i) -> prod_arrows Hom(M_i, N_{i+1})
      -> Ext^1(M, N) -> 0,

extension middles twisted by a cocycle, and explicit direct-sum
decompositions by peeling off interval summands.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .linalg import (
    eye,
    in_row_space,
    inverse,
    kernel_basis,
    rank,
    row_space_basis,
    solve_right,
    zeros,
)

__all__ = [
    "Rep",
    "interval_rep",
    "interval_name",
    "all_intervals",
    "hom_reps",
    "rep_map_compose",
    "ext_cochain_data",
    "twisted_middle",
    "decompose",
    "euler_form",
]


@dataclass(frozen=True)
class Rep:
    """A representation of 1 -> 2 -> ... -> n: dims plus arrow matrices.

    maps[i] is the matrix of V_{i+1} <- V_i with shape (dims[i+1], dims[i])
    acting on column vectors.
    """

    n: int
    p: int
    dims: tuple
    maps: tuple  # n-1 matrices, stored as tuples of tuples for hashability

    @staticmethod
    def make(n, p, dims, maps):
        dims = tuple(int(d) for d in dims)
        frozen = []
        for i in range(n - 1):
            m = np.asarray(maps[i], dtype=np.int64) % p
            if m.shape != (dims[i + 1], dims[i]):
                raise ValueError(f"arrow {i}: shape {m.shape} != {(dims[i+1], dims[i])}")
            frozen.append(tuple(tuple(int(v) for v in row) for row in m))
        return Rep(n, p, dims, tuple(frozen))

    def mat(self, i) -> np.ndarray:
        m = np.array(self.maps[i], dtype=np.int64)
        return m.reshape(self.dims[i + 1], self.dims[i])

    def total_dim(self) -> int:
        return sum(self.dims)

    def composite(self, a, b) -> np.ndarray:
        """Matrix of the composite V_a -> V_b (1-based, a <= b)."""
        m = eye(self.dims[a - 1])
        for i in range(a - 1, b - 1):
            m = (self.mat(i) @ m) % self.p
        return m

    def direct_sum(self, other: "Rep") -> "Rep":
        dims = tuple(self.dims[i] + other.dims[i] for i in range(self.n))
        maps = []
        for i in range(self.n - 1):
            a, b = self.mat(i), other.mat(i)
            m = zeros(dims[i + 1], dims[i])
            m[: a.shape[0], : a.shape[1]] = a
            m[a.shape[0] :, a.shape[1] :] = b
            maps.append(m)
        return Rep.make(self.n, self.p, dims, maps)


def interval_rep(n, p, a, b) -> Rep:
    """The interval module [a, b] (1-based, a <= b <= n)."""
    dims = [1 if a <= i <= b else 0 for i in range(1, n + 1)]
    maps = []
    for i in range(1, n):
        maps.append(np.array([[1]]) if a <= i and i + 1 <= b else zeros(dims[i], dims[i - 1]))
    return Rep.make(n, p, dims, maps)


def interval_name(n, a, b) -> str:
    """Conventional name: P{a} for [a, n], S{a} for simples, I{b} for [1, b]."""
    if b == n:
        return f"P{a}"
    if a == b:
        return f"S{a}"
    if a == 1:
        return f"I{b}"
    return f"M{a}{b}"


def all_intervals(n):
    """All (name, a, b) in canonical order."""
    out = []
    for a in range(1, n + 1):
        for b in range(a, n + 1):
            out.append((interval_name(n, a, b), a, b))
    return sorted(out)


def zero_rep(n, p) -> Rep:
    return Rep.make(n, p, [0] * n, [zeros(0, 0)] * (n - 1))


def sum_of_intervals(n, p, labels, table) -> Rep:
    """Direct sum of interval reps given by a list of names."""
    rep = zero_rep(n, p)
    for name in labels:
        a, b = table[name]
        rep = rep.direct_sum(interval_rep(n, p, a, b))
    return rep


# -- morphisms of representations ----------------------------------------


def _hom_system(m: Rep, w: Rep):
    """Linear system whose kernel is Hom(m, w), in stacked coordinates.

    Unknowns: f_i in Hom(m_i, w_i), flattened vertex by vertex,
    row-major.  Equations: w_alpha f_i - f_{i+1} m_alpha = 0.
    """
    p = m.p
    offs = []
    pos = 0
    for i in range(m.n):
        offs.append(pos)
        pos += w.dims[i] * m.dims[i]
    total = pos
    rows = []
    for i in range(m.n - 1):
        a = m.mat(i)
        b = w.mat(i)
        r, c = w.dims[i + 1], m.dims[i]
        for u in range(r):
            for v in range(c):
                row = zeros(1, total).ravel()
                # (b f_i)_{u,v} = sum_k b[u,k] f_i[k,v]
                for k in range(w.dims[i]):
                    row[offs[i] + k * m.dims[i] + v] += b[u, k]
                # (f_{i+1} a)_{u,v} = sum_k f_{i+1}[u,k] a[k,v]
                for k in range(m.dims[i + 1]):
                    row[offs[i + 1] + u * m.dims[i + 1] + k] -= a[k, v]
                rows.append(row % p)
    sys = np.stack(rows) if rows else zeros(0, total)
    return sys, offs, total


def vec_to_intertwiner(m: Rep, w: Rep, vec, offs):
    mats = []
    for i in range(m.n):
        size = w.dims[i] * m.dims[i]
        mats.append(
            np.asarray(vec[offs[i] : offs[i] + size], dtype=np.int64).reshape(
                w.dims[i], m.dims[i]
            )
        )
    return mats


def hom_reps(m: Rep, w: Rep) -> list:
    """Canonical basis of Hom(m, w): each element a list of n matrices."""
    sys, offs, total = _hom_system(m, w)
    if total == 0:
        return []
    ker = kernel_basis(sys, m.p)
    return [vec_to_intertwiner(m, w, ker[:, j], offs) for j in range(ker.shape[1])]


def intertwiner_to_vec(m: Rep, w: Rep, mats) -> np.ndarray:
    return np.concatenate([np.asarray(f, dtype=np.int64).ravel() for f in mats]) if mats else np.zeros(0, dtype=np.int64)


def rep_map_compose(p, f, g):
    """Vertexwise composite g . f of intertwiner matrix lists."""
    return [(g[i] @ f[i]) % p for i in range(len(f))]


def rep_map_is_iso(p, f):
    from .linalg import is_invertible

    return all(is_invertible(np.asarray(fi, dtype=np.int64), p) for fi in f)


# -- Ext^1 -----------------------------------------------------------------


def ext_cochain_data(c: Rep, a: Rep):
    """Presentation of Ext^1(c, a) = coker(d) on the cochain space.

    Cochains: g_alpha in Hom(c_i, a_{i+1}) per arrow alpha: i -> i+1,
    flattened arrow by arrow.  d sends (f_i)_i to (a_alpha f_i -
    f_{i+1} c_alpha)_alpha.  Returns (dim, projection, section,
    offsets, cochain_dim) with projection @ section = id.
    """
    p = c.p
    offs = []
    pos = 0
    for i in range(c.n - 1):
        offs.append(pos)
        pos += a.dims[i + 1] * c.dims[i]
    cochain_dim = pos
    cols = []
    for i in range(c.n):
        for u in range(a.dims[i]):
            for v in range(c.dims[i]):
                col = zeros(1, cochain_dim).ravel()
                # contribution of f_i = E_{u,v} to arrow i-1 (target side)
                # and arrow i (source side)
                if i >= 1:
                    # -f_i c_alpha at arrow i-1: entry (u, v') -= c[v, v']
                    calpha = c.mat(i - 1)
                    for vp in range(c.dims[i - 1]):
                        col[offs[i - 1] + u * c.dims[i - 1] + vp] -= calpha[v, vp]
                if i < c.n - 1:
                    # a_alpha f_i at arrow i: entry (u', v) += a[u', u]
                    aalpha = a.mat(i)
                    for up in range(a.dims[i + 1]):
                        col[offs[i] + up * c.dims[i] + v] += aalpha[up, u]
                cols.append(col % p)
    d = np.stack(cols, axis=1) if cols else zeros(cochain_dim, 0)
    img = row_space_basis(d.T, p) if d.size else zeros(0, cochain_dim)
    from .linalg import rref

    r = img.shape[0]
    _, pivots = rref(img, p) if r else (img, [])
    free = [k for k in range(cochain_dim) if k not in pivots]
    dim = cochain_dim - r
    proj = zeros(dim, cochain_dim)
    for row, fc in enumerate(free):
        proj[row, fc] = 1
        for trow, pc in enumerate(pivots):
            proj[row, pc] = (-img[trow, fc]) % p
    sect = zeros(cochain_dim, dim)
    for row, fc in enumerate(free):
        sect[fc, row] = 1
    return dim, proj, sect, offs, cochain_dim


def cocycle_mats(c: Rep, a: Rep, vec, offs):
    """Unflatten a cochain vector into per-arrow matrices a_{i+1} x c_i."""
    mats = []
    for i in range(c.n - 1):
        size = a.dims[i + 1] * c.dims[i]
        mats.append(
            np.asarray(vec[offs[i] : offs[i] + size], dtype=np.int64).reshape(
                a.dims[i + 1], c.dims[i]
            )
        )
    return mats


def twisted_middle(c: Rep, a: Rep, cocycle) -> Rep:
    """The extension middle E with E_i = a_i (+) c_i twisted by a cocycle."""
    p = c.p
    dims = [a.dims[i] + c.dims[i] for i in range(c.n)]
    maps = []
    for i in range(c.n - 1):
        m = zeros(dims[i + 1], dims[i])
        am, cm, g = a.mat(i), c.mat(i), cocycle[i]
        m[: a.dims[i + 1], : a.dims[i]] = am
        m[: a.dims[i + 1], a.dims[i] :] = g
        m[a.dims[i + 1] :, a.dims[i] :] = cm
        maps.append(m % p)
    return Rep.make(c.n, p, dims, maps)


def conflation_class_coords(a: Rep, e: Rep, c: Rep, x_mats, y_mats, proj, offs):
    """Ext coordinates of a short exact sequence a >-> e ->> c.

    x_mats/y_mats are the intertwiners; the class is computed from the
    canonical pointwise splitting (solve y s = id with free vars 0).
    """
    p = a.p
    sections = []
    for i in range(a.n):
        s = solve_right(np.asarray(y_mats[i], dtype=np.int64), eye(c.dims[i]), p)
        if s is None:
            raise ValueError("y is not pointwise surjective")
        sections.append(s)
    chunks = []
    for i in range(a.n - 1):
        em, cm = e.mat(i), c.mat(i)
        diff = (em @ sections[i] - sections[i + 1] @ cm) % p
        # diff lands in ker(y_{i+1}) = im(x_{i+1}); pull back along x
        g = solve_right(np.asarray(x_mats[i + 1], dtype=np.int64), diff, p)
        if g is None:
            raise ValueError("cocycle does not lift through the inclusion")
        chunks.append(np.asarray(g, dtype=np.int64).ravel())
    vec = np.concatenate(chunks) if chunks else np.zeros(0, dtype=np.int64)
    return (proj @ vec) % p


# -- decomposition by peeling ----------------------------------------------


def rank_profile_multiplicities(m: Rep):
    """Interval multiplicities from composite ranks.

    mult[a, b] = r(a,b) - r(a-1,b) - r(a,b+1) + r(a-1,b+1) where r(a,b)
    is the rank of the composite map V_a -> V_b (r = 0 out of range).
    """
    n = m.n

    def r(a, b):
        if a < 1 or b > n or a > b:
            return 0
        return rank(m.composite(a, b), m.p)

    mult = {}
    for a in range(1, n + 1):
        for b in range(a, n + 1):
            v = r(a, b) - r(a - 1, b) - r(a, b + 1) + r(a - 1, b + 1)
            if v:
                mult[(a, b)] = v
    return mult


def _kernel_subrep(m: Rep, pi):
    """The pointwise kernel of an intertwiner pi: m -> I, as (rep, incl)."""
    p = m.p
    bases = [kernel_basis(np.asarray(pi[i], dtype=np.int64), p) for i in range(m.n)]
    dims = [b.shape[1] for b in bases]
    maps = []
    for i in range(m.n - 1):
        # m.mat(i) maps ker_i into ker_{i+1}: express in the kernel basis
        img = (m.mat(i) @ bases[i]) % p
        coef = solve_right(bases[i + 1], img, p)
        if coef is None:
            raise RuntimeError("kernel is not a subrepresentation (bug)")
        maps.append(coef)
    sub = Rep.make(m.n, p, dims, maps)
    incl = [bases[i] for i in range(m.n)]
    return sub, incl


def split_off_interval(m: Rep, a, b):
    """Split one copy of [a, b] off m.

    Returns (rest, iota, pi, kappa, sigma) with iota: I -> m,
    pi: m -> I, pi . iota = id, kappa: rest -> m, sigma: m -> rest,
    and (iota | kappa) mutually inverse to (pi ; sigma).
    """
    p = m.p
    iv = interval_rep(m.n, p, a, b)
    ins = hom_reps(iv, m)
    outs = hom_reps(m, iv)
    chosen = None
    for io in ins:
        for po in outs:
            comp = rep_map_compose(p, io, po)  # I -> m -> I
            # End(I) is 1-dimensional; the composite is a scalar
            scalar = 0
            for i in range(m.n):
                if comp[i].size:
                    scalar = int(comp[i].ravel()[0])
                    break
            if scalar % p:
                inv = pow(scalar, p - 2, p)
                po = [(np.asarray(x) * inv) % p for x in po]
                chosen = (io, po)
                break
        if chosen:
            break
    if chosen is None:
        raise ValueError(f"[{a},{b}] is not a direct summand")
    iota, pi = chosen
    rest, incl = _kernel_subrep(m, pi)
    # sigma: m -> rest is (id - iota pi) expressed in the kernel basis
    sigma = []
    for i in range(m.n):
        q = (eye(m.dims[i]) - np.asarray(iota[i]) @ np.asarray(pi[i])) % p
        coef = solve_right(incl[i], q, p)
        if coef is None:
            raise RuntimeError("projection does not land in the kernel (bug)")
        sigma.append(coef)
    kappa = incl
    return rest, iota, pi, kappa, sigma


def decompose(m: Rep):
    """Decompose m into intervals with an explicit isomorphism.

    Returns (labels, incls, projs) where labels is the list of (a, b)
    in canonical order, incls[k]: interval_k -> m and projs[k]: m ->
    interval_k satisfy projs[k] . incls[l] = delta_{kl} id and
    sum_k incls[k] . projs[k] = id_m.
    """
    p = m.p
    mult = rank_profile_multiplicities(m)
    order = sorted(mult)
    labels = []
    incls = []
    projs = []
    current = m
    # to_m[i]: current -> m inclusion, from_m[i]: m -> current projection
    to_m = [eye(d) for d in m.dims]
    from_m = [eye(d) for d in m.dims]
    for (a, b) in order:
        for _ in range(mult[(a, b)]):
            rest, iota, pi, kappa, sigma = split_off_interval(current, a, b)
            labels.append((a, b))
            incls.append([(to_m[i] @ np.asarray(iota[i])) % p for i in range(m.n)])
            projs.append([(np.asarray(pi[i]) @ from_m[i]) % p for i in range(m.n)])
            to_m = [(to_m[i] @ np.asarray(kappa[i])) % p for i in range(m.n)]
            from_m = [(np.asarray(sigma[i]) @ from_m[i]) % p for i in range(m.n)]
            current = rest
    if current.total_dim() != 0:
        raise RuntimeError("peeling left a nonzero remainder (bug)")
    return labels, incls, projs


def euler_form(n, dims_m, dims_w) -> int:
    """<M, W> = dim Hom - dim Ext for the linear A_n quiver."""
    s = sum(dims_m[i] * dims_w[i] for i in range(n))
    s -= sum(dims_m[i] * dims_w[i + 1] for i in range(n - 1))
    return s
