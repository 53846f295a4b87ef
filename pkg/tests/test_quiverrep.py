import itertools

import numpy as np
import pytest

from extricat.linalg import eye
from extricat.quiverrep import (
    Rep,
    all_intervals,
    conflation_class_coords,
    cocycle_mats,
    decompose,
    euler_form,
    ext_cochain_data,
    hom_reps,
    interval_name,
    interval_rep,
    rank_profile_multiplicities,
    rep_map_compose,
    twisted_middle,
)


def hom_formula(a, b, c, d):
    """Closed form: dim Hom([a,b],[c,d]) for the linear orientation."""
    return 1 if c <= a <= d <= b else 0


def ext_formula(n, c1, d1, a2, b2):
    """Closed form via the translate [c,d] |-> [c+1,d+1]:
    dim Ext^1([c1,d1], [a2,b2]) = dim Hom([a2,b2], [c1+1,d1+1])."""
    if d1 >= n:
        return 0
    return 1 if c1 + 1 <= a2 <= d1 + 1 <= b2 else 0


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_hom_dims_match_interval_formula(n):
    p = 2
    for (_, a, b) in all_intervals(n):
        for (_, c, d) in all_intervals(n):
            got = len(hom_reps(interval_rep(n, p, a, b), interval_rep(n, p, c, d)))
            assert got == hom_formula(a, b, c, d), (a, b, c, d)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_ext_dims_match_translate_formula(n):
    p = 2
    for (_, c1, d1) in all_intervals(n):
        for (_, a2, b2) in all_intervals(n):
            cr = interval_rep(n, p, c1, d1)
            ar = interval_rep(n, p, a2, b2)
            dim = ext_cochain_data(cr, ar)[0]
            assert dim == ext_formula(n, c1, d1, a2, b2), (c1, d1, a2, b2)


@pytest.mark.parametrize("n,p", [(2, 2), (3, 2), (3, 3)])
def test_euler_form_identity(n, p):
    for (_, a, b) in all_intervals(n):
        for (_, c, d) in all_intervals(n):
            m = interval_rep(n, p, a, b)
            w = interval_rep(n, p, c, d)
            h = len(hom_reps(m, w))
            e = ext_cochain_data(m, w)[0]
            assert h - e == euler_form(n, m.dims, w.dims)


def test_fix_a2_tables():
    p, n = 2, 2
    P1 = interval_rep(n, p, 1, 2)
    P2 = interval_rep(n, p, 2, 2)
    S1 = interval_rep(n, p, 1, 1)
    assert interval_name(2, 1, 2) == "P1"
    assert interval_name(2, 2, 2) == "P2"
    assert interval_name(2, 1, 1) == "S1"
    assert len(hom_reps(P2, P1)) == 1
    assert len(hom_reps(P1, S1)) == 1
    assert len(hom_reps(S1, P1)) == 0
    assert len(hom_reps(P1, P2)) == 0
    assert ext_cochain_data(S1, P2)[0] == 1
    assert ext_cochain_data(S1, P1)[0] == 0
    assert ext_cochain_data(P1, P2)[0] == 0


def test_twisted_middle_of_ar_class_is_p1():
    # The unique nonsplit extension of S1 by P2 has middle P1.
    p, n = 2, 2
    S1 = interval_rep(n, p, 1, 1)
    P2 = interval_rep(n, p, 2, 2)
    dim, proj, sect, offs, cdim = ext_cochain_data(S1, P2)
    assert dim == 1
    vec = (sect @ np.array([1])) % p
    e = twisted_middle(S1, P2, cocycle_mats(S1, P2, vec, offs))
    assert rank_profile_multiplicities(e) == {(1, 2): 1}


def test_class_round_trip():
    # class(conflation built from coords) == coords, for every class
    p, n = 2, 3
    S1 = interval_rep(n, p, 1, 1)
    P2 = interval_rep(n, p, 2, 3)
    dim, proj, sect, offs, cdim = ext_cochain_data(S1, P2)
    assert dim == 1
    for coords in itertools.product(range(p), repeat=dim):
        vec = (sect @ np.array(coords, dtype=np.int64)) % p
        g = cocycle_mats(S1, P2, vec, offs)
        e = twisted_middle(S1, P2, g)
        x = [np.vstack([eye(P2.dims[i]), np.zeros((S1.dims[i], P2.dims[i]), dtype=np.int64)]) for i in range(n)]
        y = [np.hstack([np.zeros((S1.dims[i], P2.dims[i]), dtype=np.int64), eye(S1.dims[i])]) for i in range(n)]
        got = conflation_class_coords(P2, e, S1, x, y, proj, offs)
        assert np.array_equal(got, np.array(coords))


def test_decompose_direct_sum():
    p, n = 2, 3
    parts = [(1, 2), (2, 3), (1, 1), (2, 3)]
    m = interval_rep(n, p, *parts[0])
    for ab in parts[1:]:
        m = m.direct_sum(interval_rep(n, p, *ab))
    labels, incls, projs = decompose(m)
    assert sorted(labels) == sorted(parts)
    # biproduct identities
    for k in range(len(labels)):
        for l in range(len(labels)):
            comp = rep_map_compose(p, incls[l], projs[k])  # I_l -> m -> I_k
            for i in range(n):
                if k == l:
                    want = eye(comp[i].shape[0])
                    assert np.array_equal(comp[i], want[: comp[i].shape[0], : comp[i].shape[1]])
                else:
                    assert not np.any(comp[i])
    total = [np.zeros((m.dims[i], m.dims[i]), dtype=np.int64) for i in range(n)]
    for k in range(len(labels)):
        term = rep_map_compose(p, projs[k], incls[k])  # m -> I_k -> m
        total = [(total[i] + term[i]) % p for i in range(n)]
    for i in range(n):
        assert np.array_equal(total[i], eye(m.dims[i]))


def test_decompose_twisted_is_not_sum_of_parts():
    # the AR extension middle decomposes as [1,2], not [1,1] + [2,2]
    p, n = 2, 2
    S1 = interval_rep(n, p, 1, 1)
    P2 = interval_rep(n, p, 2, 2)
    dim, proj, sect, offs, cdim = ext_cochain_data(S1, P2)
    vec = (sect @ np.array([1])) % p
    e = twisted_middle(S1, P2, cocycle_mats(S1, P2, vec, offs))
    labels, incls, projs = decompose(e)
    assert labels == [(1, 2)]


def test_decompose_scrambled_basis():
    # conjugating by a representation automorphism must not change labels
    p, n = 2, 3
    m = interval_rep(n, p, 1, 3).direct_sum(interval_rep(n, p, 1, 2))
    m = m.direct_sum(interval_rep(n, p, 2, 2))
    # dims of m are (2, 3, 1); pick unipotent automorphisms per vertex
    auto = [np.array(a, dtype=np.int64) for a in (
        [[1, 1], [0, 1]],
        [[1, 0, 1], [0, 1, 1], [0, 0, 1]],
        [[1]],
    )]
    maps = []
    for i in range(n - 1):
        from extricat.linalg import inverse

        maps.append((auto[i + 1] @ m.mat(i) @ inverse(auto[i], p)) % p)
    m2 = Rep.make(n, p, m.dims, maps)
    labels, _, _ = decompose(m2)
    assert sorted(labels) == [(1, 2), (1, 3), (2, 2)]
