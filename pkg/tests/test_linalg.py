import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from extricat.linalg import (
    eye,
    in_row_space,
    inverse,
    is_invertible,
    kernel_basis,
    mat,
    rank,
    rref,
    row_space_basis,
    solve_right,
    zeros,
)


def brute_solutions(a, b, p):
    """Oracle: enumerate every column vector x over F_p with a @ x = b."""
    n = a.shape[1]
    out = []
    for coords in itertools.product(range(p), repeat=n):
        x = np.array(coords, dtype=np.int64).reshape(n, 1)
        if np.array_equal((a @ x) % p, b % p):
            out.append(x)
    return out


def test_rref_identity():
    r, piv = rref(eye(2), 2)
    assert np.array_equal(r, eye(2))
    assert piv == [0, 1]


def test_rref_zero():
    r, piv = rref(zeros(3, 3), 2)
    assert not np.any(r)
    assert piv == []


def test_rref_hand_example_gf2():
    # Hand Gaussian elimination: subtract row 0 from row 1 over F_2.
    r, piv = rref(mat([[1, 1], [1, 1]], 2), 2)
    assert np.array_equal(r, mat([[1, 1], [0, 0]], 2))
    assert piv == [0]


def test_solve_identity_returns_rhs():
    b = mat([[1, 0], [1, 1], [0, 1]], 2)
    x = solve_right(eye(3), b, 2)
    assert np.array_equal(x, b)


def test_solve_zero_matrix_nonzero_rhs_absent():
    assert solve_right(zeros(2, 2), mat([[1], [0]], 2), 2) is None


def test_solve_canonical_free_vars_zero():
    # Oracle: all 4 vectors over F_2^2; solutions of [1 1] x = 0 are
    # (0,0) and (1,1); the canonical one sets the free variable to 0.
    a = mat([[1, 1]], 2)
    b = zeros(1, 1)
    sols = brute_solutions(a, b, 2)
    assert sorted(tuple(s.ravel()) for s in sols) == [(0, 0), (1, 1)]
    x = solve_right(a, b, 2)
    assert np.array_equal(x, zeros(2, 1))


def test_solve_dimension_mismatch():
    with pytest.raises(ValueError):
        solve_right(zeros(2, 2), zeros(3, 1), 2)


def test_kernel_identity_empty():
    assert kernel_basis(eye(3), 2).shape == (3, 0)


def test_kernel_zero_full():
    k = kernel_basis(zeros(4, 4), 2)
    assert np.array_equal(k, eye(4))


def test_kernel_hand_example():
    # Oracle: enumerate; ker [1 1] over F_2 = {(0,0),(1,1)}.
    k = kernel_basis(mat([[1, 1]], 2), 2)
    assert k.shape == (2, 1)
    assert np.array_equal(k[:, 0], np.array([1, 1]))


@st.composite
def fp_matrix(draw, p):
    r = draw(st.integers(0, 5))
    c = draw(st.integers(0, 5))
    data = draw(st.lists(st.integers(0, p - 1), min_size=r * c, max_size=r * c))
    return np.array(data, dtype=np.int64).reshape(r, c)


@settings(max_examples=120, deadline=None)
@given(fp_matrix(2), st.data())
def test_rank_nullity_and_solve_exactness(m, data):
    p = 2
    assert rank(m, p) + kernel_basis(m, p).shape[1] == m.shape[1]
    # rref is idempotent
    r, _ = rref(m, p)
    r2, _ = rref(r, p)
    assert np.array_equal(r, r2)
    # solve: either exact or rhs provably outside the column span
    rhs = np.array(
        data.draw(st.lists(st.integers(0, p - 1), min_size=m.shape[0], max_size=m.shape[0])),
        dtype=np.int64,
    ).reshape(-1, 1)
    x = solve_right(m, rhs, p)
    if x is not None:
        assert np.array_equal((m @ x) % p, rhs % p)
    else:
        assert rank(np.hstack([m, rhs]), p) == rank(m, p) + 1


@settings(max_examples=60, deadline=None)
@given(fp_matrix(3))
def test_rank_nullity_mod3(m):
    p = 3
    assert rank(m, p) + kernel_basis(m, p).shape[1] == m.shape[1]
    k = kernel_basis(m, p)
    if k.size:
        assert not np.any((m @ k) % p)


def test_row_space_membership():
    basis = row_space_basis(mat([[1, 1, 0], [0, 1, 1]], 2), 2)
    assert in_row_space(mat([[1, 0, 1]], 2).ravel(), basis, 2)
    assert not in_row_space(mat([[1, 0, 0]], 2).ravel(), basis, 2)


def test_inverse_round_trip():
    m = mat([[1, 1], [0, 1]], 2)
    mi = inverse(m, 2)
    assert np.array_equal((m @ mi) % 2, eye(2))
    assert is_invertible(m, 2)
    assert inverse(mat([[1, 1], [1, 1]], 2), 2) is None
