"""Dense exact linear algebra over a prime field F_p.

Matrices are numpy int64 arrays with entries reduced mod p.  Everything
here is exact: no floating point, no pivoting heuristics.  Solutions are
canonical (free variables set to zero) so that downstream computations
are reproducible bit for bit.

Intended scale: dimensions up to a couple hundred, p a small prime
(p <= 7, default 2).
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "mat",
    "zeros",
    "eye",
    "rref",
    "rank",
    "solve_right",
    "kernel_basis",
    "row_space_basis",
    "in_row_space",
    "inverse",
    "is_invertible",
]


def _inv_table(p: int) -> list[int]:
    # pow(a, p-2, p) is the inverse for prime p; index 0 unused.
    return [0] + [pow(a, p - 2, p) for a in range(1, p)]


def mat(rows, p: int) -> np.ndarray:
    """Build a matrix over F_p from a nested list (or array)."""
    a = np.asarray(rows, dtype=np.int64)
    if a.ndim == 1:
        a = a.reshape(1, -1)
    if a.ndim != 2:
        raise ValueError(f"expected a 2d grid, got shape {a.shape}")
    return a % p


def zeros(r: int, c: int) -> np.ndarray:
    return np.zeros((r, c), dtype=np.int64)


def eye(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def rref(m: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon form over F_p.

    Returns (R, pivot_cols).  Pivots are 1, with zeros above and below;
    rank(m) == len(pivot_cols).  The input is not modified.
    """
    r = (np.asarray(m, dtype=np.int64) % p).copy()
    nrows, ncols = r.shape
    inv = _inv_table(p)
    pivots: list[int] = []
    row = 0
    for col in range(ncols):
        if row >= nrows:
            break
        sub = r[row:, col]
        nz = np.nonzero(sub)[0]
        if nz.size == 0:
            continue
        piv = row + int(nz[0])
        if piv != row:
            r[[row, piv]] = r[[piv, row]]
        r[row] = (r[row] * inv[int(r[row, col])]) % p
        # Eliminate in all other rows (reduced form).
        other = np.nonzero(r[:, col])[0]
        for i in other:
            if i != row:
                r[i] = (r[i] - r[i, col] * r[row]) % p
        pivots.append(col)
        row += 1
    return r, pivots


def rank(m: np.ndarray, p: int) -> int:
    if m.size == 0:
        return 0
    return len(rref(m, p)[1])


def solve_right(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray | None:
    """Solve a @ x = b over F_p, or return None when no solution exists.

    a is (m x n), b is (m x k); the solution x is (n x k).  The answer is
    canonical: coordinates at non-pivot columns of a are zero.
    """
    a = np.asarray(a, dtype=np.int64) % p
    b = np.asarray(b, dtype=np.int64) % p
    if a.shape[0] != b.shape[0]:
        raise ValueError(f"row mismatch: {a.shape} vs {b.shape}")
    n = a.shape[1]
    k = b.shape[1]
    aug, pivots = rref(np.hstack([a, b]), p)
    # Any pivot inside the b-columns means the system is inconsistent.
    if any(c >= n for c in pivots):
        return None
    x = zeros(n, k)
    for row, col in enumerate(pivots):
        x[col] = aug[row, n:]
    return x


def kernel_basis(m: np.ndarray, p: int) -> np.ndarray:
    """Columns spanning ker(m) over F_p; shape (cols, cols - rank)."""
    m = np.asarray(m, dtype=np.int64) % p
    nrows, ncols = m.shape
    r, pivots = rref(m, p)
    free = [c for c in range(ncols) if c not in pivots]
    basis = zeros(ncols, len(free))
    for j, fc in enumerate(free):
        basis[fc, j] = 1
        for row, pc in enumerate(pivots):
            basis[pc, j] = (-r[row, fc]) % p
    return basis


def row_space_basis(m: np.ndarray, p: int) -> np.ndarray:
    """Canonical basis (rref rows) of the row space of m."""
    if m.size == 0:
        return zeros(0, m.shape[1] if m.ndim == 2 else 0)
    r, pivots = rref(m, p)
    return r[: len(pivots)]

def in_row_space(v: np.ndarray, basis: np.ndarray, p: int) -> bool:
    """Whether vector v lies in the span of the rows of basis."""
    if basis.shape[0] == 0:
        return not np.any(np.asarray(v) % p)
    stacked = np.vstack([basis, np.asarray(v, dtype=np.int64).reshape(1, -1) % p])
    return rank(stacked, p) == rank(basis, p)


def inverse(m: np.ndarray, p: int) -> np.ndarray | None:
    """Inverse of a square matrix, or None when singular."""
    m = np.asarray(m, dtype=np.int64) % p
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError(f"not square: {m.shape}")
    x = solve_right(m, eye(n), p)
    if x is None:
        return None
    return x


def is_invertible(m: np.ndarray, p: int) -> bool:
    return m.shape[0] == m.shape[1] and rank(m, p) == m.shape[0]
