"""Exact linear algebra over F_q on integer-index matrices."""

from __future__ import annotations

import numpy as np

from . import kernels
from .gf import Field


def as_array(rows, ncols: int | None = None) -> np.ndarray:
    if isinstance(rows, np.ndarray):
        return np.ascontiguousarray(rows, dtype=np.int64)
    rows = [list(r) for r in rows]
    if not rows:
        return np.zeros((0, ncols or 0), dtype=np.int64)
    return np.array(rows, dtype=np.int64)


def rref(F: Field, M) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns (input is not modified)."""
    A = as_array(M).copy()
    if A.size == 0:
        return A, []
    add, mul, neg, inv = F.tables
    return kernels.rref(A, add, mul, neg, inv)


def rank(F: Field, M) -> int:
    return len(rref(F, M)[1])


def row_basis(F: Field, M) -> np.ndarray:
    R, piv = rref(F, M)
    return R[: len(piv)]


def nullspace(F: Field, M, ncols: int | None = None) -> np.ndarray:
    """Basis (as rows) of {v : M v = 0}."""
    A = as_array(M, ncols)
    n = A.shape[1] if A.ndim == 2 else (ncols or 0)
    R, piv = rref(F, A) if A.size else (A, [])
    free = [c for c in range(n) if c not in set(piv)]
    out = np.zeros((len(free), n), dtype=np.int64)
    neg = F.neg
    for i, fc in enumerate(free):
        out[i, fc] = 1
        for r, pc in enumerate(piv):
            out[i, pc] = neg[int(R[r, fc])]
    return out


def matmul(F: Field, A, B) -> np.ndarray:
    A, B = as_array(A), as_array(B)
    add, mul, _, _ = F.tables
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    for j in range(A.shape[1]):
        out = add[out, mul[A[:, j][:, None], B[j][None, :]]]
    return out


def vecmat(F: Field, v, M) -> np.ndarray:
    return matmul(F, as_array([v], M.shape[0] if hasattr(M, "shape") else None), M)[0]


def solve_left(F: Field, M, w):
    """Some x with x M = w, or None when w is outside the row space of M."""
    M = as_array(M)
    k, n = M.shape
    # augment [M^T | w^T] and reduce
    A = np.concatenate([M.T, as_array([w]).T], axis=1)
    R, piv = rref(F, A)
    if k in piv:
        return None
    x = np.zeros(k, dtype=np.int64)
    for r, pc in enumerate(piv):
        x[pc] = R[r, k]
    return x


def rowspace_equal(F: Field, A, B) -> bool:
    A, B = as_array(A), as_array(B)
    ra = rank(F, A) if A.size else 0
    rb = rank(F, B) if B.size else 0
    if ra != rb:
        return False
    if ra == 0:
        return True
    return rank(F, np.concatenate([A, B], axis=0)) == ra
