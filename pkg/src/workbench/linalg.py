"""Dense exact linear algebra over a prime field or the rationals.

Matrices are numpy arrays: int64 residues for prime fields, object arrays
of Fractions for the rationals.
"""
from __future__ import annotations

from typing import Any

import numpy as np

__all__ = [
    "matmul",
    "matvec",
    "rref",
    "rank",
    "solve",
    "nullspace",
    "inverse",
    "identity",
    "scale",
    "IncrementalSpan",
]

_FLOAT_EXACT = 2**52


def identity(F, n: int) -> np.ndarray:
    out = F.zeros((n, n))
    for i in range(n):
        out[i, i] = F.one
    return out


def matmul(F, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    if F.kind != "prime":
        return A.dot(B)
    m = F.modulus
    inner = A.shape[-1]
    bound = inner * (m - 1) ** 2
    if bound < _FLOAT_EXACT:
        # BLAS in double precision is exact below 2**53
        out = np.fmod(A.astype(np.float64) @ B.astype(np.float64), m)
        return out.astype(np.int64)
    if bound < 2**62 and F.dtype is not object:
        return (A @ B) % m
    return (A.astype(object).dot(B.astype(object)) % m).astype(F.dtype)


def matvec(F, A: np.ndarray, v: np.ndarray) -> np.ndarray:
    return matmul(F, A, v.reshape(-1, 1)).reshape(-1)


def scale(F, A: np.ndarray, c: Any) -> np.ndarray:
    if F.kind == "prime":
        return (A * int(c)) % F.modulus
    return A * c


def _nonzero(F, v: np.ndarray) -> np.ndarray:
    if F.kind == "prime":
        return np.nonzero(v)[0]
    return np.array([i for i, x in enumerate(v) if x != 0], dtype=np.int64)


def rref(F, A: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    R = A.copy()
    nrows, ncols = R.shape
    pivots: list[int] = []
    r = 0
    prime = F.kind == "prime"
    m = F.modulus
    for c in range(ncols):
        if r == nrows:
            break
        nz = _nonzero(F, R[r:, c])
        if len(nz) == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            R[[r, i]] = R[[i, r]]
        inv = F.inv(R[r, c])
        R[r] = (R[r] * inv) % m if prime else R[r] * inv
        others = _nonzero(F, R[:, c])
        others = others[others != r]
        if len(others):
            if prime:
                R[others] = (R[others] - np.outer(R[others, c], R[r])) % m
            else:
                R[others] = R[others] - np.outer(R[others, c], R[r])
        pivots.append(c)
        r += 1
    return R, pivots


def rank(F, A: np.ndarray) -> int:
    return len(rref(F, A)[1])


def solve(F, A: np.ndarray, b: np.ndarray) -> np.ndarray | None:
    """One solution x of A x = b (free variables set to zero), or None."""
    nrows, ncols = A.shape
    aug = F.zeros((nrows, ncols + 1))
    aug[:, :ncols] = A
    aug[:, ncols] = b
    R, piv = rref(F, aug)
    if piv and piv[-1] == ncols:
        return None
    x = F.zeros(ncols)
    for row, c in enumerate(piv):
        x[c] = R[row, ncols]
    return x


def nullspace(F, A: np.ndarray) -> np.ndarray:
    """Basis of the right kernel, as the columns of the returned matrix."""
    nrows, ncols = A.shape
    R, piv = rref(F, A)
    free = [c for c in range(ncols) if c not in set(piv)]
    out = F.zeros((ncols, len(free)))
    for t, fc in enumerate(free):
        out[fc, t] = F.one
        for row, pc in enumerate(piv):
            out[pc, t] = F.neg(R[row, fc])
    return out


def inverse(F, A: np.ndarray) -> np.ndarray:
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    aug = F.zeros((n, 2 * n))
    aug[:, :n] = A
    aug[:, n:] = identity(F, n)
    R, piv = rref(F, aug)
    if len(piv) < n or piv[n - 1] != n - 1:
        raise ZeroDivisionError("matrix is singular")
    return R[:, n:].copy()


class IncrementalSpan:
    """Row space grown one vector at a time.

    Stored rows have a unit pivot and vanish at the pivots of earlier rows,
    so reducing in insertion order is a full reduction."""

    def __init__(self, F, length: int) -> None:
        self.F = F
        self.length = length
        self.rows: list[np.ndarray] = []
        self.pivots: list[int] = []

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, v: np.ndarray) -> np.ndarray:
        F = self.F
        v = v.copy()
        prime = F.kind == "prime"
        for piv, row in zip(self.pivots, self.rows):
            c = v[piv]
            if c != 0:
                v = (v - c * row) % F.modulus if prime else v - c * row
        return v

    def add(self, v: np.ndarray) -> bool:
        """Insert v; True when it enlarged the span."""
        F = self.F
        w = self.reduce(v)
        nz = _nonzero(F, w)
        if len(nz) == 0:
            return False
        piv = int(nz[0])
        inv = F.inv(w[piv])
        w = (w * inv) % F.modulus if F.kind == "prime" else w * inv
        self.rows.append(w)
        self.pivots.append(piv)
        return True

    def contains(self, v: np.ndarray) -> bool:
        return len(_nonzero(self.F, self.reduce(v))) == 0
