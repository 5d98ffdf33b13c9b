"""Dense linear algebra over F_p on int64 NumPy arrays.

The row-reduction kernels come from the compiled ``_fpkernels`` extension when
it is importable and fall back to NumPy otherwise. Set ``HOROLIE_PURE=1`` to
force the fallback.
"""

from __future__ import annotations

import os

import numpy as np

from . import _fpfallback

BACKEND = "numpy"
_kernels = _fpfallback
if not os.environ.get("HOROLIE_PURE"):
    try:
        from . import _fpkernels as _kernels  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:  # extension not built
        _kernels = _fpfallback


def use_backend(name: str) -> None:
    """Switch kernels at runtime (``"cython"`` or ``"numpy"``); used by benchmarks."""
    global _kernels, BACKEND
    if name == "numpy":
        _kernels = _fpfallback
    elif name == "cython":
        from . import _fpkernels

        _kernels = _fpkernels
    else:
        raise ValueError(name)
    BACKEND = name


def as_fp(M, p: int) -> np.ndarray:
    return np.ascontiguousarray(np.asarray(M, dtype=np.int64) % p)


def rref(M, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon form mod p with zero rows dropped, plus pivot columns."""
    A = as_fp(M, p)
    if A.ndim == 1:
        A = A.reshape(1, -1).copy()
    if A.shape[0] == 0:
        return A, []
    pivots = _kernels.rref_inplace(A, p)
    return A[: len(pivots)].copy(), list(pivots)


def rank(M, p: int) -> int:
    return len(rref(M, p)[1])


def reduce_rows(rows: np.ndarray, basis: np.ndarray, pivots, p: int) -> np.ndarray:
    """Remainders of ``rows`` modulo the span of an RREF ``basis``."""
    R = as_fp(rows, p)
    if R.ndim == 1:
        R = R.reshape(1, -1).copy()
    if len(pivots) and R.shape[0]:
        _kernels.reduce_against(R, np.ascontiguousarray(basis, dtype=np.int64),
                                np.asarray(pivots, dtype=np.int64), p)
    return R


def nullspace(M, p: int) -> np.ndarray:
    """Basis (as rows, RREF) of {x : M x = 0} over F_p."""
    A = as_fp(M, p)
    n = A.shape[1]
    R, pivots = rref(A, p) if A.shape[0] else (A, [])
    free = [c for c in range(n) if c not in set(pivots)]
    N = np.zeros((len(free), n), dtype=np.int64)
    for k, f in enumerate(free):
        N[k, f] = 1
        for r, c in enumerate(pivots):
            N[k, c] = (-R[r, f]) % p
    if len(N):
        N, _ = rref(N, p)
    return N


def left_nullspace(M, p: int) -> np.ndarray:
    """Basis of {y : y M = 0} over F_p."""
    return nullspace(as_fp(M, p).T, p)


def matmul(A, B, p: int) -> np.ndarray:
    return (np.asarray(A, dtype=np.int64) @ np.asarray(B, dtype=np.int64)) % p


def matpow(A, k: int, p: int) -> np.ndarray:
    A = as_fp(A, p)
    out = np.eye(A.shape[0], dtype=np.int64)
    base = A
    while k:
        if k & 1:
            out = matmul(out, base, p)
        base = matmul(base, base, p)
        k >>= 1
    return out


def intersect(A, B, p: int) -> np.ndarray:
    """RREF basis of rowspace(A) ∩ rowspace(B)."""
    A = as_fp(A, p)
    B = as_fp(B, p)
    n = A.shape[1] if A.ndim == 2 and A.size else B.shape[1]
    if A.shape[0] == 0 or B.shape[0] == 0:
        return np.zeros((0, n), dtype=np.int64)
    # y A = z B  <=>  [y z] [A; -B] = 0
    K = left_nullspace(np.vstack([A, (-B) % p]), p)
    if K.shape[0] == 0:
        return np.zeros((0, n), dtype=np.int64)
    return rref(matmul(K[:, : A.shape[0]], A, p), p)[0]
