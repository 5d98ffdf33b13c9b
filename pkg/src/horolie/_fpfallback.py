"""NumPy implementations of the F_p kernels, used when the extension is not built."""

import numpy as np


def rref_inplace(M: np.ndarray, p: int) -> list[int]:
    nrows, ncols = M.shape
    M %= p
    r = 0
    pivots = []
    for c in range(ncols):
        if r >= nrows:
            break
        nz = np.flatnonzero(M[r:, c])
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            M[[r, piv]] = M[[piv, r]]
        M[r] = (M[r] * pow(int(M[r, c]), -1, p)) % p
        col = M[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            M[hit] = (M[hit] - np.outer(col[hit], M[r])) % p
        pivots.append(c)
        r += 1
    return pivots


def reduce_against(rows: np.ndarray, basis: np.ndarray, pivots: np.ndarray, p: int) -> None:
    if basis.shape[0] == 0 or rows.shape[0] == 0:
        return
    rows[:] = (rows - rows[:, pivots] @ basis) % p
