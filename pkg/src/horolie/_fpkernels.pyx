# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled row-reduction kernels over F_p (int64 storage, entries in [0, p))."""

import numpy as np
cimport numpy as cnp

cnp.import_array()


cdef inline long long _inv(long long a, long long p):
    # a != 0 mod p; extended Euclid
    cdef long long t = 0, newt = 1, r = p, newr = a % p, q, tmp
    while newr != 0:
        q = r // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t


def rref_inplace(cnp.int64_t[:, ::1] M, long long p):
    """Reduce ``M`` to reduced row-echelon form mod p in place; return pivot columns."""
    cdef Py_ssize_t nrows = M.shape[0], ncols = M.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef long long inv, f
    pivots = []
    for c in range(ncols):
        if r >= nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if M[i, c] % p != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(ncols):
                M[r, j], M[piv, j] = M[piv, j], M[r, j]
        inv = _inv(M[r, c], p)
        for j in range(c, ncols):
            M[r, j] = (M[r, j] * inv) % p
        for i in range(nrows):
            if i == r:
                continue
            f = M[i, c] % p
            if f == 0:
                continue
            for j in range(c, ncols):
                if M[r, j] != 0:
                    M[i, j] = (M[i, j] - f * M[r, j]) % p
                    if M[i, j] < 0:
                        M[i, j] += p
            M[i, c] = 0
        pivots.append(c)
        r += 1
    return pivots


def reduce_against(cnp.int64_t[:, ::1] rows, cnp.int64_t[:, ::1] basis,
                   cnp.int64_t[::1] pivots, long long p):
    """Subtract from each row its projection onto an RREF basis, in place."""
    cdef Py_ssize_t nrows = rows.shape[0], ncols = rows.shape[1]
    cdef Py_ssize_t k = basis.shape[0], i, j, b
    cdef long long f
    for i in range(nrows):
        for b in range(k):
            f = rows[i, pivots[b]] % p
            if f == 0:
                continue
            for j in range(ncols):
                if basis[b, j] != 0:
                    rows[i, j] = (rows[i, j] - f * basis[b, j]) % p
                    if rows[i, j] < 0:
                        rows[i, j] += p
