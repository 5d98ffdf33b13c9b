import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from horolie import fplinalg as fp

PRIMES = [2, 3, 5, 7]


def _mat(draw_shape=(6, 8)):
    return st.tuples(st.sampled_from(PRIMES), st.integers(1, draw_shape[0]), st.integers(1, draw_shape[1]),
                     st.integers(0, 2**31))


def _random(p, m, n, seed):
    return np.random.default_rng(seed).integers(0, p, size=(m, n))


def test_rref_shape(backend):
    R, piv = fp.rref([[2, 4, 1], [1, 2, 0]], 5)
    assert piv == [0, 2]
    assert R.tolist() == [[1, 2, 0], [0, 0, 1]]


@settings(max_examples=60, deadline=None)
@given(_mat())
def test_backends_agree(args):
    p, m, n, seed = args
    M = _random(p, m, n, seed)
    fp.use_backend("numpy")
    ref = fp.rref(M, p)
    try:
        fp.use_backend("cython")
    except ImportError:
        return
    got = fp.rref(M, p)
    fp.use_backend("cython")
    assert ref[1] == got[1] and np.array_equal(ref[0], got[0])


@settings(max_examples=60, deadline=None)
@given(_mat())
def test_nullspace_is_kernel(args):
    p, m, n, seed = args
    M = _random(p, m, n, seed)
    N = fp.nullspace(M, p)
    assert N.shape[0] == n - fp.rank(M, p)
    if N.shape[0]:
        assert not ((M @ N.T) % p).any()


@settings(max_examples=40, deadline=None)
@given(_mat(), st.integers(0, 2**31))
def test_intersection_dimension(args, seed2):
    p, m, n, seed = args
    A = _random(p, m, n, seed)
    B = _random(p, m, n, seed2)
    dim_sum = fp.rank(np.vstack([A, B]), p)
    inter = fp.intersect(A, B, p)
    inter_dim = fp.rank(inter, p) if inter.size else 0
    assert inter_dim == fp.rank(A, p) + fp.rank(B, p) - dim_sum
    for row in inter:
        assert fp.rank(np.vstack([A, row]), p) == fp.rank(A, p)
        assert fp.rank(np.vstack([B, row]), p) == fp.rank(B, p)


def test_reduce_rows(backend):
    p = 7
    M = _random(p, 4, 9, 1)
    R, piv = fp.rref(M, p)
    comb = (3 * M[0] + 5 * M[2]) % p
    assert not fp.reduce_rows(comb.reshape(1, -1), R, piv, p).any()


def test_matpow():
    A = np.array([[0, 1], [0, 0]])
    assert not fp.matpow(A, 2, 3).any()
    assert np.array_equal(fp.matpow(np.eye(3, dtype=int) * 2, 3, 5), np.eye(3, dtype=int) * 3)
