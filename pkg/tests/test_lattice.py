import random

from hypothesis import given, settings, strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors

from horolie.lattice import CharacterLattice, contains, gcd_all, hnf, lattice_rank, snf_diagonal, vp

matrices = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-12, 12), min_size=n, max_size=n), min_size=0, max_size=4)
    .map(lambda rows: (rows, n)))


def _is_hnf(H, n):
    last = -1
    for row in H:
        piv = next(j for j, x in enumerate(row) if x)
        assert piv > last and row[piv] > 0
        last = piv
    for i, row in enumerate(H):
        piv = next(j for j, x in enumerate(row) if x)
        for other in H[:i]:
            assert 0 <= other[piv] < row[piv]
    return True


@settings(max_examples=200, deadline=None)
@given(matrices)
def test_hnf_shape_and_same_lattice(data):
    rows, n = data
    H = hnf(rows, n)
    assert _is_hnf(H, n)
    assert all(contains(H, r) for r in rows)
    RH = hnf(rows, n)
    assert RH == H and all(contains(hnf(rows + [list(r)], n), r) for r in H)
    assert all(hnf(rows + [list(r)], n) == H for r in H)
    assert len(H) == lattice_rank(rows) if rows else H == []


@settings(max_examples=100, deadline=None)
@given(matrices, st.randoms(use_true_random=False))
def test_hnf_is_a_canonical_form(data, rnd):
    rows, n = data
    # random unimodular row operations leave the lattice unchanged
    mixed = [list(r) for r in rows]
    for _ in range(6):
        if len(mixed) < 2:
            break
        i, j = rnd.sample(range(len(mixed)), 2)
        k = rnd.randint(-3, 3)
        mixed[i] = [a + k * b for a, b in zip(mixed[i], mixed[j])]
    rnd.shuffle(mixed)
    assert hnf(mixed, n) == hnf(rows, n)


@settings(max_examples=200, deadline=None)
@given(matrices)
def test_snf_matches_sympy(data):
    rows, n = data
    ours = snf_diagonal(rows, n)
    if not rows:
        assert ours == []
        return
    theirs = [abs(int(x)) for x in invariant_factors(Matrix(rows), domain=ZZ) if x != 0]
    assert ours == theirs
    assert all(b % a == 0 for a, b in zip(ours, ours[1:]))


def test_small_examples():
    assert hnf([[3, 3]]) == [[3, 3]]
    assert snf_diagonal([[3, 3]]) == [3]
    assert snf_diagonal([[9]]) == [9]
    assert hnf([[2, 0], [0, 4], [1, 1]], 2) == [[1, 1], [0, 2]]
    assert snf_diagonal([[2, 0], [0, 4]]) == [2, 4]
    assert snf_diagonal([[2, 0], [0, 3]]) == [1, 6]


def test_vp_and_gcd():
    assert vp(54, 3) == 3 and vp(5, 3) == 0 and vp(-27, 3) == 3
    assert gcd_all([12, -18, 30]) == 6 and gcd_all([]) == 0


def test_character_lattice():
    L = CharacterLattice(3, (1, None, 0))
    assert L.active == (0, 2) and L.rank == 2 and L.ambient_rank == 3
    assert L.basis() == [[3, 0, 0], [0, 0, 1]]
    assert [6, 0, -5] in L
    assert L.violation([2, 0, 0]) == (0, 2)
    assert L.violation([3, 1, 0]) == (1, 1)
    assert L.to_json() == {"p": 3, "generators": [{"index": 0, "multiplier": 3},
                                                  {"index": 2, "multiplier": 1}]}


def test_contains_random():
    rng = random.Random(0)
    for _ in range(100):
        B = [[rng.randint(-5, 5) for _ in range(3)] for _ in range(2)]
        c = [rng.randint(-4, 4) for _ in range(2)]
        v = [c[0] * a + c[1] * b for a, b in zip(*B)]
        assert contains(hnf(B, 3), v)
        assert contains(hnf(B, 3), [x + 1 for x in v]) == (hnf(B + [[x + 1 for x in v]], 3) == hnf(B, 3))
