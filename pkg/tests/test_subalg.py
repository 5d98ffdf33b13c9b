import itertools

import numpy as np
import pytest

from horolie.chevalley import LieAlgebra, p_power
from horolie.rootsys import build_root_system, neg
from horolie.subalg import (
    Subalgebra,
    SubalgebraError,
    classify_over_U,
    close_under_bracket,
    close_under_p,
    closure_trial,
    coordinate_span,
    exhaustive_over_U,
    full,
    h_lambda,
    is_bracket_closed,
    is_restricted,
    is_T_stable,
    kb_lie_g2,
    lie_B,
    lie_normalizer,
    lie_T,
    lie_U,
    random_lower_element,
    span,
    weight_decomposition,
    x_lambda,
)


@pytest.fixture(scope="module")
def g2():
    return LieAlgebra(build_root_system("G2"), 3)


def test_span_examples(g2):
    assert span(g2, []).dim == 0
    a1 = LieAlgebra(build_root_system("A1"), 3)
    assert span(a1, [a1.X((1,)), 2 * a1.X((1,))]).dim == 1
    assert span(g2, [g2.X(r) for r in g2.rs.positive_roots]).dim == 6


def test_closure_examples(g2):
    U = lie_U(g2)
    assert close_under_bracket(U) == U
    gens = [g2.X(r) for r in [(-1, 0), (-1, -1), (-2, -1)]] + [x_lambda(g2, 1)]
    S = close_under_bracket(span(g2, list(lie_U(g2).rows()) + list(lie_T(g2).rows()) + gens))
    assert S.dim == 12 and S == h_lambda(g2, 1)
    for p in (3, 5):
        a1 = LieAlgebra(build_root_system("A1"), p)
        assert close_under_bracket(span(a1, [a1.X((1,)), a1.X((-1,))])).dim == 3


def test_closure_idempotent_and_monotone():
    alg = LieAlgebra(build_root_system("B3"), 3)
    rng = np.random.default_rng(5)
    for _ in range(10):
        x = random_lower_element(alg, rng)
        y = random_lower_element(alg, rng)
        S = closure_trial(alg, x)
        assert close_under_bracket(S) == S
        assert is_bracket_closed(S)
        bigger = close_under_bracket(Subalgebra.from_rref(alg, np.vstack([S.basis, y])))
        assert S <= bigger


def test_restricted_examples(g2):
    U = lie_U(g2)
    assert is_restricted(U)
    for lam in (1, 2):
        H = h_lambda(g2, lam)
        H.bracket_closed = True
        assert is_restricted(H)
    with pytest.raises(SubalgebraError):
        is_restricted(span(g2, [g2.X((1, 0)), g2.X((-1, 0))]))


def test_restricted_line_counterexample():
    """x = V1 + 2 V2 + X_a1 in A2 at p = 3: x^[3] = V1 + 2 V2 is off the line."""
    alg = LieAlgebra(build_root_system("A2"), 3)
    x = alg.V(0) + alg.V(1, 2) + alg.X((1, 0))
    assert p_power(x) == alg.V(0) + alg.V(1, 2)
    L = span(alg, [x])
    L.bracket_closed = True
    assert not is_restricted(L)
    # oracle: diag(1,-1,0) + 2 diag(0,1,-1) + E12 over F_3
    X = np.diag([1, 1, -2]) + np.eye(3, k=1, dtype=int) * np.array([1, 0, 0])
    X3 = np.linalg.matrix_power(X, 3) % 3
    assert np.array_equal(X3, np.diag([1, 1, -2]) % 3)


def test_sl2_line_is_restricted():
    alg = LieAlgebra(build_root_system("A1"), 3)
    L = span(alg, [alg.V(0) + alg.X((1,))])
    L.bracket_closed = True
    assert is_restricted(L)


def test_close_under_p(g2):
    a2 = LieAlgebra(build_root_system("A2"), 3)
    x = a2.V(0) + a2.V(1, 2) + a2.X((1, 0))
    S = close_under_p(span(a2, [x]))
    assert S.dim == 2 and is_restricted(S)


def test_t_stability_examples(g2):
    assert is_T_stable(lie_B(g2))
    assert is_T_stable(span(g2, []))
    assert not is_T_stable(h_lambda(g2, 1))


def test_weight_decomposition_kb(g2):
    wd = weight_decomposition(kb_lie_g2(g2))
    assert wd["toral"] == 2
    for r in g2.rs.positive_roots:
        assert wd[r] == 1
    present = {(-1, 0), (-1, -1), (-2, -1)}
    for r in g2.rs.positive_roots:
        assert wd[neg(r)] == (1 if neg(r) in present else 0)
    wh = weight_decomposition(h_lambda(g2, 1))
    assert wh[(0, -1)] == 0 and wh[(-3, -1)] == 0
    wf = weight_decomposition(full(g2))
    assert all(v >= 1 for v in wf.values())


def test_t_stable_decomposition_matches_dim():
    alg = LieAlgebra(build_root_system("C3"), 5)
    rng = np.random.default_rng(2)
    for _ in range(10):
        S = closure_trial(alg, random_lower_element(alg, rng))
        if is_T_stable(S):
            assert sum(weight_decomposition(S).values()) == S.dim


def test_classification(g2):
    for lam in (1, 2):
        v = classify_over_U(closure_trial(g2, x_lambda(g2, lam)))
        assert (v.kind, v.factor, v.lam) == ("HLambda", 0, lam)
        S = close_under_bracket(Subalgebra.from_rref(
            g2, np.vstack([h_lambda(g2, lam).basis, g2.X((0, -1)).vector()])))
        assert classify_over_U(S).kind == "FullFactor"
    g2p5 = LieAlgebra(build_root_system("G2"), 5)
    rng = np.random.default_rng(0)
    for _ in range(20):
        assert classify_over_U(closure_trial(g2p5, random_lower_element(g2p5, rng))).kind == "TStable"
    with pytest.raises(SubalgebraError):
        classify_over_U(lie_T(g2))


def test_hlambda_in_product():
    alg = LieAlgebra(build_root_system("G2xA1"), 3)
    S = closure_trial(alg, x_lambda(alg, 2))
    v = classify_over_U(S)
    assert (v.kind, v.factor, v.lam) == ("HLambda", 0, 2)


def test_normalizers(g2):
    for p in (3, 5):
        a1 = LieAlgebra(build_root_system("A1"), p)
        assert lie_normalizer(lie_B(a1)) == lie_B(a1)
    assert lie_normalizer(full(g2)) == full(g2)
    N = lie_normalizer(h_lambda(g2, 1))
    assert lie_T(g2) <= N
    assert N == h_lambda(g2, 1)


def test_coordinate_span_flags(g2):
    S = coordinate_span(g2, g2.positive_indices())
    assert S == lie_U(g2)


# independent oracle for the A2, p = 3 subalgebra that is not T-stable


def _E(i, j):
    M = np.zeros((3, 3), dtype=np.int64)
    M[i, j] = 1
    return M


def _rank3(rows):
    from horolie import fplinalg

    return fplinalg.rank(np.array([r.reshape(-1) for r in rows]), 3)


def test_sl3_non_t_stable_oracle():
    h1 = _E(0, 0) - _E(1, 1)
    h2 = _E(1, 1) - _E(2, 2)
    y = _E(1, 0) + _E(2, 1)
    basis = [_E(0, 1), _E(1, 2), _E(0, 2), h1, h2, y]
    assert _rank3(basis) == 6
    for a, b in itertools.combinations(basis, 2):
        c = (a @ b - b @ a) % 3
        assert _rank3(basis + [c]) == 6
    assert not (np.linalg.matrix_power(y, 3) % 3).any()
    assert _rank3(basis + [_E(1, 0)]) == 7  # the -alpha1 root line is missing


def test_exhaustive_small_cases():
    def tally(t, p):
        out = {}
        for _, v in exhaustive_over_U(LieAlgebra(build_root_system(t), p)):
            out[v.kind] = out.get(v.kind, 0) + 1
        return out

    assert tally("A1", 3) == {"TStable": 3}
    assert tally("A2", 5) == {"TStable": 13}
    assert tally("A2", 3) == {"TStable": 11, "Unexpected": 2}


@pytest.mark.parametrize("t, pair", [("A2", (0, 1)), ("A3", (0, 1)), ("B3", (0, 1)), ("C3", (0, 1)),
                                     ("D4", (0, 1)), ("F4", (0, 1)), ("F4", (2, 3))])
def test_a2_subdiagram_at_p3_is_not_t_stable(t, pair):
    """X_{-a} + c X_{-b} on an A2 subdiagram: the Cartan block has determinant 3."""
    rs = build_root_system(t)
    i, j = pair

    def gen(alg, c):
        ei = tuple(-1 if k == i else 0 for k in range(rs.rank))
        ej = tuple(-1 if k == j else 0 for k in range(rs.rank))
        return (alg.X(ei) + alg.X(ej, c)).vector(), ei, ej

    for c in (1, 2):
        a3 = LieAlgebra(rs, 3)
        x, ei, ej = gen(a3, c)
        S = closure_trial(a3, x)
        assert classify_over_U(S).kind == "Unexpected"
        assert is_restricted(S) and not is_T_stable(S)
        assert not S.contains(a3.X(ei).vector()) and not S.contains(a3.X(ej).vector())
        a5 = LieAlgebra(rs, 5)
        T = closure_trial(a5, gen(a5, c)[0])
        assert classify_over_U(T).kind == "TStable" and T.dim == S.dim + 2
