import random

import pytest
import sympy as sp

from horolie.symcheck import (
    SYMBOLIC_CHECKS,
    Mat2,
    QuotientPolyRing,
    b_infinity_matrix,
    verify_b_infinity,
    verify_cor_normalizer,
    verify_lemma_heightr,
)


@pytest.mark.parametrize("name", sorted(SYMBOLIC_CHECKS))
def test_reports_pass(name):
    rep = SYMBOLIC_CHECKS[name](samples=100, seed=3)
    assert rep.passed, rep.failures
    assert rep.details.get("numeric_samples", 100) >= 100


def test_reports_pass_with_1000_samples():
    for fn in (verify_cor_normalizer, verify_lemma_heightr, verify_b_infinity):
        rep = fn(samples=1000, seed=11)
        assert rep.passed, rep.failures
        assert rep.counts >= 1000


def test_heightr_product_is_exact():
    rep = verify_lemma_heightr(samples=1)
    t, x = sp.symbols("t x")
    got = [sp.sympify(e) for e in rep.details["product"]]
    assert [sp.expand(g) for g in got] == [sp.expand(e) for e in (1 - t * x, t**2, -x**2, 1 + t * x)]
    assert rep.details["limit"] == ["1", "0", "-x**2", "1"]


def test_reduce_idempotent_and_canonical():
    R = QuotientPolyRing(["t", "u", "x"], ["t*u - 1"])
    rng = random.Random(0)
    t, u, x = R["t"], R["u"], R["x"]
    for _ in range(30):
        f = sum(rng.randint(-3, 3) * t**rng.randint(0, 3) * u**rng.randint(0, 3) * x**rng.randint(0, 2)
                for _ in range(4))
        g = R.reduce(f)
        assert R.reduce(g) == g
        assert R.equal(f, f + (t * u - 1) * (x + 2))
    assert R.is_zero(t * u - 1)
    assert R.mentions(u + x, "u") and not R.mentions(t * u, "u")


def test_quotient_ring_mod2():
    R = QuotientPolyRing(["e"], ["e**4"], modulus=2)
    e = R["e"]
    assert R.is_zero(e**5 + 2 * e)
    assert R.equal((1 + e) ** 2, 1 + e**2)


def test_mat2():
    a, b = sp.symbols("a b")
    M = Mat2(1, a, 0, 1) @ Mat2(1, b, 0, 1)
    assert sp.expand(M.b - (a + b)) == 0 and M.det() == 1
    R = QuotientPolyRing(["a", "b"], ["a**4 - 1"], modulus=2)
    assert not QuotientPolyRing(["a", "b"], [], modulus=2).is_zero(b_infinity_matrix(a, b).det() - 1)
    assert R.is_zero(b_infinity_matrix(R["a"], R["b"]).det() - 1)


def test_b_infinity_details():
    rep = verify_b_infinity(samples=100, seed=1)
    assert rep.passed
    assert rep.counts >= 100
