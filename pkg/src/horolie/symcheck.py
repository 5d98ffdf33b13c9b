"""Exact checks of explicit 2x2 matrix identities over polynomial quotient rings.

Normal forms come from sympy's Groebner reduction. Every relation set used
here (x^k - c, t*u - 1, x*z - y*w - 1, each in its own variables) is already a
Groebner basis, so reduction is the plain rewrite of leading monomials and
normal forms are canonical. Each symbolic identity is backed by numeric
specializations computed with ordinary modular arithmetic.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

import sympy as sp


class SymcheckError(ValueError):
    pass


class QuotientPolyRing:
    """Z[vars]/(relations) or F_p[vars]/(relations)."""

    def __init__(self, names: Sequence[str], relations: Sequence[str] = (), modulus: int = 0):
        self.modulus = modulus
        self.symbols = sp.symbols(list(names))
        self.names = tuple(names)
        self._ns = dict(zip(self.names, self.symbols))
        self.relations = [self.parse(r) for r in relations]
        opts = {"modulus": modulus} if modulus else {}
        self._gb = (sp.groebner(self.relations, *self.symbols, order="grevlex", **opts)
                    if self.relations else None)
        self._opts = opts

    def __getitem__(self, name: str) -> sp.Expr:
        return self._ns[name]

    def parse(self, text: str | sp.Expr) -> sp.Expr:
        if isinstance(text, str):
            return sp.sympify(text, locals=self._ns)
        return sp.sympify(text)

    def _coeff_reduce(self, f: sp.Expr) -> sp.Expr:
        if not self.modulus:
            return f
        return sp.Poly(f, *self.symbols, modulus=self.modulus).as_expr()

    def reduce(self, f) -> sp.Expr:
        """Canonical normal form."""
        f = sp.expand(self.parse(f))
        if f == 0:
            return sp.Integer(0)
        if self._gb is not None:
            f = self._gb.reduce(f)[1]
        return sp.expand(self._coeff_reduce(f))

    def equal(self, f, g) -> bool:
        return self.reduce(sp.expand(self.parse(f) - self.parse(g))) == 0

    def is_zero(self, f) -> bool:
        return self.reduce(f) == 0

    def mentions(self, f, name: str) -> bool:
        return self._ns[name] in self.reduce(f).free_symbols


@dataclass(frozen=True)
class Mat2:
    a: sp.Expr
    b: sp.Expr
    c: sp.Expr
    d: sp.Expr

    def __matmul__(self, o: "Mat2") -> "Mat2":
        return Mat2(self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
                    self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d)

    def det(self) -> sp.Expr:
        return self.a * self.d - self.b * self.c

    def entries(self) -> tuple:
        return (self.a, self.b, self.c, self.d)

    def reduced(self, R: QuotientPolyRing) -> "Mat2":
        return Mat2(*(R.reduce(e) for e in self.entries()))

    def subs(self, mapping) -> "Mat2":
        return Mat2(*(sp.sympify(e).subs(mapping) for e in self.entries()))


@dataclass
class SymReport:
    name: str
    passed: bool = True
    counts: int = 0
    details: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    def check(self, label: str, ok: bool, **payload):
        self.counts += 1
        if not ok:
            self.passed = False
            self.failures.append({"check": label, **{k: str(v) for k, v in payload.items()}})


# --- numeric helpers --------------------------------------------------------

def _mm(A, B, p):
    return ((A[0] * B[0] + A[1] * B[2]) % p, (A[0] * B[1] + A[1] * B[3]) % p,
            (A[2] * B[0] + A[3] * B[2]) % p, (A[2] * B[1] + A[3] * B[3]) % p)


def _random_sl2(rng: random.Random, p: int):
    while True:
        x, y, w, z = (rng.randrange(p) for _ in range(4))
        if (x * z - y * w) % p == 1:
            return x, y, w, z


# --- conjugation in SL2 -----------------------------------------------------

def verify_cor_normalizer(samples: int = 100, seed: int = 0) -> SymReport:
    """Bottom-left entry of g (a b; c d) g^{-1} for g = (x y; w z) in SL2."""
    rep = SymReport("sl2-normalizer")
    R = QuotientPolyRing("x y w z a b c d".split(), ["x*z - y*w - 1"])
    x, y, w, z, a, b, c, d = (R[n] for n in "x y w z a b c d".split())
    prod = Mat2(x, y, w, z) @ Mat2(a, b, c, d) @ Mat2(z, -y, -w, x)
    expected = w * a * z + z**2 * c - w**2 * b - z * d * w
    lhs = R.reduce(prod.c)
    rhs = R.reduce(expected)
    rep.details["bottom_left"] = str(lhs)
    rep.check("bottom-left identity", lhs == rhs, got=lhs, expected=rhs)
    # triangular conjugation: w = 0 forces x z = 1
    rep.check("w=0 specialization", R.equal(sp.expand(prod.c.subs(w, 0)), z**2 * c),
              got=R.reduce(prod.c.subs(w, 0)))
    p = 5
    rng = random.Random(seed)
    for _ in range(samples):
        g = _random_sl2(rng, p)
        m = tuple(rng.randrange(p) for _ in range(4))
        ginv = (g[3], -g[1] % p, -g[2] % p, g[0])
        direct = _mm(_mm(g, m, p), ginv, p)[2]
        gx, gy, gw, gz = g
        ma, mb, mc, md = m
        formula = (gw * ma * gz + gz * gz * mc - gw * gw * mb - gz * md * gw) % p
        rep.check("numeric F5", direct == formula, g=g, m=m, direct=direct, formula=formula)
    rep.details["numeric_samples"] = samples
    return rep


def verify_lemma_heightr(samples: int = 100, seed: int = 0) -> SymReport:
    """(t 0; x u)(1 1; 0 1)(u 0; -x t) with t u = 1, and its t -> 0 limit."""
    rep = SymReport("sl2-heightr")
    R = QuotientPolyRing(["t", "u", "x"], ["t*u - 1"])
    t, u, x = R["t"], R["u"], R["x"]
    prod = (Mat2(t, 0, x, u) @ Mat2(1, 1, 0, 1) @ Mat2(u, 0, -x, t)).reduced(R)
    expected = Mat2(1 - t * x, t**2, -x**2, 1 + t * x).reduced(R)
    rep.details["product"] = [str(e) for e in prod.entries()]
    rep.check("product identity", prod == expected, got=prod.entries(), expected=expected.entries())
    # the limit t -> 0 needs entries polynomial in t alone, so u must have cancelled
    no_u = all(not R.mentions(e, "u") for e in prod.entries())
    rep.check("u cancelled before the limit", no_u, entries=prod.entries())
    limit = prod.subs({t: 0}).reduced(R)
    rep.details["limit"] = [str(e) for e in limit.entries()]
    rep.check("limit is u_{-gamma}(-x^2)", limit == Mat2(1, 0, -x**2, 1).reduced(R), got=limit.entries())
    at_x0 = prod.subs({x: 0}).reduced(R)
    rep.check("x=0 specialization", at_x0 == Mat2(1, t**2, 0, 1).reduced(R), got=at_x0.entries())
    p = 7
    rng = random.Random(seed)
    for _ in range(samples):
        tv = rng.randrange(1, p)
        uv = pow(tv, -1, p)
        xv = rng.randrange(p)
        direct = _mm(_mm((tv, 0, xv, uv), (1, 1, 0, 1), p), (uv, 0, -xv % p, tv), p)
        formula = ((1 - tv * xv) % p, tv * tv % p, -xv * xv % p, (1 + tv * xv) % p)
        rep.check("numeric F7", direct == formula, t=tv, x=xv, direct=direct, formula=formula)
    rep.details["numeric_samples"] = samples
    return rep


# --- the characteristic-2 subgroup B(inf) ------------------------------------

def b_infinity_matrix(a, b) -> Mat2:
    return Mat2(a, b, a + a**3, a**3 + (1 + a**2) * b)


class _Trunc:
    """Elements of F_2[e1, e2]/(e1^N, e2^N) as sets of exponent pairs."""

    N = 4

    def __init__(self, terms=frozenset()):
        self.terms = frozenset(terms)

    @classmethod
    def const(cls, c: int):
        return cls({(0, 0)} if c % 2 else set())

    def __add__(self, o):
        return _Trunc(self.terms ^ o.terms)

    __sub__ = __add__

    def __mul__(self, o):
        out = set()
        for i, j in self.terms:
            for k, l in o.terms:
                m = (i + k, j + l)
                if m[0] < self.N and m[1] < self.N:
                    out ^= {m}
        return _Trunc(out)

    def __pow__(self, k: int):
        r = _Trunc.const(1)
        for _ in range(k):
            r = r * self
        return r

    def __eq__(self, o):
        return self.terms == o.terms

    def __hash__(self):
        return hash(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return " + ".join(f"e1^{i}e2^{j}" for i, j in sorted(self.terms)) or "0"

    @classmethod
    def random(cls, rng: random.Random, nilpotent: bool, var: int | None = None):
        terms = set()
        for i in range(cls.N):
            for j in range(cls.N):
                if var == 0 and j:
                    continue
                if var == 1 and i:
                    continue
                if rng.random() < 0.5:
                    terms.add((i, j))
        if nilpotent:
            terms.discard((0, 0))
        return cls(terms)


def _num_mat(a, b):
    one = _Trunc.const(1)
    return (a, b, a + a**3, a**3 + (one + a**2) * b)


def _num_mm(A, B):
    return (A[0] * B[0] + A[1] * B[2], A[0] * B[1] + A[1] * B[3],
            A[2] * B[0] + A[3] * B[2], A[2] * B[1] + A[3] * B[3])


def _on_pattern(M) -> bool:
    one = _Trunc.const(1)
    a, b = M[0], M[1]
    return (a**4 == one and M[2] == a + a**3 and M[3] == a**3 + (one + a**2) * b)


def verify_b_infinity(samples: int = 100, seed: int = 0) -> SymReport:
    rep = SymReport("b-infinity")
    R = QuotientPolyRing(["a", "b", "ap", "bp"], ["a**4 - 1", "ap**4 - 1"], modulus=2)
    a, b, ap, bp = R["a"], R["b"], R["ap"], R["bp"]
    M = b_infinity_matrix(a, b)
    rep.check("det = 1", R.equal(M.det(), 1), det=R.reduce(M.det()))

    prod = M @ b_infinity_matrix(ap, bp)
    a2, b2 = prod.a, prod.b
    rep.check("closure: a''^4 = 1", R.is_zero(a2**4 - 1), got=R.reduce(a2**4 - 1))
    rep.check("closure: entry21", R.equal(prod.c, a2 + a2**3), residue=R.reduce(prod.c - a2 - a2**3))
    rep.check("closure: entry22", R.equal(prod.d, a2**3 + (1 + a2**2) * b2),
              residue=R.reduce(prod.d - a2**3 - (1 + a2**2) * b2))
    rep.details["a''"] = str(R.reduce(a2))
    rep.details["b''"] = str(R.reduce(b2))

    U = b_infinity_matrix(sp.Integer(1), b).reduced(R)
    rep.check("M(1,b) unipotent", U == Mat2(1, b, 0, 1).reduced(R), got=U.entries())

    RT = QuotientPolyRing(["a", "b", "t", "u"], ["a**4 - 1", "t*u - 1"], modulus=2)
    at, bt, t, u = RT["a"], RT["b"], RT["t"], RT["u"]
    conj = Mat2(t, 0, 0, u) @ b_infinity_matrix(at, bt) @ Mat2(u, 0, 0, t)
    ca, cb = conj.a, conj.b
    w21 = RT.reduce(conj.c - (ca + ca**3))
    w22 = RT.reduce(conj.d - (ca**3 + (1 + ca**2) * cb))
    witness = RT.reduce((u**2 + 1) * (at + at**3))
    rep.details["T_witness"] = str(w21)
    rep.check("torus conjugation leaves the pattern", w21 != 0 or w22 != 0, entry21=w21, entry22=w22)
    rep.check("witness is (u^2+1)(a+a^3)", RT.equal(w21, witness), got=w21, expected=witness)

    # tangent space at (1, 0) with e^2 = 0
    RE = QuotientPolyRing(["al", "be", "e"], ["e**2"], modulus=2)
    al, be, e = RE["al"], RE["be"], RE["e"]
    Me = b_infinity_matrix(1 + e * al, e * be).reduced(RE)
    rep.check("a^4 = 1 on the tangent point", RE.is_zero((1 + e * al) ** 4 - 1))
    tangent = [RE.reduce(sp.diff(x, e)) for x in Me.entries()]
    rep.details["tangent"] = [str(x) for x in tangent]
    # (al, be; 0, al) = al*h + be*e_{12} in characteristic 2, i.e. Lie(B)
    rep.check("tangent space is span{h, e}", tangent == [al, be, 0, al], got=tangent)

    # numeric points in the local ring F_2[e1, e2]/(e1^4, e2^4)
    rng = random.Random(seed)
    one = _Trunc.const(1)
    for _ in range(samples):
        x = one + _Trunc.random(rng, True)
        y = _Trunc.random(rng, False)
        x2 = one + _Trunc.random(rng, True)
        y2 = _Trunc.random(rng, False)
        A, B = _num_mat(x, y), _num_mat(x2, y2)
        rep.check("numeric det", A[0] * A[3] - A[1] * A[2] == one)
        rep.check("numeric closure", _on_pattern(_num_mm(A, B)))
    hits = 0
    for _ in range(samples):
        x = one + _Trunc.random(rng, True, var=0)
        y = _Trunc.random(rng, False)
        tv = one + _Trunc.random(rng, True, var=1)
        uv = one
        for _k in range(2 * _Trunc.N):  # inverse of a unipotent unit
            uv = uv * (one + (one + tv * uv))
        if tv * uv != one:
            rep.check("numeric inverse", False, t=tv)
            continue
        C = _num_mm(_num_mm((tv, _Trunc(), _Trunc(), uv), _num_mat(x, y)), (uv, _Trunc(), _Trunc(), tv))
        off = not _on_pattern(C)
        expect_off = bool((uv * uv + one) * (x + x**3))
        rep.check("numeric witness agrees", off == expect_off, a=x, t=tv)
        hits += off
    rep.check("numeric witness found", hits > 0, hits=hits)
    rep.details["numeric_samples"] = samples
    rep.details["numeric_off_pattern"] = hits
    return rep


SYMBOLIC_CHECKS = {
    "sl2-normalizer": verify_cor_normalizer,
    "sl2-heightr": verify_lemma_heightr,
    "b-infinity": verify_b_infinity,
}
