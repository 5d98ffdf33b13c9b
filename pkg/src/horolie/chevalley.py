"""Chevalley basis arithmetic over F_p.

The basis of Lie(G) is ordered as: X_gamma for gamma in ``rs.roots`` (positive
roots in canonical order, then their negatives), followed by V_alpha for the
simple roots. Relations:

    [V_a, X_g] = <g, a^vee> X_g
    [X_{-g}, X_g] = g^vee          (so [X_{-a}, X_a] = V_a for simple a)
    [X_g, X_d] = N_{g,d} X_{g+d}   when g + d is a root

Structure constants are integers, computed once per root system and reduced
mod p when an algebra is instantiated.

Sign convention: on each non-simple positive root xi, the extraspecial pair
(zeta, eta) is the pair with zeta + eta = xi and zeta minimal in the canonical
order (height, then lexicographically decreasing coefficients); it gets
N_{zeta,eta} = +(q + 1) with q the largest k such that zeta - k*eta is a root.
Every other constant follows from the usual Chevalley relations. Bourbaki's
tables may differ from these by signs; magnitudes never do.
"""

from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

import numpy as np

from . import fplinalg as fp
from .rootsys import Root, RootSystem, add, neg


class LieError(ValueError):
    pass


@dataclass(frozen=True)
class StructureConstantTable:
    """Integer N_{g,d} for every ordered pair of roots with g + d a root."""

    rs: RootSystem
    N: Mapping[tuple[Root, Root], int]

    def __getitem__(self, pair: tuple[Root, Root]) -> int:
        return self.N.get((tuple(pair[0]), tuple(pair[1])), 0)

    def items(self):
        return self.N.items()

    def to_json(self) -> list[dict]:
        return [{"g": list(g), "d": list(d), "N": n} for (g, d), n in self.N.items()]


_TAMPER: dict[RootSystem, dict[tuple[Root, Root], int]] = {}


def structure_constants(rs: RootSystem) -> StructureConstantTable:
    base = _carter_constants(rs)
    if rs not in _TAMPER:
        return base
    return StructureConstantTable(rs, {**base.N, **_TAMPER[rs]})


@contextmanager
def tampered_constants(rs: RootSystem, pairs: Iterable[tuple[Root, Root]]):
    """Fault injection: flip the sign of N_{g,d} (and N_{d,g}) for each pair."""
    base = _carter_constants(rs)
    flips = {}
    for g, d in pairs:
        g, d = tuple(g), tuple(d)
        if (g, d) not in base.N:
            raise LieError(f"{g} + {d} is not a root")
        flips[(g, d)] = -base.N[(g, d)]
        flips[(d, g)] = -base.N[(d, g)]
    _TAMPER[rs] = flips
    integer_brackets.cache_clear()
    try:
        yield
    finally:
        del _TAMPER[rs]
        integer_brackets.cache_clear()


@lru_cache(maxsize=None)
def _carter_constants(rs: RootSystem) -> StructureConstantTable:
    positive = rs.positive_roots
    order = {r: k for k, r in enumerate(positive)}
    roots = set(rs.roots)

    def is_pos(r):
        return r in order

    extraspecial: dict[Root, tuple[Root, Root]] = {}
    for xi in positive:
        if sum(xi) == 1:
            continue
        for zeta in positive:
            eta = add(xi, zeta, -1)
            if eta in order:
                extraspecial[xi] = (zeta, eta)
                break

    memo: dict[tuple[Root, Root], Fraction] = {}

    def norm(r):
        return Fraction(rs.norm(r))

    def N(a: Root, b: Root) -> Fraction:
        c = add(a, b)
        if c not in roots:
            return Fraction(0)
        key = (a, b)
        if key in memo:
            return memo[key]
        if is_pos(a) and is_pos(b):
            zeta, eta = extraspecial[c]
            if (a, b) == (zeta, eta):
                val = Fraction(rs.string_bound(zeta, eta) + 1)
            elif (b, a) == (zeta, eta):
                val = -Fraction(rs.string_bound(zeta, eta) + 1)
            elif order[a] > order[b]:
                val = -N(b, a)
            else:
                # four roots a + b - zeta - eta = 0, no pair opposite
                val = norm(c) / N(zeta, eta) * (
                    _term(N, norm, b, neg(zeta), a, neg(eta))
                    + _term(N, norm, neg(zeta), a, b, neg(eta))
                )
        elif not is_pos(a) and not is_pos(b):
            val = -N(neg(a), neg(b))
        elif is_pos(a):
            if is_pos(c):
                val = norm(c) / norm(a) * N(c, neg(b))
            else:
                val = -norm(c) / norm(b) * N(a, neg(c))
        else:
            val = -N(b, a)
        memo[key] = val
        return val

    table = {}
    for g in rs.roots:
        for d in rs.roots:
            if add(g, d) in roots:
                n = N(g, d)
                if n.denominator != 1 or n == 0:
                    raise RuntimeError(f"non-integral structure constant at {g}, {d}: {n}")
                # Carter's basis has [e_g, e_{-g}] = h_g; ours uses X_{-g} = -e_{-g}.
                sign = _sgn(g) * _sgn(d) * _sgn(add(g, d))
                table[(g, d)] = sign * int(n)
    return StructureConstantTable(rs, table)


def _sgn(r: Root) -> int:
    for x in r:
        if x:
            return 1 if x > 0 else -1
    return 1


def _term(N, norm, s, t, r, u):
    n1 = N(s, t)
    if n1 == 0:
        return Fraction(0)
    n2 = N(r, u)
    if n2 == 0:
        return Fraction(0)
    return n1 * n2 / norm(add(s, t))


@lru_cache(maxsize=None)
def integer_brackets(rs: RootSystem) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Sparse integer bracket table: [b_I, b_J] = sum V * b_K over entries."""
    table = structure_constants(rs)
    nroots = len(rs.roots)
    n = rs.rank
    I, J, K, V = [], [], [], []

    def put(i, j, k, v):
        if v:
            I.append(i)
            J.append(j)
            K.append(k)
            V.append(v)

    for gi, g in enumerate(rs.roots):
        for a in range(n):
            v = rs.pairing(g, a)
            put(nroots + a, gi, gi, v)
            put(gi, nroots + a, gi, -v)
        for di, d in enumerate(rs.roots):
            s = add(g, d)
            if not any(s):
                if _sgn(d) > 0:
                    # [X_{-d}, X_d] = d^vee
                    for a, c in enumerate(rs.coroot_coeffs(d)):
                        put(gi, di, nroots + a, c)
                else:
                    for a, c in enumerate(rs.coroot_coeffs(g)):
                        put(gi, di, nroots + a, -c)
            elif s in rs._index:
                put(gi, di, rs.index(s), table[(g, d)])
    arrs = tuple(np.asarray(x, dtype=np.int64) for x in (I, J, K, V))
    return arrs  # type: ignore[return-value]


class LieAlgebra:
    """Lie(G) over F_p with its Chevalley basis."""

    def __init__(self, rs: RootSystem, p: int):
        if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
            raise LieError(f"p = {p} is not prime")
        self.rs = rs
        self.p = p
        self.nroots = len(rs.roots)
        self.dim = self.nroots + rs.rank
        I, J, K, V = integer_brackets(rs)
        Vp = V % p
        keep = Vp != 0
        self._I, self._J, self._K, self._V = I[keep], J[keep], K[keep], Vp[keep]
        self._ad_basis: list[np.ndarray] | None = None

    def __repr__(self):
        return f"LieAlgebra({self.rs.name}, p={self.p})"

    def __eq__(self, other):
        return isinstance(other, LieAlgebra) and self.rs == other.rs and self.p == other.p

    def __hash__(self):
        return hash((self.rs, self.p))

    # -- basis bookkeeping --------------------------------------------------

    def x_index(self, root) -> int:
        return self.rs.index(tuple(root))

    def v_index(self, i: int) -> int:
        return self.nroots + i

    def label(self, k: int) -> str:
        if k < self.nroots:
            return "X" + str(list(self.rs.roots[k]))
        return f"V{k - self.nroots + 1}"

    def weight(self, k: int) -> Root | None:
        """Root grading of basis vector ``k``; None for the toral part."""
        return self.rs.roots[k] if k < self.nroots else None

    def X(self, root, c: int = 1) -> "LieElement":
        return LieElement(self, {self.x_index(root): c % self.p})

    def V(self, i: int, c: int = 1) -> "LieElement":
        return LieElement(self, {self.v_index(i): c % self.p})

    def zero(self) -> "LieElement":
        return LieElement(self, {})

    def element(self, vec) -> "LieElement":
        vec = np.asarray(vec, dtype=np.int64) % self.p
        return LieElement(self, {int(k): int(vec[k]) for k in np.flatnonzero(vec)})

    def positive_indices(self) -> list[int]:
        return list(range(len(self.rs.positive_roots)))

    def negative_indices(self) -> list[int]:
        return list(range(len(self.rs.positive_roots), self.nroots))

    def toral_indices(self) -> list[int]:
        return list(range(self.nroots, self.dim))

    # -- dense kernels --------------------------------------------------------

    def bracket_vec(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        w = x[self._I] * y[self._J] * self._V
        out = np.bincount(self._K, weights=w % self.p, minlength=self.dim)
        return out.astype(np.int64) % self.p

    def ad(self, x: np.ndarray) -> np.ndarray:
        """Matrix of y -> [x, y]: column j is [x, b_j]."""
        w = (x[self._I] * self._V) % self.p
        flat = np.bincount(self._K * self.dim + self._J, weights=w, minlength=self.dim * self.dim)
        return flat.astype(np.int64).reshape(self.dim, self.dim) % self.p

    def ad_basis(self) -> list[np.ndarray]:
        if self._ad_basis is None:
            eye = np.eye(self.dim, dtype=np.int64)
            self._ad_basis = [self.ad(eye[k]) for k in range(self.dim)]
        return self._ad_basis

    def bracket_rows(self, rows: np.ndarray, y: np.ndarray) -> np.ndarray:
        """[r, y] for every row r."""
        return (-(rows @ self.ad(y).T)) % self.p

    def p_power_vec(self, x: np.ndarray) -> np.ndarray:
        """x^{[p]} by adding one basis term at a time with Jacobson's formula."""
        p = self.p
        x = np.asarray(x, dtype=np.int64) % p
        acc = np.zeros(self.dim, dtype=np.int64)
        acc_pow = np.zeros(self.dim, dtype=np.int64)
        for k in np.flatnonzero(x):
            term = np.zeros(self.dim, dtype=np.int64)
            term[k] = x[k]
            # (c b)^{[p]} = c^p b^{[p]} = c b^{[p]} in F_p
            term_pow = np.zeros(self.dim, dtype=np.int64)
            if k >= self.nroots:
                term_pow[k] = x[k]
            if acc.any():
                acc_pow = (acc_pow + term_pow + self._jacobson_correction(acc, term)) % p
            else:
                acc_pow = term_pow
            acc = (acc + term) % p
        return acc_pow

    def _jacobson_correction(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """sum_i s_i(x, y), with i s_i the coefficient of t^{i-1} in ad(tx + y)^{p-1}(x)."""
        p = self.p
        adx = self.ad(x)
        ady = self.ad(y)
        coeffs = [x.copy()]
        for _ in range(p - 1):
            nxt = [(ady @ coeffs[0]) % p]
            for k in range(1, len(coeffs)):
                nxt.append((adx @ coeffs[k - 1] + ady @ coeffs[k]) % p)
            nxt.append((adx @ coeffs[-1]) % p)
            coeffs = nxt
        total = np.zeros(self.dim, dtype=np.int64)
        for i in range(1, p):
            total = (total + coeffs[i - 1] * pow(i, -1, p)) % p
        return total

    def center(self) -> "np.ndarray":
        """RREF basis of the center: kernel of x -> ad(x)."""
        L = np.stack([m.reshape(-1) for m in self.ad_basis()], axis=1)
        return fp.nullspace(L, self.p)


@dataclass(frozen=True, eq=False)
class LieElement:
    """Sparse F_p-combination of Chevalley basis vectors."""

    algebra: LieAlgebra
    coords: Mapping[int, int]

    def __post_init__(self):
        p = self.algebra.p
        clean = {int(k): int(v) % p for k, v in self.coords.items() if int(v) % p}
        object.__setattr__(self, "coords", clean)

    @property
    def p(self) -> int:
        return self.algebra.p

    def vector(self) -> np.ndarray:
        v = np.zeros(self.algebra.dim, dtype=np.int64)
        for k, c in self.coords.items():
            v[k] = c
        return v

    def _same(self, other: "LieElement"):
        if not isinstance(other, LieElement):
            return NotImplemented
        if other.algebra != self.algebra:
            raise LieError("elements of different Lie algebras")

    def __add__(self, other):
        if self._same(other) is NotImplemented:
            return NotImplemented
        out = dict(self.coords)
        for k, c in other.coords.items():
            out[k] = out.get(k, 0) + c
        return LieElement(self.algebra, out)

    def __neg__(self):
        return LieElement(self.algebra, {k: -c for k, c in self.coords.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, c: int):
        return LieElement(self.algebra, {k: c * v for k, v in self.coords.items()})

    __mul__ = __rmul__

    def __eq__(self, other):
        return (
            isinstance(other, LieElement)
            and other.algebra == self.algebra
            and other.coords == self.coords
        )

    def __hash__(self):
        return hash((self.algebra, frozenset(self.coords.items())))

    def __bool__(self):
        return bool(self.coords)

    def __repr__(self):
        if not self.coords:
            return "0"
        return " + ".join(f"{c}*{self.algebra.label(k)}" for k, c in sorted(self.coords.items()))


def bracket(x: LieElement, y: LieElement) -> LieElement:
    x._same(y)
    alg = x.algebra
    return alg.element(alg.bracket_vec(x.vector(), y.vector()))


def coroot(alg: LieAlgebra, gamma) -> LieElement:
    coeffs = alg.rs.coroot_coeffs(tuple(gamma))
    return LieElement(alg, {alg.v_index(i): c for i, c in enumerate(coeffs)})


def p_power(x: LieElement) -> LieElement:
    alg = x.algebra
    return alg.element(alg.p_power_vec(x.vector()))


def ad_matrix(x: LieElement) -> np.ndarray:
    return x.algebra.ad(x.vector())


def center(rs: RootSystem, p: int):
    from .subalg import Subalgebra

    alg = LieAlgebra(rs, p)
    return Subalgebra.from_rref(alg, alg.center())


def combination(alg: LieAlgebra, terms: Iterable[tuple[int, "LieElement"]]) -> LieElement:
    out = alg.zero()
    for c, e in terms:
        out = out + c * e
    return out
