"""Integer lattices: Hermite and Smith normal forms, character lattices of parabolics."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence

Matrix = list[list[int]]


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with g = gcd(a, b) >= 0 and a x + b y = g."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def hnf(rows: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    """Row-style Hermite normal form of the lattice spanned by ``rows``.

    Rows are echelon with positive pivots, entries above each pivot lie in
    [0, pivot), and zero rows are dropped. Two generator sets span the same
    lattice iff their HNFs are equal.
    """
    A = [list(map(int, r)) for r in rows]
    if ncols is None:
        ncols = len(A[0]) if A else 0
    r = 0
    for c in range(ncols):
        # gcd-combine everything below r into row r
        for i in range(r + 1, len(A)):
            if A[i][c] == 0:
                continue
            a, b = A[r][c], A[i][c]
            g, x, y = _xgcd(a, b)
            u, v = -b // g, a // g
            ri, rr = A[i], A[r]
            A[r] = [x * s + y * t for s, t in zip(rr, ri)]
            A[i] = [u * s + v * t for s, t in zip(rr, ri)]
        if r < len(A) and A[r][c] != 0:
            if A[r][c] < 0:
                A[r] = [-x for x in A[r]]
            piv = A[r][c]
            for i in range(r):
                q = A[i][c] // piv
                if q:
                    A[i] = [s - q * t for s, t in zip(A[i], A[r])]
            r += 1
        if r >= len(A):
            break
    return [row for row in A[:r] if any(row)]


def snf_diagonal(rows: Sequence[Sequence[int]], ncols: int | None = None) -> list[int]:
    """Nonzero Smith invariants d_1 | d_2 | ... of an integer matrix."""
    A = [list(map(int, r)) for r in rows]
    if not A:
        return []
    m, n = len(A), ncols if ncols is not None else len(A[0])
    diag = []
    t = 0
    while t < min(m, n):
        # pivot: smallest nonzero |entry| in the trailing block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        while True:
            done = True
            piv = A[t][t]
            for i in range(t + 1, m):
                q = A[i][t] // piv
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                if A[i][t]:
                    done = False
            for j in range(t + 1, n):
                q = A[t][j] // piv
                if q:
                    for row in A:
                        row[j] -= q * row[t]
                if A[t][j]:
                    done = False
            if done:
                # divisibility condition on the remaining block
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                            if A[i][j] % piv), None)
                if bad is None:
                    break
                A[t] = [a + b for a, b in zip(A[t], A[bad[0]])]
                continue
            # move the smallest remaining entry of row/col t to the pivot
            cands = [(abs(A[i][t]), i, t) for i in range(t, m) if A[i][t]]
            cands += [(abs(A[t][j]), t, j) for j in range(t, n) if A[t][j]]
            _, i, j = min(cands)
            A[t], A[i] = A[i], A[t]
            for row in A:
                row[t], row[j] = row[j], row[t]
        diag.append(abs(A[t][t]))
        t += 1
    return diag


def vp(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of 0")
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def lattice_rank(rows: Sequence[Sequence[int]]) -> int:
    return len(hnf(rows))


def contains(basis: Sequence[Sequence[int]], v: Sequence[int]) -> bool:
    """Membership of ``v`` in the lattice with HNF ``basis``."""
    v = list(v)
    for row in basis:
        c = next(k for k, x in enumerate(row) if x)
        q, r = divmod(v[c], row[c])
        if r:
            return False
        v = [a - q * b for a, b in zip(v, row)]
    return not any(v)


@dataclass(frozen=True)
class CharacterLattice:
    """X*(P) = ⊕ Z p^{e_nu} ϖ_nu over the active coordinates, inside ⊕ Z ϖ.

    ``exponents[k]`` is None for coordinates in the Levi set (not characters
    of P) and the exponent e_nu otherwise.
    """

    p: int
    exponents: tuple[int | None, ...]

    @property
    def ambient_rank(self) -> int:
        return len(self.exponents)

    @property
    def active(self) -> tuple[int, ...]:
        return tuple(k for k, e in enumerate(self.exponents) if e is not None)

    @property
    def rank(self) -> int:
        return len(self.active)

    def basis(self) -> Matrix:
        n = self.ambient_rank
        return [[self.p ** self.exponents[k] if j == k else 0 for j in range(n)]
                for k in self.active]

    def violation(self, v: Sequence[int]) -> tuple[int, int] | None:
        """First (coordinate, coefficient) keeping ``v`` out of the lattice, if any."""
        for k, (c, e) in enumerate(zip(v, self.exponents)):
            if e is None:
                if c:
                    return (k, c)
            elif c % (self.p ** e):
                return (k, c)
        return None

    def __contains__(self, v) -> bool:
        return self.violation(v) is None

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "generators": [{"index": k, "multiplier": self.p ** self.exponents[k]}
                           for k in self.active],
        }


def gcd_all(xs) -> int:
    g = 0
    for x in xs:
        g = gcd(g, x)
    return g
