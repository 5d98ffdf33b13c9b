"""Root systems of simple type A-G and their products, in simple-root coordinates.

Roots are integer tuples of coefficients over the simple roots. Negative roots
are the negated tuples. Nothing here uses a Euclidean embedding: the bilinear
form is recovered from the Cartan matrix and its symmetrizer.

Cartan matrix convention: ``cartan[i][j] = <alpha_j, alpha_i^vee>``, i.e. the
value of the root ``alpha_j`` on the coroot ``V_{alpha_i}``. Simple roots are
numbered as in Bourbaki (so for G2, ``alpha_1`` is short).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

Root = tuple[int, ...]

FAMILIES = "ABCDEFG"

# Known |Phi^+| per type; generation is capped at these values.
_N_POSITIVE = {
    "A": lambda n: n * (n + 1) // 2,
    "B": lambda n: n * n,
    "C": lambda n: n * n,
    "D": lambda n: n * (n - 1),
    "E": lambda n: {6: 36, 7: 63, 8: 120}[n],
    "F": lambda n: 24,
    "G": lambda n: 6,
}


class RootSystemError(ValueError):
    pass


def check_type(family: str, rank: int) -> None:
    family = family.upper()
    ok = (
        (family == "A" and rank >= 1)
        or (family == "B" and rank >= 2)
        or (family == "C" and rank >= 3)
        or (family == "D" and rank >= 4)
        or (family == "E" and rank in (6, 7, 8))
        or (family == "F" and rank == 4)
        or (family == "G" and rank == 2)
    )
    if not ok:
        raise RootSystemError(f"invalid Dynkin type {family}{rank}")


def cartan_matrix(family: str, rank: int) -> list[list[int]]:
    """Cartan matrix of a simple type in Bourbaki numbering."""
    check_type(family, rank)
    n = rank
    A = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i, j, a_ij=-1, a_ji=-1):
        A[i][j] = a_ij
        A[j][i] = a_ji

    if family in "ABCD":
        for i in range(n - 1):
            link(i, i + 1)
        if family == "B":
            # alpha_n short
            link(n - 2, n - 1, -1, -2)
        elif family == "C":
            link(n - 2, n - 1, -2, -1)
        elif family == "D":
            A[n - 2][n - 1] = A[n - 1][n - 2] = 0
            link(n - 3, n - 1)
    elif family == "E":
        # 1-3-4-5-6(-7-8), 2 attached to 4
        link(0, 2)
        link(1, 3)
        for i in range(2, n - 1):
            link(i, i + 1)
    elif family == "F":
        link(0, 1)
        link(1, 2, -1, -2)  # alpha_1, alpha_2 long; alpha_3, alpha_4 short
        link(2, 3)
    elif family == "G":
        link(0, 1, -3, -1)  # alpha_1 short
    return A


def _symmetrizer(A: list[list[int]]) -> list[int]:
    """Integers d_i with d_i A[i][j] = d_j A[j][i], smallest entry 1 per component.

    ``d_i`` is half the squared length of ``alpha_i``.
    """
    n = len(A)
    d: list = [None] * n
    from fractions import Fraction

    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        comp = [start]
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if j != i and A[i][j] != 0 and d[j] is None:
                    d[j] = d[i] * A[i][j] / A[j][i]
                    comp.append(j)
                    stack.append(j)
        m = min(d[i] for i in comp)
        for i in comp:
            d[i] = d[i] / m
    out = [int(x) for x in d]
    assert all(Fraction(x) == y for x, y in zip(out, d))
    return out


@dataclass(frozen=True)
class RootAttributes:
    support: frozenset[int]
    length: int
    is_short: bool
    is_simple: bool


@dataclass(frozen=True, eq=False)
class RootSystem:
    """A simple or product root system.

    ``factors`` is a tuple of ``(family, rank)``; simple roots of the factors are
    concatenated in order, so factor ``k`` owns a contiguous block of indices.
    """

    factors: tuple[tuple[str, int], ...]
    cartan: tuple[tuple[int, ...], ...]
    positive_roots: tuple[Root, ...]
    symmetrizer: tuple[int, ...]
    _index: dict = field(repr=False, compare=False)

    @property
    def rank(self) -> int:
        return len(self.cartan)

    @property
    def simple_roots(self) -> tuple[Root, ...]:
        n = self.rank
        return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))

    @cached_property
    def roots(self) -> tuple[Root, ...]:
        """All roots: positives in canonical order, then their negatives."""
        return self.positive_roots + tuple(neg(r) for r in self.positive_roots)

    @cached_property
    def factor_blocks(self) -> tuple[range, ...]:
        blocks = []
        start = 0
        for _, rank in self.factors:
            blocks.append(range(start, start + rank))
            start += rank
        return tuple(blocks)

    def factor_of(self, i: int) -> int:
        for k, block in enumerate(self.factor_blocks):
            if i in block:
                return k
        raise IndexError(i)

    def is_simple_system(self) -> bool:
        return len(self.factors) == 1

    def __eq__(self, other):
        return (
            isinstance(other, RootSystem)
            and self.factors == other.factors
            and self.cartan == other.cartan
        )

    def __hash__(self):
        return hash((self.factors, self.cartan))

    def __repr__(self):
        return f"RootSystem({self.name})"

    @property
    def name(self) -> str:
        return "x".join(f"{f}{r}" for f, r in self.factors)

    # -- queries -----------------------------------------------------------

    def _check_dim(self, v: Sequence[int]) -> Root:
        v = tuple(int(x) for x in v)
        if len(v) != self.rank:
            raise RootSystemError(f"vector of length {len(v)} in rank {self.rank} system")
        return v

    def is_root(self, v: Sequence[int]) -> bool:
        v = self._check_dim(v)
        return v in self._index

    def is_positive_root(self, v: Sequence[int]) -> bool:
        v = self._check_dim(v)
        return v in self._index and v[self._first_nonzero(v)] > 0

    @staticmethod
    def _first_nonzero(v: Root) -> int:
        for i, x in enumerate(v):
            if x:
                return i
        return 0

    def index(self, root: Sequence[int]) -> int:
        """Position of ``root`` in :attr:`roots`."""
        try:
            return self._index[tuple(root)]
        except KeyError:
            raise RootSystemError(f"{tuple(root)} is not a root of {self.name}") from None

    def pairing(self, beta: Root, i: int) -> int:
        """<beta, alpha_i^vee>, the value of beta on V_{alpha_i}."""
        row = self.cartan[i]
        return sum(c * a for c, a in zip(beta, row))

    def inner(self, x: Root, y: Root) -> int:
        """Symmetric form with (alpha_i, alpha_i) = 2 d_i."""
        total = 0
        for i, xi in enumerate(x):
            if not xi:
                continue
            di = self.symmetrizer[i]
            row = self.cartan[i]
            for j, yj in enumerate(y):
                if yj and row[j]:
                    total += xi * yj * di * row[j]
        return total

    def norm(self, root: Root) -> int:
        """Half the squared length; 1 for short roots."""
        return self.inner(root, root) // 2

    def is_short(self, root: Root) -> bool:
        k = self.factor_of(self._first_nonzero(tuple(root)))
        block = self.factor_blocks[k]
        longest = max(self.symmetrizer[i] for i in block)
        return self.norm(tuple(root)) < longest

    def coroot_coeffs(self, root: Root) -> tuple[int, ...]:
        """Coefficients of root^vee over the simple coroots V_alpha."""
        n = self.norm(tuple(root))
        out = []
        for c, d in zip(root, self.symmetrizer):
            q, r = divmod(c * d, n)
            assert r == 0
            out.append(q)
        return tuple(out)

    def attributes(self, root: Sequence[int]) -> RootAttributes:
        root = self._check_dim(root)
        if root not in self._index:
            raise RootSystemError(f"{root} is not a root of {self.name}")
        support = frozenset(i for i, c in enumerate(root) if c)
        return RootAttributes(
            support=support,
            length=sum(abs(c) for c in root),
            is_short=self.is_short(root),
            is_simple=len(support) == 1 and sum(abs(c) for c in root) == 1,
        )

    def string_bound(self, gamma: Sequence[int], delta: Sequence[int]) -> int:
        """Largest k >= 0 with gamma - k*delta a root."""
        gamma = self._check_dim(gamma)
        delta = self._check_dim(delta)
        if gamma not in self._index or delta not in self._index:
            raise RootSystemError("root_string_bound needs two roots")
        if gamma == delta or gamma == neg(delta):
            raise RootSystemError("root string undefined for gamma = +-delta")
        k = 0
        while add(gamma, delta, -(k + 1)) in self._index:
            k += 1
        return k

    def height_order_key(self, root: Root):
        return (sum(root), tuple(-c for c in root))

    def highest_root(self, factor: int = 0) -> Root:
        block = self.factor_blocks[factor]
        cands = [r for r in self.positive_roots if any(r[i] for i in block)]
        return cands[-1]

    def to_json(self) -> dict:
        return {
            "factors": [[f, r] for f, r in self.factors],
            "positive_roots": [list(r) for r in self.positive_roots],
            "cartan": [list(row) for row in self.cartan],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def neg(v: Root) -> Root:
    return tuple(-x for x in v)


def add(x: Root, y: Root, k: int = 1) -> Root:
    return tuple(a + k * b for a, b in zip(x, y))


def _positive_roots_simple(family: str, rank: int, A: list[list[int]]) -> list[Root]:
    n = rank
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    found = set(simple)
    layer = list(simple)
    cap = _N_POSITIVE[family](rank)
    while layer:
        nxt = []
        for beta in layer:
            for i in range(n):
                if beta == simple[i]:
                    continue
                # alpha_i-string through beta: beta - r a_i .. beta + q a_i, r - q = <beta, a_i^vee>
                r = 0
                while True:
                    cand = list(beta)
                    cand[i] -= r + 1
                    if tuple(cand) in found:
                        r += 1
                    else:
                        break
                q = r - sum(c * a for c, a in zip(beta, A[i]))
                if q > 0:
                    up = list(beta)
                    up[i] += 1
                    up = tuple(up)
                    if up not in found:
                        found.add(up)
                        nxt.append(up)
        layer = nxt
        if len(found) > cap:
            raise RuntimeError(f"root generation diverged for {family}{rank}")
    if len(found) != cap:
        raise RuntimeError(f"{family}{rank}: generated {len(found)} positive roots, expected {cap}")
    return list(found)


def build_root_system(families: Sequence[tuple[str, int]] | str) -> RootSystem:
    """Build a (product) root system from ``[("G", 2), ("A", 1)]`` or ``"G2xA1"``."""
    if isinstance(families, str):
        families = parse_type(families)
    factors = tuple((f.upper(), int(r)) for f, r in families)
    if not factors:
        raise RootSystemError("empty list of factors")
    n = sum(r for _, r in factors)
    cartan = [[0] * n for _ in range(n)]
    roots: list[Root] = []
    offset = 0
    for family, rank in factors:
        A = cartan_matrix(family, rank)
        for i in range(rank):
            for j in range(rank):
                cartan[offset + i][offset + j] = A[i][j]
        for r in _positive_roots_simple(family, rank, A):
            roots.append((0,) * offset + r + (0,) * (n - offset - rank))
        offset += rank
    roots.sort(key=lambda r: (sum(r), tuple(-c for c in r)))
    sym = _symmetrizer(cartan)
    all_roots = tuple(roots) + tuple(neg(r) for r in roots)
    index = {r: k for k, r in enumerate(all_roots)}
    return RootSystem(
        factors=factors,
        cartan=tuple(tuple(row) for row in cartan),
        positive_roots=tuple(roots),
        symmetrizer=tuple(sym),
        _index=index,
    )


def parse_type(text: str) -> list[tuple[str, int]]:
    """Parse ``"G2"``, ``"A1xA2"`` or ``"B3,C3"`` into factor pairs."""
    out = []
    for part in text.replace(",", "x").replace("*", "x").split("x"):
        part = part.strip()
        if not part:
            continue
        family, digits = part[0].upper(), part[1:]
        if family not in FAMILIES or not digits.isdigit():
            raise RootSystemError(f"cannot parse Dynkin type {part!r}")
        check_type(family, int(digits))
        out.append((family, int(digits)))
    if not out:
        raise RootSystemError(f"cannot parse Dynkin type {text!r}")
    return out


def dual(rs: RootSystem) -> RootSystem:
    """Dual root system (transpose Cartan matrix); simple systems only.

    Simple-root indices are kept, so for G2 and F4 the short and long simple
    roots trade places.
    """
    if not rs.is_simple_system():
        raise RootSystemError("dual is only defined here for simple systems")
    (family, rank), = rs.factors
    if family == "B":
        return build_root_system([("C", rank)]) if rank >= 3 else _transposed(rs)
    if family == "C":
        return build_root_system([("B", rank)])
    if family in "FG":
        return _transposed(rs)
    return build_root_system(rs.factors)


def _transposed(rs: RootSystem) -> RootSystem:
    n = rs.rank
    At = [[rs.cartan[j][i] for j in range(n)] for i in range(n)]
    family, rank = rs.factors[0]
    roots = _positive_roots_simple(family, rank, At)
    roots.sort(key=lambda r: (sum(r), tuple(-c for c in r)))
    all_roots = tuple(roots) + tuple(neg(r) for r in roots)
    return RootSystem(
        factors=rs.factors,
        cartan=tuple(tuple(row) for row in At),
        positive_roots=tuple(roots),
        symmetrizer=tuple(_symmetrizer(At)),
        _index={r: k for k, r in enumerate(all_roots)},
    )
