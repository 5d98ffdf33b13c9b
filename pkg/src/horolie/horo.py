"""Horospherical data (phi, M): a parabolic plus a sublattice of its characters.

The subgroup H attached to (P, M) is the intersection of the kernels of the
characters in M, taken inside P. Lattices live in the fundamental weight basis
of X*(T) (G simply connected), with extra free coordinates for a central torus.
M is stored in Hermite normal form so equality of data is equality of records.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import fplinalg
from .lattice import CharacterLattice, Matrix, hnf, snf_diagonal
from .parabolic import (
    ParabolicData,
    borel,
    char_lattice,
    enumerate_parabolics,
    image as parabolic_image,
    is_smooth,
    pullback as parabolic_pullback,
)
from .rootsys import RootSystem, build_root_system


class HoroError(ValueError):
    pass


@dataclass(frozen=True)
class HoroDatum:
    P: ParabolicData
    M: tuple[tuple[int, ...], ...]  # HNF rows

    @property
    def ambient_rank(self) -> int:
        return self.P.rs.rank + self.P.central_rank

    def to_json(self) -> dict:
        rank, factors = quotient_invariants(self)
        return {
            "parabolic": self.P.to_json(),
            "M_hnf": [list(r) for r in self.M],
            "smooth": is_smooth_horo(self),
            "torus_rank": rank,
            "invariant_factors": factors,
        }

    def __str__(self):
        gens = ", ".join("(" + ",".join(map(str, r)) + ")" for r in self.M) or "0"
        return f"{self.P} M=<{gens}>"


class FullGroup:
    """Marker for H = G, which has no proper parabolic datum."""

    def __repr__(self):
        return "FULL_GROUP"

    def to_json(self) -> dict:
        return {"kind": "FullGroup"}


FULL_GROUP = FullGroup()


def _check_generators(lat: CharacterLattice, gens: Sequence[Sequence[int]]):
    for g in gens:
        if len(g) != lat.ambient_rank:
            raise HoroError(f"generator {list(g)} has length {len(g)}, expected {lat.ambient_rank}")
        bad = lat.violation(g)
        if bad is not None:
            k, c = bad
            e = lat.exponents[k]
            if e is None:
                raise HoroError(f"coefficient {c} on a{k + 1} is not allowed: a{k + 1} lies in the Levi set")
            raise HoroError(f"coefficient {c} on a{k + 1} is not divisible by {lat.p}^{e}")


def make_horo(P: ParabolicData, generators: Iterable[Sequence[int]] = ()) -> HoroDatum:
    gens = [list(map(int, g)) for g in generators]
    _check_generators(char_lattice(P), gens)
    n = P.rs.rank + P.central_rank
    return HoroDatum(P, tuple(tuple(r) for r in hnf(gens, n)))


def quotient_invariants(d: HoroDatum) -> tuple[int, list[int]]:
    """(rank of M, invariant factors > 1 of X*(T)/M)."""
    diag = snf_diagonal([list(r) for r in d.M], d.ambient_rank) if d.M else []
    return len(diag), [x for x in diag if x > 1]


def is_smooth_horo(d: HoroDatum) -> bool:
    _, factors = quotient_invariants(d)
    return is_smooth(d.P) and all(f % d.P.p for f in factors)


def frobenius_pullback(d: HoroDatum, m: int = 1) -> HoroDatum:
    if m < 1:
        raise HoroError("pullback exponent must be >= 1")
    q = d.P.p ** m
    return make_horo(parabolic_pullback(d.P, m), [[q * x for x in r] for r in d.M])


def _divide_by_p(M: Matrix, n: int, p: int) -> Matrix:
    """HNF of {chi : p chi in M}, given M by HNF rows.

    M ∩ pX* is spanned by pM and the lifts c.M of mod-p left kernel vectors c,
    so dividing those by p gives the answer.
    """
    if not M:
        return []
    kernel = fplinalg.left_nullspace(np.array(M, dtype=np.int64) % p, p)
    gens = [list(r) for r in M]
    for c in kernel.tolist():
        v = [sum(ci * row[j] for ci, row in zip(c, M)) for j in range(n)]
        gens.append([x // p for x in v])
    return hnf(gens, n)


def frobenius_image(d: HoroDatum) -> HoroDatum:
    """Datum of F(H): heights drop by one where positive, M becomes {chi : p chi in M}."""
    return make_horo(parabolic_image(d.P), _divide_by_p([list(r) for r in d.M], d.ambient_rank, d.P.p))


# --- SL2 catalog ------------------------------------------------------------

BORELKIND = "Borel"
FULLKIND = "FullGroup"
MUKIND = "MuSemidirectU"

P2_CATALOG = (
    {
        "label": "B(inf)",
        "p": 2,
        "description": "horospherical, not strongly horospherical; normalizer is itself, Lie algebra equals Lie(B)",
        "check": "b-infinity",
    },
    {
        "label": "A(2,inf)",
        "p": 2,
        "description": "P/H is G_m semidirect alpha_2; outside the (phi, M) correspondence",
        "check": None,
    },
)


def sl2_catalog(p: int, m: int, kind: str, n: int | None = None):
    """Representatives of strongly horospherical subgroups of SL2 up to conjugacy."""
    if m < 0:
        raise HoroError("m must be >= 0")
    if kind in ("B(inf)", "B(infinity)", "Binf"):
        if p == 2:
            raise HoroError("B(inf) at p = 2 has no (phi, M) datum; use the b-infinity symbolic check")
        raise HoroError("B(inf) exists only at p = 2")
    if p == 2:
        raise HoroError("the (phi, M) catalog covers p >= 3; see P2_CATALOG for p = 2 records")
    if kind == FULLKIND:
        return FULL_GROUP
    a1 = build_root_system("A1")
    if kind == BORELKIND:
        d = make_horo(borel(a1, p))
    elif kind == MUKIND:
        if n is None or n < 1:
            raise HoroError("MuSemidirectU needs n >= 1")
        d = make_horo(borel(a1, p), [[n]])
    else:
        raise HoroError(f"unknown SL2 kind {kind!r}")
    return frobenius_pullback(d, m) if m else d


# --- enumeration ------------------------------------------------------------

def _hnf_shapes(n: int, active: Sequence[int], mults: Sequence[int], coeff_max: int):
    """All HNF matrices with pivots on active columns, bounded by coeff_max * multiplier.

    Entries are multiples of the column multiplier (a sublattice of X*(P) in
    scaled coordinates): pivot in 1..coeff_max, above-pivot entries in
    [0, pivot), free entries right of the pivot in [-coeff_max, coeff_max].
    """
    scale = dict(zip(active, mults))
    for k in range(len(active) + 1):
        for pivcols in itertools.combinations(active, k):
            row_opts = []
            for ri, pc in enumerate(pivcols):
                row_opts.append([(pc, piv) for piv in range(1, coeff_max + 1)])
            for pivs in itertools.product(*row_opts) if pivcols else [()]:
                # per-entry choices
                slots = []
                for ri, (pc, piv) in enumerate(pivs):
                    for c in active:
                        if c <= pc:
                            continue
                        if c in pivcols:
                            j = pivcols.index(c)
                            slots.append(((ri, c), range(0, pivs[j][1])))
                        else:
                            slots.append(((ri, c), range(-coeff_max, coeff_max + 1)))
                for vals in itertools.product(*(s[1] for s in slots)):
                    M = [[0] * n for _ in pivs]
                    for ri, (pc, piv) in enumerate(pivs):
                        M[ri][pc] = piv * scale[pc]
                    for ((ri, c), _), v in zip(slots, vals):
                        M[ri][c] = v * scale[c]
                    yield M


def enumerate_horo(rs: RootSystem | str, p: int, r_max: int, coeff_max: int) -> list[HoroDatum]:
    """All canonical data with heights <= r_max and scaled HNF entries bounded by coeff_max."""
    if isinstance(rs, str):
        rs = build_root_system(rs)
    if r_max < 0 or coeff_max < 0:
        raise HoroError("bounds must be >= 0")
    out = []
    seen = set()
    for P in enumerate_parabolics(rs, p, r_max):
        lat = char_lattice(P)
        mults = [p ** lat.exponents[k] for k in lat.active]
        for M in _hnf_shapes(lat.ambient_rank, lat.active, mults, coeff_max):
            d = make_horo(P, M)
            key = (P.levi, P.factors, d.M)
            if key in seen:
                continue
            seen.add(key)
            out.append(d)
    return out
