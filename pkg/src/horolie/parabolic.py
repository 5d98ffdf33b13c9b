"""Combinatorial model of parabolic subgroup schemes for p >= 3.

A parabolic is recorded by its Levi set I and one factor per simple root
outside I:

* ``Frobenius(r)``: the factor {}_r G P^nu (r >= 0);
* ``VerySpecial(r)``: the factor (F^{r-1})^{-1}(K) P^nu (r >= 1), only for a
  G2 factor at p = 3, K the kernel of the very special isogeny.

The associated function phi sends a positive root gamma to the height of
P ∩ U_{-gamma}: the minimum over factors nu in Supp(gamma) of r, except that a
VerySpecial(r) factor contributes r - 1 on long roots (K is trivial on long
root groups). Roots supported in I get infinity.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, replace
from typing import Iterable, Mapping

from .chevalley import LieAlgebra
from .lattice import CharacterLattice
from .rootsys import Root, RootSystem
from .subalg import Subalgebra, coordinate_span

INF = math.inf

FROBENIUS = "F"
VERY_SPECIAL = "K"


class ParabolicError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class ParabolicFactor:
    nu: int
    kind: str  # FROBENIUS or VERY_SPECIAL
    r: int

    def contribution(self, is_short: bool) -> int:
        if self.kind == VERY_SPECIAL and not is_short:
            return self.r - 1
        return self.r

    def __str__(self):
        return f"a{self.nu + 1}:{self.kind}{self.r}"


def Frobenius(nu: int, r: int) -> ParabolicFactor:
    return ParabolicFactor(nu, FROBENIUS, r)


def VerySpecial(nu: int, r: int) -> ParabolicFactor:
    return ParabolicFactor(nu, VERY_SPECIAL, r)


@dataclass(frozen=True)
class ParabolicData:
    rs: RootSystem
    p: int
    levi: frozenset[int]
    factors: tuple[ParabolicFactor, ...]
    central_rank: int = 0

    def factor(self, nu: int) -> ParabolicFactor | None:
        for f in self.factors:
            if f.nu == nu:
                return f
        return None

    def spec_string(self) -> str:
        return ",".join(str(f) for f in self.factors)

    def to_json(self) -> dict:
        return {
            "type": self.rs.name,
            "p": self.p,
            "levi": sorted(i + 1 for i in self.levi),
            "factors": [{"nu": f.nu + 1, "kind": f.kind, "r": f.r} for f in self.factors],
            "central_rank": self.central_rank,
        }

    def __str__(self):
        levi = "{" + ",".join(f"a{i + 1}" for i in sorted(self.levi)) + "}"
        return f"P[{self.rs.name}, p={self.p}, I={levi}, {self.spec_string() or '-'}]"


def _validate(rs: RootSystem, p: int, levi: frozenset[int], factors: tuple[ParabolicFactor, ...]):
    if p < 3:
        raise ParabolicError("parabolic data are modelled for p >= 3 only")
    seen = set()
    for f in factors:
        if f.nu in seen:
            raise ParabolicError(f"duplicate factor for simple root a{f.nu + 1}")
        seen.add(f.nu)
        if not 0 <= f.nu < rs.rank:
            raise ParabolicError(f"simple root index {f.nu + 1} out of range")
        if f.kind == FROBENIUS:
            if f.r < 0:
                raise ParabolicError("Frobenius height must be >= 0")
        elif f.kind == VERY_SPECIAL:
            if f.r < 1:
                raise ParabolicError("very special height must be >= 1")
            if p != 3 or rs.factors[rs.factor_of(f.nu)] != ("G", 2):
                raise ParabolicError(
                    f"very special factor on a{f.nu + 1} needs a G2 factor and p = 3")
        else:
            raise ParabolicError(f"unknown factor kind {f.kind!r}")
    if seen & levi:
        raise ParabolicError("Levi set and factor roots overlap")
    if seen | levi != set(range(rs.rank)):
        missing = sorted(set(range(rs.rank)) - seen - levi)
        raise ParabolicError(f"simple roots {[m + 1 for m in missing]} have neither a factor nor Levi membership")


def make_parabolic(rs: RootSystem, p: int, levi: Iterable[int] = (),
                   factors: Iterable[ParabolicFactor] | Mapping[int, tuple[str, int]] = (),
                   central_rank: int = 0) -> ParabolicData:
    """Validated, canonical parabolic data. Simple roots are 0-based indices."""
    if isinstance(factors, Mapping):
        factors = [ParabolicFactor(nu, kind, r) for nu, (kind, r) in factors.items()]
    levi = frozenset(levi)
    fs = tuple(sorted(factors))
    _validate(rs, p, levi, fs)
    return canonicalize(ParabolicData(rs, p, levi, fs, central_rank))


def phi_of(P: ParabolicData) -> dict[Root, float]:
    out = {}
    by_nu = {f.nu: f for f in P.factors}
    for g in P.rs.positive_roots:
        short = P.rs.is_short(g)
        vals = [by_nu[i].contribution(short) for i, c in enumerate(g) if c and i in by_nu]
        out[g] = min(vals) if vals else INF
    return out


def canonicalize(P: ParabolicData) -> ParabolicData:
    """Replace very special factors by Frobenius ones whenever phi does not change."""
    current = P
    changed = True
    while changed:
        changed = False
        phi = phi_of(current)
        for f in current.factors:
            if f.kind != VERY_SPECIAL:
                continue
            for r in (f.r, f.r - 1):
                cand_f = Frobenius(f.nu, r)
                cand = replace(current, factors=tuple(sorted(
                    cand_f if g.nu == f.nu else g for g in current.factors)))
                if phi_of(cand) == phi:
                    current = cand
                    changed = True
                    break
            if changed:
                break
    return current


def is_smooth(P: ParabolicData) -> bool:
    return all(f.kind == FROBENIUS and f.r == 0 for f in P.factors)


def height_profile(P: ParabolicData) -> int:
    """Largest finite value of phi (0 if phi is infinite everywhere)."""
    finite = [v for v in phi_of(P).values() if v != INF]
    return int(max(finite)) if finite else 0


def lie_of(P: ParabolicData, alg: LieAlgebra | None = None) -> Subalgebra:
    """Lie(T) ⊕ Lie(U) ⊕ the lines g_{-gamma} with phi(gamma) >= 1."""
    if alg is None:
        alg = LieAlgebra(P.rs, P.p)
    phi = phi_of(P)
    idx = alg.positive_indices() + alg.toral_indices()
    idx += [alg.x_index(tuple(-c for c in g)) for g, v in phi.items() if v >= 1]
    S = coordinate_span(alg, idx)
    S.bracket_closed = True
    S.p_closed = True
    return S


def char_lattice(P: ParabolicData) -> CharacterLattice:
    exps: list[int | None] = [None] * P.rs.rank
    for f in P.factors:
        exps[f.nu] = f.r
    exps += [0] * P.central_rank
    return CharacterLattice(P.p, tuple(exps))


def pullback(P: ParabolicData, m: int) -> ParabolicData:
    """Preimage under the m-th Frobenius: every height goes up by m."""
    if m < 0:
        raise ParabolicError("pullback exponent must be >= 0")
    return canonicalize(replace(P, factors=tuple(replace(f, r=f.r + m) for f in P.factors)))


def image(P: ParabolicData) -> ParabolicData:
    """Frobenius image: every height r >= 1 drops by one."""
    out = []
    for f in P.factors:
        if f.kind == VERY_SPECIAL and f.r == 1:
            # F(K P^nu) = P^nu: K is killed by Frobenius
            out.append(Frobenius(f.nu, 0))
        else:
            out.append(replace(f, r=f.r - (1 if f.r >= 1 else 0)))
    return canonicalize(replace(P, factors=tuple(out)))


_FACTOR_RE = re.compile(r"^a(\d+):([FKfk])(\d+)$")


def parse_factors(text: str) -> list[ParabolicFactor]:
    """Parse ``"a1:K1,a2:F0"`` (1-based simple roots) into factors."""
    out = []
    for part in filter(None, (s.strip() for s in text.split(","))):
        m = _FACTOR_RE.match(part)
        if not m:
            raise ParabolicError(f"cannot parse factor {part!r}; expected like a1:F0 or a2:K1")
        out.append(ParabolicFactor(int(m.group(1)) - 1, m.group(2).upper(), int(m.group(3))))
    return out


def parabolic_from_spec(rs: RootSystem, p: int, text: str, central_rank: int = 0) -> ParabolicData:
    factors = parse_factors(text)
    levi = set(range(rs.rank)) - {f.nu for f in factors}
    return make_parabolic(rs, p, levi, factors, central_rank)


def borel(rs: RootSystem, p: int, r: int = 0) -> ParabolicData:
    """{}_r G B."""
    return make_parabolic(rs, p, (), [Frobenius(i, r) for i in range(rs.rank)])


def enumerate_parabolics(rs: RootSystem, p: int, r_max: int) -> list[ParabolicData]:
    """All canonical parabolic data with heights <= r_max, deterministic order."""
    import itertools

    n = rs.rank
    per_root = []
    for i in range(n):
        opts: list = [None]  # None: i in the Levi set
        opts += [Frobenius(i, r) for r in range(r_max + 1)]
        if p == 3 and rs.factors[rs.factor_of(i)] == ("G", 2):
            opts += [VerySpecial(i, r) for r in range(1, r_max + 1)]
        per_root.append(opts)
    seen = {}
    for choice in itertools.product(*per_root):
        levi = {i for i, c in enumerate(choice) if c is None}
        P = make_parabolic(rs, p, levi, [c for c in choice if c is not None])
        key = (P.levi, P.factors)
        seen.setdefault(key, P)
    return list(seen.values())
