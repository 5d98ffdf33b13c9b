"""Subspaces and subalgebras of Lie(G) over F_p.

A :class:`Subalgebra` is stored as the reduced row-echelon basis of its row
space in Chevalley coordinates, so two subspaces are equal iff their arrays
are equal.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import fplinalg as fp
from .chevalley import LieAlgebra, LieElement
from .rootsys import Root


class SubalgebraError(ValueError):
    pass


@dataclass(eq=False)
class Subalgebra:
    algebra: LieAlgebra
    basis: np.ndarray
    pivots: list[int]
    bracket_closed: bool | None = None
    p_closed: bool | None = None

    @classmethod
    def from_rref(cls, alg: LieAlgebra, basis: np.ndarray, **flags) -> "Subalgebra":
        basis = np.asarray(basis, dtype=np.int64).reshape(-1, alg.dim)
        R, piv = fp.rref(basis, alg.p) if basis.shape[0] else (basis, [])
        return cls(alg, R, piv, **flags)

    @property
    def dim(self) -> int:
        return len(self.pivots)

    @property
    def p(self) -> int:
        return self.algebra.p

    def rows(self) -> list[LieElement]:
        return [self.algebra.element(r) for r in self.basis]

    def remainder(self, vecs: np.ndarray) -> np.ndarray:
        return fp.reduce_rows(vecs, self.basis, self.pivots, self.p)

    def contains(self, x) -> bool:
        if isinstance(x, LieElement):
            x = x.vector()
        return not self.remainder(np.asarray(x)).any()

    def contains_all(self, vecs: np.ndarray) -> bool:
        vecs = np.asarray(vecs, dtype=np.int64).reshape(-1, self.algebra.dim)
        return not self.remainder(vecs).any()

    def __contains__(self, x) -> bool:
        return self.contains(x)

    def __eq__(self, other):
        return (
            isinstance(other, Subalgebra)
            and other.algebra == self.algebra
            and self.pivots == other.pivots
            and np.array_equal(self.basis, other.basis)
        )

    def __le__(self, other: "Subalgebra") -> bool:
        return other.contains_all(self.basis)

    def __repr__(self):
        return f"Subalgebra({self.algebra.rs.name}, p={self.p}, dim={self.dim})"

    def __add__(self, other: "Subalgebra") -> "Subalgebra":
        return Subalgebra.from_rref(self.algebra, np.vstack([self.basis, other.basis]))

    def intersect(self, other: "Subalgebra") -> "Subalgebra":
        return Subalgebra.from_rref(self.algebra, fp.intersect(self.basis, other.basis, self.p))


def span(alg: LieAlgebra, generators: Iterable) -> Subalgebra:
    rows = [g.vector() if isinstance(g, LieElement) else np.asarray(g, dtype=np.int64)
            for g in generators]
    if not rows:
        return Subalgebra(alg, np.zeros((0, alg.dim), dtype=np.int64), [])
    return Subalgebra.from_rref(alg, np.vstack(rows))


def coordinate_span(alg: LieAlgebra, indices: Iterable[int]) -> Subalgebra:
    idx = sorted(set(indices))
    B = np.zeros((len(idx), alg.dim), dtype=np.int64)
    for r, k in enumerate(idx):
        B[r, k] = 1
    return Subalgebra(alg, B, idx)


def close_under_bracket(S: Subalgebra) -> Subalgebra:
    """Smallest bracket-closed subspace containing S.

    Every vector that enters the span is bracketed once against a basis of the
    span at that moment; the pair (u, w) is therefore covered when the later of
    the two is processed.
    """
    alg, p = S.algebra, S.p
    B, piv = S.basis.copy(), list(S.pivots)
    queue = [row.copy() for row in B]
    while queue:
        v = queue.pop()
        if not B.shape[0]:
            break
        new = fp.reduce_rows(alg.bracket_rows(B, v), B, piv, p)
        new = new[new.any(axis=1)]
        if not new.shape[0]:
            continue
        fresh, _ = fp.rref(new, p)
        queue.extend(fresh)
        B, piv = fp.rref(np.vstack([B, fresh]), p)
    return Subalgebra(alg, B, piv, bracket_closed=True)


def close_under_p(S: Subalgebra) -> Subalgebra:
    """Smallest restricted subalgebra containing S (alternating bracket and p-power closure)."""
    T = close_under_bracket(S)
    while True:
        pw = np.array([T.algebra.p_power_vec(r) for r in T.basis]).reshape(-1, T.algebra.dim)
        if T.contains_all(pw):
            T.p_closed = True
            return T
        T = close_under_bracket(Subalgebra.from_rref(T.algebra, np.vstack([T.basis, pw])))


def is_bracket_closed(S: Subalgebra) -> bool:
    alg = S.algebra
    for v in S.basis:
        if not S.contains_all(alg.bracket_rows(S.basis, v)):
            return False
    return True


def is_restricted(S: Subalgebra) -> bool:
    """p-power of every basis row lies in S; S must already be bracket-closed."""
    if S.bracket_closed is None:
        S.bracket_closed = is_bracket_closed(S)
    if not S.bracket_closed:
        raise SubalgebraError("is_restricted needs a bracket-closed subspace")
    alg = S.algebra
    ok = all(S.contains(alg.p_power_vec(r)) for r in S.basis)
    S.p_closed = ok
    return ok


def _homogeneous_components(alg: LieAlgebra, rows: np.ndarray) -> np.ndarray:
    parts = []
    nr = alg.nroots
    for r in rows:
        for k in np.flatnonzero(r[:nr]):
            e = np.zeros(alg.dim, dtype=np.int64)
            e[k] = r[k]
            parts.append(e)
        if r[nr:].any():
            e = np.zeros(alg.dim, dtype=np.int64)
            e[nr:] = r[nr:]
            parts.append(e)
    if not parts:
        return np.zeros((0, alg.dim), dtype=np.int64)
    return np.array(parts)


def is_T_stable(S: Subalgebra) -> bool:
    """S is the sum of its intersections with the root spaces and Lie(T)."""
    return S.contains_all(_homogeneous_components(S.algebra, S.basis))


def weight_decomposition(S: Subalgebra) -> dict:
    """dim(S ∩ g_gamma) per root gamma and dim(S ∩ Lie(T)) under key ``"toral"``."""
    alg = S.algebra
    out: dict = {}
    for k, root in enumerate(alg.rs.roots):
        e = np.zeros(alg.dim, dtype=np.int64)
        e[k] = 1
        out[root] = int(S.contains(e))
    nontoral = S.basis[:, : alg.nroots]
    if S.dim == 0:
        out["toral"] = 0
    else:
        out["toral"] = int(fp.left_nullspace(nontoral, S.p).shape[0]) if nontoral.any() else S.dim
    return out


def lie_normalizer(S: Subalgebra) -> Subalgebra:
    """{x : [x, S] ⊆ S}."""
    alg, p = S.algebra, S.p
    d = alg.dim
    if S.dim == 0:
        return Subalgebra(alg, np.eye(d, dtype=np.int64), list(range(d)), bracket_closed=True)
    # R v = v - B^T v[pivots] kills exactly the vectors of S
    R = np.eye(d, dtype=np.int64)
    R[:, S.pivots] -= S.basis.T
    R %= p
    blocks = [fp.matmul(R, alg.ad(s), p) for s in S.basis]
    N = fp.nullspace(np.vstack(blocks), p)
    return Subalgebra.from_rref(alg, N, bracket_closed=True)


# -- standard subalgebras -----------------------------------------------------


def lie_U(alg: LieAlgebra) -> Subalgebra:
    return coordinate_span(alg, alg.positive_indices())


def lie_T(alg: LieAlgebra) -> Subalgebra:
    return coordinate_span(alg, alg.toral_indices())


def lie_B(alg: LieAlgebra) -> Subalgebra:
    return coordinate_span(alg, alg.positive_indices() + alg.toral_indices())


def full(alg: LieAlgebra) -> Subalgebra:
    return coordinate_span(alg, range(alg.dim))


def factor_subspace(alg: LieAlgebra, factor: int) -> Subalgebra:
    """Lie(G_(i)) for the i-th simple factor."""
    block = alg.rs.factor_blocks[factor]
    idx = [k for k, r in enumerate(alg.rs.roots) if any(r[i] for i in block)]
    idx += [alg.v_index(i) for i in block]
    return coordinate_span(alg, idx)


def _embed(alg: LieAlgebra, factor: int, local: Sequence[int]) -> Root:
    block = alg.rs.factor_blocks[factor]
    v = [0] * alg.rs.rank
    for i, c in zip(block, local):
        v[i] = c
    return tuple(v)


def kb_lie_g2(alg: LieAlgebra, factor: int = 0) -> Subalgebra:
    """Lie(KB) inside a G2 factor at p = 3 (Lie(B) plus the three short negative root lines)."""
    block = alg.rs.factor_blocks[factor]
    idx = [k for k, r in enumerate(alg.rs.positive_roots) if any(r[i] for i in block)]
    idx += [alg.v_index(i) for i in block]
    for local in ((-1, 0), (-1, -1), (-2, -1)):
        idx.append(alg.x_index(_embed(alg, factor, local)))
    return coordinate_span(alg, idx)


def x_lambda(alg: LieAlgebra, lam: int, factor: int = 0) -> LieElement:
    """lam * X_{-alpha_2} + X_{-3 alpha_1 - alpha_2} in a G2 factor."""
    return alg.X(_embed(alg, factor, (0, -1)), lam) + alg.X(_embed(alg, factor, (-3, -1)))


def h_lambda(alg: LieAlgebra, lam: int, factor: int = 0) -> Subalgebra:
    """Lie(KB) ⊕ K X_lambda, the 12-dimensional non-T-stable subalgebra of G2 at p = 3."""
    fam = alg.rs.factors[factor]
    if fam != ("G", 2):
        raise SubalgebraError(f"factor {factor} is {fam[0]}{fam[1]}, not G2")
    kb = kb_lie_g2(alg, factor)
    return Subalgebra.from_rref(alg, np.vstack([kb.basis, x_lambda(alg, lam, factor).vector()]))


# -- classification of closures containing Lie(U) ------------------------------


@dataclass(frozen=True)
class Verdict:
    kind: str  # "TStable", "HLambda", "FullFactor", "Unexpected"
    factor: int | None = None
    lam: int | None = None

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.factor is not None:
            out["factor"] = self.factor
        if self.lam is not None:
            out["lambda"] = self.lam
        return out

    def __str__(self):
        if self.kind == "HLambda":
            return f"HLambda({self.factor}, {self.lam})"
        if self.kind == "FullFactor":
            return f"FullFactor({self.factor})"
        return self.kind


def classify_over_U(S: Subalgebra) -> Verdict:
    """Sort a subalgebra containing Lie(U) into the G2/p=3 dichotomy.

    HLambda wins if some G2 factor meets S in h_lambda; a T-stable S that
    contains a whole G2 factor at p = 3 is reported as FullFactor, otherwise as
    TStable.
    """
    alg = S.algebra
    if not S.contains_all(lie_U(alg).basis):
        raise SubalgebraError("classify_over_U needs Lie(U) ⊆ S")
    if S.bracket_closed is None:
        S.bracket_closed = is_bracket_closed(S)
    if not S.bracket_closed:
        raise SubalgebraError("classify_over_U needs a bracket-closed subspace")
    g2 = [k for k, f in enumerate(alg.rs.factors) if f == ("G", 2)] if alg.p == 3 else []
    for k in g2:
        part = S.intersect(factor_subspace(alg, k))
        if part.dim == 12:
            for lam in range(1, alg.p):
                if part == h_lambda(alg, lam, k):
                    return Verdict("HLambda", k, lam)
    if is_T_stable(S):
        for k in g2:
            if factor_subspace(alg, k) <= S:
                return Verdict("FullFactor", k)
        return Verdict("TStable")
    return Verdict("Unexpected")


def random_lower_element(alg: LieAlgebra, rng: np.random.Generator, density: float = 0.35) -> np.ndarray:
    """Random nonzero X in Lie(U^-) ⊕ Lie(T) with each coordinate present with prob ``density``."""
    idx = np.array(alg.negative_indices() + alg.toral_indices())
    while True:
        x = np.zeros(alg.dim, dtype=np.int64)
        mask = rng.random(idx.size) < density
        x[idx[mask]] = rng.integers(1, alg.p, size=int(mask.sum()))
        if x.any():
            return x


def closure_trial(alg: LieAlgebra, x: np.ndarray | LieElement) -> Subalgebra:
    """close(Lie(U) ∪ {x})."""
    if isinstance(x, LieElement):
        x = x.vector()
    U = lie_U(alg)
    return close_under_bracket(Subalgebra.from_rref(alg, np.vstack([U.basis, x])))


def _rref_matrices(k: int, m: int, p: int):
    """Every k x m reduced row-echelon matrix of rank k over F_p."""
    import itertools

    for pivots in itertools.combinations(range(m), k):
        slots = [(r, c) for r, pc in enumerate(pivots) for c in range(pc + 1, m) if c not in pivots]
        for vals in itertools.product(range(p), repeat=len(slots)):
            M = np.zeros((k, m), dtype=np.int64)
            for r, pc in enumerate(pivots):
                M[r, pc] = 1
            for (r, c), v in zip(slots, vals):
                M[r, c] = v
            yield M


def exhaustive_over_U(alg: LieAlgebra):
    """Yield every subalgebra S ⊇ Lie(U) together with its verdict.

    S is Lie(U) plus a subspace of the complement Lie(U^-) ⊕ Lie(T); all such
    subspaces are enumerated, so this is only feasible for tiny algebras.
    """
    comp = alg.negative_indices() + alg.toral_indices()
    m = len(comp)
    U = lie_U(alg)
    for k in range(m + 1):
        for W in _rref_matrices(k, m, alg.p):
            rows = np.zeros((k, alg.dim), dtype=np.int64)
            rows[:, comp] = W
            S = Subalgebra.from_rref(alg, np.vstack([U.basis, rows]))
            if is_bracket_closed(S):
                S.bracket_closed = True
                yield S, classify_over_U(S)
