"""Named verification checks and the aggregate runner.

Every check returns a :class:`CheckReport`. Randomized checks draw from a
generator seeded by hashing the master seed with the check name (and, for
sweeps, with the type and prime), so adding a check or narrowing a sweep never
changes the trials of another.
"""

from __future__ import annotations

import hashlib
import json
import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import chevalley as chv
from . import horo, parabolic as par, subalg as sa, symcheck
from .lattice import contains, snf_diagonal
from .rootsys import add, build_root_system

LEMMA_TYPES = ("A1", "A2", "A3", "A4", "B2", "B3", "C3", "D4", "F4", "G2")
T_STABLE_TYPES = ("A1", "A2", "A3", "A4", "B2", "B3", "C3", "D4", "F4")
T_STABLE_PRIMES = (3, 5, 7)
EXHAUSTIVE_CASES = (("A1", 3), ("A1", 5), ("A2", 3), ("A2", 5), ("B2", 3))

DEFAULT_TRIALS = 100
SLOW_TRIALS = 500
DEFAULT_SAMPLES = 100
SLOW_SAMPLES = 1000

# the ten F4 roots with full support, each reached from an earlier root by one
# simple root, with the magnitude of the structure constant used
F4_CHAIN = (
    ((1, 1, 1, 0), 3, (1, 1, 1, 1), 1),
    ((1, 1, 1, 1), 2, (1, 1, 2, 1), 1),
    ((1, 1, 2, 1), 1, (1, 2, 2, 1), 1),
    ((1, 1, 2, 1), 3, (1, 1, 2, 2), 2),
    ((1, 2, 2, 1), 2, (1, 2, 3, 1), 1),
    ((1, 1, 2, 2), 1, (1, 2, 2, 2), 1),
    ((1, 2, 2, 2), 2, (1, 2, 3, 2), 1),
    ((1, 2, 3, 2), 2, (1, 2, 4, 2), 2),
    ((1, 2, 4, 2), 1, (1, 3, 4, 2), 1),
    ((1, 3, 4, 2), 0, (2, 3, 4, 2), 1),
)
F4_PAIRS = tuple((target, i) for target, i in zip(
    (c[2] for c in F4_CHAIN), (0, 2, 1, 3, 2, 1, 2, 2, 1, 0)))

# default fault: flip one F4 constant (outside the G2 computations)
DEFAULT_TAMPER = ("F4", (1, 0, 0, 0), (0, 1, 0, 0))


class HarnessError(ValueError):
    pass


@dataclass
class CheckReport:
    name: str
    params: dict
    status: str = "pass"
    counterexample: dict | None = None
    elapsed_ms: float = 0.0
    counts: int = 0
    meta: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def expect(self, ok: bool, **payload) -> bool:
        """Count one assertion; the first failure becomes the counterexample."""
        self.counts += 1
        if not ok:
            self.status = "fail"
            if self.counterexample is None:
                self.counterexample = _jsonable(payload)
        return ok

    def to_json(self, timings: bool = False) -> dict:
        out = {
            "name": self.name,
            "params": self.params,
            "status": self.status,
            "counterexample": self.counterexample,
            "counts": self.counts,
            "meta": self.meta,
            "details": _jsonable(self.details),
        }
        if timings:
            out["elapsed_ms"] = round(self.elapsed_ms, 3)
        return out


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (int, float, str, bool)) or x is None:
        return x
    return str(x)


def derive_seed(master: int, *labels) -> int:
    h = hashlib.sha256(":".join([str(master), *map(str, labels)]).encode()).digest()
    return int.from_bytes(h[:8], "big")


# -- root combinatorics ---------------------------------------------------------

def _check_f4_chain(rep: CheckReport, params: dict):
    f4 = build_root_system("F4")
    N = chv.structure_constants(f4)
    for src, i, target, mag in F4_CHAIN:
        a = f4.simple_roots[i]
        rep.expect(f4.is_root(src) and f4.is_root(target), root=target)
        rep.expect(add(src, a) == target, source=src, simple=i + 1, target=target)
        n = N[(src, a)]
        rep.expect(abs(n) == mag, pair=[src, a], N=n, expected_magnitude=mag)
        rep.expect(n % 3 != 0, pair=[src, a], N=n)
    full = [g for g in f4.positive_roots if all(g)]
    rep.expect(sorted(full) == sorted(c[2] for c in F4_CHAIN), full_support=full)


def _check_f4_3roots(rep: CheckReport, params: dict):
    f4 = build_root_system("F4")
    for g in f4.positive_roots:
        if sum(g) == 1:
            continue
        for i, a in enumerate(f4.simple_roots):
            for k in (2, 1):
                w = tuple(3 * x - k * y for x, y in zip(g, a))
                rep.expect(not f4.is_root(w), gamma=g, i=i + 1, k=k, weight=w)


def _check_gamma_minus_alpha(rep: CheckReport, params: dict):
    types = [params["type"]] if params.get("type") else LEMMA_TYPES
    for t in types:
        rs = build_root_system(t)
        for g in rs.positive_roots:
            if sum(g) == 1:
                continue
            ok = any(c and rs.is_root(add(g, a, -1)) for c, a in zip(g, rs.simple_roots))
            rep.expect(ok, type=t, gamma=g)


def _check_f4_pairs(rep: CheckReport, params: dict):
    f4 = build_root_system("F4")
    for g, i in F4_PAIRS:
        a = f4.simple_roots[i]
        rep.expect(f4.is_root(add(g, a, -1)), gamma=g, alpha=i + 1, claim="gamma - alpha is a root")
        rep.expect(not f4.is_root(add(g, a, 2)), gamma=g, alpha=i + 1, claim="gamma + 2 alpha is not a root")
        rep.expect(not f4.is_root(add(a, g, 2)), gamma=g, alpha=i + 1, claim="2 gamma + alpha is not a root")


def _bracket_tensor(rs) -> np.ndarray:
    I, J, K, V = chv.integer_brackets(rs)
    n = len(rs.roots) + rs.rank
    C = np.zeros((n, n, n), dtype=np.float64)
    np.add.at(C, (I, J, K), V)
    return C


def _check_constants_range(rep: CheckReport, params: dict):
    types = [params["type"]] if params.get("type") else LEMMA_TYPES
    for t in types:
        rs = build_root_system(t)
        table = chv.structure_constants(rs)
        mags = {abs(n) for _, n in table.items()}
        fam = {f for f, _ in rs.factors}
        if fam <= {"A", "D", "E"}:
            rep.expect(mags <= {1}, type=t, magnitudes=sorted(mags))
        elif "G" in fam:
            rep.expect(max(mags) <= 3 and 3 in mags, type=t, magnitudes=sorted(mags))
        else:
            rep.expect(max(mags) <= 2, type=t, magnitudes=sorted(mags))
        for (g, d), n in table.items():
            if table[(d, g)] != -n:
                rep.expect(False, type=t, pair=[g, d], N=n, N_swapped=table[(d, g)])
                break
        else:
            rep.expect(True)
        C = _bracket_tensor(rs)
        rep.expect(np.array_equal(C, -C.transpose(1, 0, 2)), type=t, claim="bracket antisymmetric")
        T = np.tensordot(C, C, axes=([2], [0]))  # T[a,b,c] = [[a,b],c]
        jac = T + T.transpose(2, 0, 1, 3) + T.transpose(1, 2, 0, 3)
        bad = np.argwhere(jac != 0)
        if bad.size:
            a, b, c, _ = bad[0]
            alg_labels = chv.LieAlgebra(rs, 2).label
            rep.expect(False, type=t, claim="Jacobi identity over Z",
                       triple=[alg_labels(int(a)), alg_labels(int(b)), alg_labels(int(c))],
                       violations=int(len(bad)))
        else:
            rep.expect(True)
        rep.details[t] = sorted(mags)


def _check_cartan_g2(rep: CheckReport, params: dict):
    g2 = build_root_system("G2")
    A = g2.cartan  # A[i][j] = alpha_j(V_{alpha_i})
    expected = {(0, 0): 2, (1, 1): 2, (1, 0): -1, (0, 1): -3}
    for (i, j), v in expected.items():
        rep.expect(A[i][j] == v, V=i + 1, alpha=j + 1, got=A[i][j], expected=v)
    mod3 = {(0, 0): 2, (1, 1): 2, (1, 0): 2, (0, 1): 0}
    for (i, j), v in mod3.items():
        rep.expect(A[i][j] % 3 == v, V=i + 1, alpha=j + 1, got_mod3=A[i][j] % 3)
    rep.details["cartan"] = A


# -- Lie algebra checks ---------------------------------------------------------

def _check_hlambda(rep: CheckReport, params: dict):
    alg = chv.LieAlgebra(build_root_system("G2"), 3)
    lams = [params["lam"]] if params.get("lam") else [1, 2]
    center_dim = alg.center().shape[0]
    rep.expect(center_dim == 0, claim="trivial center", center_dim=center_dim)
    dims = {}
    for lam in lams:
        H = sa.h_lambda(alg, lam)
        x = sa.x_lambda(alg, lam)
        dims[lam] = H.dim
        rep.expect(H.dim == 12, lam=lam, dim=H.dim)
        rep.expect(sa.is_bracket_closed(H), lam=lam, claim="bracket closed")
        H.bracket_closed = True
        rep.expect(sa.is_restricted(H), lam=lam, claim="restricted")
        rep.expect(not sa.is_T_stable(H), lam=lam, claim="not T-stable")
        eig = []
        for i in range(2):
            y = chv.bracket(alg.V(i), x)
            c = next((k for k in range(3) if y == k * x), None)
            eig.append(c)
            rep.expect(c is not None, lam=lam, claim=f"V_{i + 1} stabilizes the line of X_lambda", got=y)
        rep.details[f"eigenvalues_lambda_{lam}"] = eig
        jac = chv.p_power(x)
        adx = alg.ad(x.vector())
        nilp = not chv.fp.matpow(adx, 3, 3).any()
        via_ad = nilp and center_dim == 0  # ad(x^[3]) = ad(x)^3 = 0, center trivial
        rep.expect(not jac, lam=lam, claim="X_lambda^[3] = 0 (Jacobson)", got=jac)
        rep.expect(via_ad, lam=lam, claim="ad(X_lambda)^3 = 0 with trivial center")
        rep.expect((not jac) == via_ad, lam=lam, claim="both p-power paths agree")
        v = sa.classify_over_U(sa.closure_trial(alg, x))
        rep.expect(v.kind == "HLambda" and v.lam == lam, lam=lam, verdict=str(v))
    rep.details["dims"] = dims


def _trial_sweep(rep: CheckReport, params: dict, name: str, types, primes, allowed: set[str]):
    trials = params["trials"]
    tallies = {}
    for t in types:
        rs = build_root_system(t)
        for p in primes:
            alg = chv.LieAlgebra(rs, p)
            rng = np.random.default_rng(derive_seed(params["seed"], name, t, p))
            tally: dict[str, int] = {}
            for k in range(trials):
                x = sa.random_lower_element(alg, rng)
                S = sa.closure_trial(alg, x)
                v = sa.classify_over_U(S)
                tally[v.kind] = tally.get(v.kind, 0) + 1
                rep.expect(
                    v.kind in allowed, type=t, p=p, trial=k, verdict=str(v),
                    generator=str(alg.element(x)), closure_dim=S.dim,
                    closure_basis=[str(alg.element(r)) for r in S.basis],
                )
            tallies[f"{t}/p={p}"] = dict(sorted(tally.items()))
    rep.details["verdicts"] = tallies


def _check_t_stable_random(rep: CheckReport, params: dict):
    types = [params["type"]] if params.get("type") else T_STABLE_TYPES
    primes = [params["p"]] if params.get("p") else T_STABLE_PRIMES
    _trial_sweep(rep, params, "t-stable-random", types, primes, {"TStable"})


def _check_g2_dichotomy(rep: CheckReport, params: dict):
    _trial_sweep(rep, params, "g2-dichotomy", ["G2"], [3], {"TStable", "HLambda", "FullFactor"})
    alg = chv.LieAlgebra(build_root_system("G2"), 3)
    for lam in (1, 2):
        v = sa.classify_over_U(sa.closure_trial(alg, sa.x_lambda(alg, lam)))
        rep.expect(v.kind == "HLambda" and v.lam == lam, directed_lambda=lam, verdict=str(v))


def _check_g2_p5(rep: CheckReport, params: dict):
    primes = [params["p"]] if params.get("p") else [5, 7]
    _trial_sweep(rep, params, "g2-p5-stable", ["G2"], primes, {"TStable"})


def _check_t_stable_exhaustive(rep: CheckReport, params: dict):
    cases = [(params["type"], params["p"] or 3)] if params.get("type") else EXHAUSTIVE_CASES
    tallies = {}
    for t, p in cases:
        alg = chv.LieAlgebra(build_root_system(t), p)
        tally: dict[str, int] = {}
        for S, v in sa.exhaustive_over_U(alg):
            tally[v.kind] = tally.get(v.kind, 0) + 1
            rep.expect(v.kind in ("TStable", "HLambda", "FullFactor"), type=t, p=p, verdict=str(v),
                       subalgebra=[str(alg.element(r)) for r in S.basis])
        tallies[f"{t}/p={p}"] = dict(sorted(tally.items()))
    rep.details["verdicts"] = tallies


# -- parabolic and horospherical checks ---------------------------------------

def _index(top, bottom) -> int:
    """[top : bottom] for full-rank lattices in the same span."""
    a = 1
    for x in snf_diagonal(bottom):
        a *= x
    b = 1
    for x in snf_diagonal(top):
        b *= x
    return a // b


def _check_char_tower(rep: CheckReport, params: dict):
    g2 = build_root_system("G2")
    for nu in range(2):
        levi = {1 - nu}
        P = par.make_parabolic(g2, 3, levi, [par.Frobenius(nu, 0)])
        KP = par.make_parabolic(g2, 3, levi, [par.VerySpecial(nu, 1)])
        F1 = par.make_parabolic(g2, 3, levi, [par.Frobenius(nu, 1)])
        rep.expect(KP.factors[0].kind == par.VERY_SPECIAL, nu=nu + 1, claim="KP^nu stays very special")
        rep.expect(len({tuple(par.phi_of(Q).values()) for Q in (P, KP, F1)}) == 3,
                   nu=nu + 1, claim="three distinct parabolics")
        top, mid, bot = (par.char_lattice(Q).basis() for Q in (P, KP, F1))
        top_r, mid_r, bot_r = ([r[nu] for r in L] for L in (top, mid, bot))
        rep.expect(top_r == [1] and mid_r == [3] and bot_r == [3], nu=nu + 1,
                   lattices=[top, mid, bot])
        rep.expect(all(contains(top, r) for r in mid) and all(contains(mid, r) for r in bot),
                   nu=nu + 1, claim="inclusions")
        sub = lambda L: [[r[nu]] for r in L]  # noqa: E731
        rep.expect(_index(sub(top), sub(mid)) == 3, nu=nu + 1, claim="index 3 step")
        rep.expect(_index(sub(mid), sub(bot)) == 1, nu=nu + 1, claim="middle equals bottom")


def _check_smoothness(rep: CheckReport, params: dict):
    for q in (3, 9, 27):
        d = horo.make_horo(par.borel(build_root_system("A1"), 3), [[q]])
        rank, inv = horo.quotient_invariants(d)
        rep.expect(rank == 1 and inv == [q], q=q, torus_rank=rank, invariant_factors=inv)
        rep.expect(not horo.is_smooth_horo(d), q=q, claim="A(q, inf) is not smooth")
    for n in range(1, 11):
        d = horo.sl2_catalog(3, 0, horo.MUKIND, n)
        rep.expect(horo.is_smooth_horo(d) == (n % 3 != 0), n=n, smooth=horo.is_smooth_horo(d))


def _check_frobenius_roundtrip(rep: CheckReport, params: dict):
    sizes = {}
    for t in ("A1", "G2"):
        data = horo.enumerate_horo(t, 3, 2, 3)
        sizes[t] = len(data)
        for d in data:
            up = horo.frobenius_pullback(d, 1)
            rep.expect(horo.frobenius_image(up) == d, datum=str(d), pulled_back=str(up))
            down = horo.frobenius_image(d)
            divisible = all(x % 3 == 0 for r in d.M for x in r)
            positive = all(v >= 1 for v in par.phi_of(d.P).values())
            rep.expect((horo.frobenius_pullback(down, 1) == d) == (divisible and positive),
                       datum=str(d), image=str(down))
    rep.details["enumerated"] = sizes


# -- symbolic -------------------------------------------------------------------

def _symbolic(names):
    def run(rep: CheckReport, params: dict):
        samples = params["samples"]
        for n in names:
            r = symcheck.SYMBOLIC_CHECKS[n](samples=samples, seed=derive_seed(params["seed"], n))
            rep.counts += r.counts
            rep.details[n] = r.details
            if not r.passed:
                rep.status = "fail"
                if rep.counterexample is None:
                    rep.counterexample = _jsonable({"check": n, "failures": r.failures[:5]})
    return run


@dataclass(frozen=True)
class CheckSpec:
    run: Callable[[CheckReport, dict], None]
    basis: str  # "lemma" or "plumbing"
    claim: str
    in_catalog: bool = True


CHECKS: dict[str, CheckSpec] = {
    "f4-chain": CheckSpec(_check_f4_chain, "lemma",
                          "the ten full-support F4 roots are reached by structure constants of magnitude 1 or 2"),
    "f4-3roots": CheckSpec(_check_f4_3roots, "lemma",
                           "3 gamma - 2 alpha_i and 3 gamma - alpha_i are never F4 roots"),
    "gamma-minus-alpha": CheckSpec(_check_gamma_minus_alpha, "lemma",
                                   "every non-simple positive root drops to a root by a simple root in its support"),
    "f4-pairs": CheckSpec(_check_f4_pairs, "lemma",
                          "listed F4 pairs have gamma - alpha a root and gamma + 2 alpha, 2 gamma + alpha not"),
    "constants-range": CheckSpec(_check_constants_range, "lemma",
                                 "structure constant magnitudes, antisymmetry and the integer Jacobi identity"),
    "cartan-g2-mod3": CheckSpec(_check_cartan_g2, "lemma", "G2 Cartan pairings and their residues mod 3"),
    "hlambda": CheckSpec(_check_hlambda, "lemma",
                         "the 12-dimensional G2 subalgebras at p = 3 are closed, restricted, not T-stable"),
    "t-stable-random": CheckSpec(_check_t_stable_random, "lemma",
                                 "closures of Lie(U) plus one element are T-stable away from G2 at p = 3"),
    "g2-dichotomy": CheckSpec(_check_g2_dichotomy, "lemma",
                              "G2 closures at p = 3 are T-stable or meet the factor in h_lambda"),
    "g2-p5-stable": CheckSpec(_check_g2_p5, "lemma", "G2 closures at p >= 5 are T-stable"),
    "char-lattice-tower": CheckSpec(_check_char_tower, "lemma",
                                    "character lattices of P^nu, KP^nu and the first Frobenius kernel pullback"),
    "sl2-identities": CheckSpec(_symbolic(["sl2-normalizer", "sl2-heightr"]), "lemma",
                                "SL2 conjugation identities over quotient rings"),
    "b-infinity": CheckSpec(_symbolic(["b-infinity"]), "lemma",
                            "the characteristic 2 subgroup B(inf): determinant, closure, unipotent slice, torus"),
    "smoothness-examples": CheckSpec(_check_smoothness, "lemma",
                                     "smoothness of A(q, inf) and mu_n semidirect U in SL2 at p = 3"),
    "frobenius-roundtrip": CheckSpec(_check_frobenius_roundtrip, "plumbing",
                                     "Frobenius image undoes pullback on a bounded enumeration"),
    "t-stable-exhaustive": CheckSpec(_check_t_stable_exhaustive, "lemma",
                                     "every subalgebra containing Lie(U) in small types is T-stable",
                                     in_catalog=False),
    "sl2-normalizer": CheckSpec(_symbolic(["sl2-normalizer"]), "lemma",
                                "bottom-left entry of an SL2 conjugate", in_catalog=False),
    "sl2-heightr": CheckSpec(_symbolic(["sl2-heightr"]), "lemma",
                             "torus conjugate of a unipotent and its limit", in_catalog=False),
}

CATALOG = tuple(n for n, c in CHECKS.items() if c.in_catalog)


def normalize_params(params: dict | None = None) -> dict:
    params = dict(params or {})
    slow = bool(params.pop("slow", False))
    seed = params.pop("seed", None)
    out = {
        "seed": 0 if seed is None else int(seed),
        "trials": params.pop("trials", None),
        "samples": params.pop("samples", None),
        "type": params.pop("type", None),
        "p": params.pop("p", None),
        "lam": params.pop("lam", None),
    }
    if params:
        raise HarnessError(f"unknown parameters {sorted(params)}")
    if out["trials"] is None:
        out["trials"] = SLOW_TRIALS if slow else DEFAULT_TRIALS
    if out["samples"] is None:
        out["samples"] = SLOW_SAMPLES if slow else DEFAULT_SAMPLES
    if out["trials"] < 1 or out["samples"] < 1:
        raise HarnessError("trials and samples must be >= 1")
    if out["type"] is not None:
        build_root_system(out["type"])
    return out


def run_check(name: str, params: dict | None = None) -> CheckReport:
    if name not in CHECKS:
        raise HarnessError(f"unknown check {name!r}; known: {', '.join(CHECKS)}")
    spec = CHECKS[name]
    p = normalize_params(params)
    rep = CheckReport(name, {k: v for k, v in p.items() if v is not None},
                      meta={"basis": spec.basis, "claim": spec.claim})
    t0 = time.perf_counter()
    try:
        spec.run(rep, p)
    except Exception as exc:  # a crashing check is a failing check
        rep.status = "fail"
        rep.counterexample = {"error": f"{type(exc).__name__}: {exc}"}
        rep.counts = max(rep.counts, 1)
    rep.elapsed_ms = (time.perf_counter() - t0) * 1000
    if rep.counts == 0:
        rep.expect(False, error="check made no assertions")
    return rep


def run_all(config: dict | None = None) -> list[CheckReport]:
    """Run the catalog (or ``config['checks']``) in name order.

    ``config['tamper']`` = (type, g, d) flips one structure constant sign for
    the whole run, as a fault-injection switch.
    """
    config = dict(config or {})
    names = sorted(config.pop("checks", None) or CATALOG)
    tamper = config.pop("tamper", None)
    if tamper:
        t, g, d = tamper
        rs = build_root_system(t)
        with chv.tampered_constants(rs, [(tuple(g), tuple(d))]):
            return [run_check(n, config) for n in names]
    return [run_check(n, config) for n in names]


def exit_code(reports: list[CheckReport]) -> int:
    return 0 if all(r.passed for r in reports) else 1


def dumps(reports: list[CheckReport], timings: bool = False) -> str:
    return json.dumps([r.to_json(timings) for r in reports], indent=2, sort_keys=True) + "\n"
