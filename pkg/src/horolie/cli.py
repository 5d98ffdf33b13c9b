"""Command line entry point: ``horolie <command> ...``."""

from __future__ import annotations

import argparse
import json
import re
import sys

import numpy as np

from . import chevalley as chv
from . import harness, horo, parabolic as par, subalg as sa
from .rootsys import RootSystemError, build_root_system

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _emit(obj, as_json: bool, text: str):
    if as_json:
        print(json.dumps(obj, indent=2, sort_keys=True))
    else:
        print(text)


# -- element syntax: "2*X[-1,0] + X[0,-1] - V1" ---------------------------------

_TERM = re.compile(r"^(?:(\d+)\s*\*\s*)?(X\[\s*-?\d+(?:\s*,\s*-?\d+)*\s*\]|V\d+)$")


def _terms(text: str) -> list[tuple[int, str]]:
    """Split on top-level + and - (brackets may hold minus signs)."""
    out, cur, sign, depth = [], "", 1, 0
    for ch in text.replace(" ", ""):
        if ch in "+-" and depth == 0:
            if cur:
                out.append((sign, cur))
            cur, sign = "", (1 if ch == "+" else -1) * (sign if not cur else 1)
            continue
        depth += ch == "["
        depth -= ch == "]"
        cur += ch
    if cur:
        out.append((sign, cur))
    return out


def parse_element(alg: chv.LieAlgebra, text: str) -> chv.LieElement:
    out = alg.zero()
    for sign, body in _terms(text):
        m = _TERM.match(body)
        if not m:
            raise UsageError(f"cannot parse term {body!r}; use forms like 2*X[-1,0] or V1")
        c = int(m.group(1) or 1) * sign
        ref = m.group(2)
        if ref.startswith("X"):
            root = tuple(int(x) for x in ref[2:-1].split(","))
            if not alg.rs.is_root(root):
                raise UsageError(f"{root} is not a root of {alg.rs.name}")
            out = out + alg.X(root, c)
        else:
            i = int(ref[1:]) - 1
            if not 0 <= i < alg.rs.rank:
                raise UsageError(f"no simple root {ref[1:]}")
            out = out + alg.V(i, c)
    return out


def _split_elements(text: str) -> list[str]:
    return [s for s in (part.strip() for part in text.split(";")) if s]


# -- commands -------------------------------------------------------------------

def cmd_verify(a) -> int:
    params = {"seed": a.seed, "trials": a.trials, "type": a.type, "p": a.p, "slow": a.slow}
    params = {k: v for k, v in params.items() if v is not None}
    if a.check:
        if a.check not in harness.CHECKS:
            raise UsageError(f"unknown check {a.check!r}; known: {', '.join(harness.CHECKS)}")
        if a.tamper:
            t, g, d = harness.DEFAULT_TAMPER
            with chv.tampered_constants(build_root_system(t), [(g, d)]):
                reports = [harness.run_check(a.check, params)]
        else:
            reports = [harness.run_check(a.check, params)]
    else:
        config = dict(params)
        if a.tamper:
            config["tamper"] = harness.DEFAULT_TAMPER
        reports = harness.run_all(config)
    for r in reports:
        line = f"{r.status.upper():4}  {r.name:22} assertions={r.counts}"
        if a.timings:
            line += f"  {r.elapsed_ms:.1f} ms"
        print(line)
        if not r.passed:
            print("      counterexample: " + json.dumps(r.counterexample, sort_keys=True))
    if a.json:
        text = harness.dumps(reports, timings=a.timings)
        if a.json == "-":
            sys.stdout.write(text)
        else:
            with open(a.json, "w") as fh:
                fh.write(text)
    return harness.exit_code(reports)


def cmd_roots(a) -> int:
    rs = build_root_system(a.type)
    rows = []
    for r in rs.positive_roots:
        at = rs.attributes(r)
        rows.append({"root": list(r), "height": sum(r), "short": at.is_short, "simple": at.is_simple})
    obj = {"type": rs.name, "cartan": rs.cartan, "positive_roots": rows,
           "highest_root": list(rs.highest_root()), "count": len(rows)}
    text = [f"{rs.name}: {len(rows)} positive roots"]
    for row in rows:
        mark = " short" if row["short"] else ""
        text.append(f"  {tuple(row['root'])}  height {row['height']}{mark}")
    _emit(obj, a.json, "\n".join(text))
    return EXIT_OK


def cmd_constants(a) -> int:
    rs = build_root_system(a.type)
    table = chv.structure_constants(rs)
    entries = [e for e in table.to_json() if not a.positive or (sum(e["g"]) > 0 and sum(e["d"]) > 0)]
    text = "\n".join(f"  N[{tuple(e['g'])}, {tuple(e['d'])}] = {e['N']}" for e in entries)
    _emit({"type": rs.name, "constants": entries}, a.json, f"{rs.name}: {len(entries)} constants\n{text}")
    return EXIT_OK


def cmd_close(a) -> int:
    rs = build_root_system(a.type)
    alg = chv.LieAlgebra(rs, a.p)
    gens = [parse_element(alg, s) for s in _split_elements(a.gens or "")]
    if a.lam is not None:
        gens.append(sa.x_lambda(alg, a.lam))
    base = sa.lie_U(alg) if not a.no_u else sa.span(alg, [])
    S = sa.close_under_bracket(sa.Subalgebra.from_rref(
        alg, np.vstack([base.basis] + [g.vector() for g in gens])))
    if a.restricted:
        S = sa.close_under_p(S)
    info = {
        "type": rs.name, "p": a.p, "dim": S.dim,
        "basis": [str(alg.element(r)) for r in S.basis],
        "t_stable": sa.is_T_stable(S),
        "restricted": sa.is_restricted(S),
    }
    if not a.no_u:
        info["verdict"] = sa.classify_over_U(S).to_json()
    text = [f"dim {S.dim}, T-stable {info['t_stable']}, restricted {info['restricted']}"]
    if "verdict" in info:
        text.append(f"verdict {sa.classify_over_U(S)}")
    text += ["  " + b for b in info["basis"]]
    _emit(info, a.json, "\n".join(text))
    return EXIT_OK


def _parabolic_info(P: par.ParabolicData) -> dict:
    alg = chv.LieAlgebra(P.rs, P.p)
    L = par.lie_of(P, alg)
    phi = par.phi_of(P)
    neg_lines = sorted(([-c for c in g] for g, v in phi.items() if v >= 1), key=lambda r: (-sum(r), r))
    return {
        "parabolic": P.to_json(),
        "canonical": P.spec_string(),
        "phi": [{"root": list(g), "value": None if v == par.INF else int(v)} for g, v in phi.items()],
        "lie": {"dim": L.dim, "negative_roots": neg_lines},
        "char_lattice": par.char_lattice(P).to_json(),
        "smooth": par.is_smooth(P),
        "height": par.height_profile(P),
    }


def cmd_parabolic(a) -> int:
    rs = build_root_system(a.type)
    P = par.parabolic_from_spec(rs, a.p, a.spec)
    info = _parabolic_info(P)
    text = [str(P), "phi:"]
    text += [f"  {tuple(e['root'])}: {'inf' if e['value'] is None else e['value']}" for e in info["phi"]]
    text.append(f"Lie dim {info['lie']['dim']}; negative root lines {[tuple(r) for r in info['lie']['negative_roots']]}")
    gens = ", ".join(f"{g['multiplier']}*w{g['index'] + 1}" for g in info["char_lattice"]["generators"])
    text.append(f"X*(P) = <{gens}>")
    _emit(info, a.json, "\n".join(text))
    return EXIT_OK


def _parse_gens(text: str | None) -> list[list[int]]:
    if not text:
        return []
    try:
        return [[int(x) for x in part.split(",")] for part in _split_elements(text)]
    except ValueError as exc:
        raise UsageError(f"bad generator list {text!r}; use '9' or '3,3;0,3'") from exc


def cmd_horo(a) -> int:
    rs = build_root_system(a.type)
    if a.enumerate:
        data = horo.enumerate_horo(rs, a.p, a.r_max, a.coeff_max)
        _emit([d.to_json() for d in data], a.json,
              f"{len(data)} data\n" + "\n".join(f"  {d}" for d in data))
        return EXIT_OK
    if a.spec is None:
        P = par.borel(rs, a.p)
    else:
        P = par.parabolic_from_spec(rs, a.p, a.spec)
    d = horo.make_horo(P, _parse_gens(a.gens))
    if a.pullback:
        d = horo.frobenius_pullback(d, a.pullback)
    if a.image:
        d = horo.frobenius_image(d)
    info = d.to_json()
    _emit(info, a.json, f"{d}\n  smooth {info['smooth']}, torus rank {info['torus_rank']}, "
                        f"invariant factors {info['invariant_factors']}")
    return EXIT_OK


def cmd_enumerate(a) -> int:
    rs = build_root_system(a.type)
    if a.what == "parabolic":
        data = par.enumerate_parabolics(rs, a.p, a.r_max)
        phis = {tuple(par.phi_of(P).values()) for P in data}
        obj = {"type": rs.name, "p": a.p, "r_max": a.r_max, "count": len(data),
               "distinct_phi": len(phis), "items": [P.to_json() for P in data]}
        _emit(obj, a.json, f"{len(data)} parabolics, {len(phis)} distinct phi\n"
              + "\n".join(f"  {P}" for P in data))
    else:
        data = horo.enumerate_horo(rs, a.p, a.r_max, a.coeff_max)
        obj = {"type": rs.name, "p": a.p, "r_max": a.r_max, "coeff_max": a.coeff_max,
               "count": len(data), "items": [d.to_json() for d in data]}
        _emit(obj, a.json, f"{len(data)} horospherical data\n" + "\n".join(f"  {d}" for d in data))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="horolie", description="Root systems, Chevalley Lie algebras mod p, "
                 "parabolic and horospherical data, and a verification harness.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", help="run verification checks")
    v.add_argument("--check", help="single check name (default: whole catalog)")
    v.add_argument("--type")
    v.add_argument("--p", type=int)
    v.add_argument("--trials", type=int)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--json", metavar="PATH", help="write the report array ('-' for stdout)")
    v.add_argument("--slow", action="store_true", help="500 trials and 1000 numeric samples")
    v.add_argument("--timings", action="store_true", help="include elapsed_ms (breaks byte-identical reports)")
    v.add_argument("--tamper", action="store_true", help="flip one F4 structure constant sign (fault injection)")
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("roots", help="positive roots and Cartan matrix")
    r.add_argument("--type", required=True)
    r.add_argument("--json", action="store_true")
    r.set_defaults(func=cmd_roots)

    c = sub.add_parser("constants", help="structure constants N_{g,d}")
    c.add_argument("--type", required=True)
    c.add_argument("--positive", action="store_true", help="only pairs of positive roots")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_constants)

    cl = sub.add_parser("close", help="bracket closure of Lie(U) plus generators")
    cl.add_argument("--type", required=True)
    cl.add_argument("--p", type=int, required=True)
    cl.add_argument("--gens", help="';'-separated elements, e.g. '2*X[-1,0] + V1; X[0,-1]'")
    cl.add_argument("--lam", type=int, help="add X_lambda (G2 only)")
    cl.add_argument("--no-u", action="store_true", help="do not include Lie(U)")
    cl.add_argument("--restricted", action="store_true", help="also close under the p-map")
    cl.add_argument("--json", action="store_true")
    cl.set_defaults(func=cmd_close)

    pa = sub.add_parser("parabolic", help="phi, Lie algebra and characters of a parabolic")
    pa.add_argument("--type", required=True)
    pa.add_argument("--p", type=int, required=True)
    pa.add_argument("--spec", required=True, help="factors like 'a1:K1,a2:F0'; missing roots form the Levi set")
    pa.add_argument("--json", action="store_true")
    pa.set_defaults(func=cmd_parabolic)

    h = sub.add_parser("horo", help="horospherical datum (phi, M)")
    h.add_argument("--type", required=True)
    h.add_argument("--p", type=int, required=True)
    h.add_argument("--spec", help="parabolic factors (default: Borel)")
    h.add_argument("--gens", help="lattice generators in the fundamental weight basis, e.g. '9' or '3,3;0,3'")
    h.add_argument("--pullback", type=int, default=0)
    h.add_argument("--image", action="store_true")
    h.add_argument("--enumerate", action="store_true")
    h.add_argument("--r-max", type=int, default=1)
    h.add_argument("--coeff-max", type=int, default=2)
    h.add_argument("--json", action="store_true")
    h.set_defaults(func=cmd_horo)

    e = sub.add_parser("enumerate", help="bounded enumeration of parabolic or horospherical data")
    e.add_argument("what", choices=["parabolic", "horo"], nargs="?", default="horo")
    e.add_argument("--type", required=True)
    e.add_argument("--p", type=int, required=True)
    e.add_argument("--r-max", type=int, default=1)
    e.add_argument("--coeff-max", type=int, default=2)
    e.add_argument("--json", action="store_true")
    e.set_defaults(func=cmd_enumerate)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except (RootSystemError, chv.LieError, par.ParabolicError, horo.HoroError,
            harness.HarnessError, sa.SubalgebraError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
