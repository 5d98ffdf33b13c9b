"""Compare the compiled F_p kernels with the NumPy fallback.

Usage: python3 benchmarks/bench_kernels.py [--repeat N] [--json PATH]

Measures raw row reduction on random matrices and two end-to-end workloads
(bracket closures in F4 and G2 at p = 3) under each backend, and checks that
both backends give identical results.
"""

from __future__ import annotations

import argparse
import json
import statistics
import time

import numpy as np

from horolie import fplinalg
from horolie.chevalley import LieAlgebra
from horolie.rootsys import build_root_system
from horolie.subalg import closure_trial, random_lower_element


def _time(fn, repeat: int) -> float:
    samples = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - t0)
    return statistics.median(samples)


def workloads():
    rng = np.random.default_rng(0)
    mats = {n: rng.integers(0, 3, size=(n, n)) for n in (32, 64, 128)}
    for n, M in mats.items():
        yield f"rref {n}x{n} p=3", lambda M=M: fplinalg.rref(M, 3)
    for t in ("G2", "F4"):
        alg = LieAlgebra(build_root_system(t), 3)
        xs = [random_lower_element(alg, np.random.default_rng(k)) for k in range(20)]
        yield f"20 closures {t} p=3", lambda alg=alg, xs=xs: [closure_trial(alg, x) for x in xs]


def _fingerprint():
    rng = np.random.default_rng(1)
    M = rng.integers(0, 5, size=(40, 60))
    R, piv = fplinalg.rref(M, 5)
    alg = LieAlgebra(build_root_system("F4"), 3)
    S = closure_trial(alg, random_lower_element(alg, np.random.default_rng(3)))
    return R.tolist(), piv, S.basis.tolist()


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json")
    a = ap.parse_args()

    backends = ["numpy"]
    try:
        fplinalg.use_backend("cython")
        backends.insert(0, "cython")
    except ImportError:
        print("compiled kernels not built; timing the fallback only")

    results: dict[str, dict[str, float]] = {}
    prints = {}
    for b in backends:
        fplinalg.use_backend(b)
        prints[b] = _fingerprint()
        for name, fn in workloads():
            fn()  # warm caches
            results.setdefault(name, {})[b] = _time(fn, a.repeat)

    if len(prints) == 2:
        same = prints["cython"] == prints["numpy"]
        print(f"backends agree: {same}")
    print(f"{'workload':28} " + " ".join(f"{b:>10}" for b in backends) + ("   speedup" if len(backends) == 2 else ""))
    for name, row in results.items():
        line = f"{name:28} " + " ".join(f"{row[b] * 1000:9.2f}ms" for b in backends)
        if len(backends) == 2:
            line += f"   {row['numpy'] / row['cython']:6.1f}x"
        print(line)
    if a.json:
        with open(a.json, "w") as fh:
            json.dump({"seconds": results}, fh, indent=2)


if __name__ == "__main__":
    main()
