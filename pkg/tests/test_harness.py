import json

import pytest

from horolie import harness
from horolie.harness import CATALOG, CHECKS, HarnessError, derive_seed, dumps, exit_code, run_all, run_check

FAST = ["f4-chain", "f4-3roots", "f4-pairs", "gamma-minus-alpha", "cartan-g2-mod3", "hlambda",
        "char-lattice-tower", "smoothness-examples"]


def test_catalog_names_and_metadata():
    assert set(CATALOG) <= set(CHECKS)
    assert {"t-stable-exhaustive", "sl2-normalizer", "sl2-heightr"}.isdisjoint(CATALOG)
    for name, spec in CHECKS.items():
        assert spec.basis in ("lemma", "plumbing"), name
        assert spec.claim


@pytest.mark.parametrize("name", FAST)
def test_fast_checks_pass(name):
    rep = run_check(name, {"seed": 1})
    assert rep.passed, rep.counterexample
    assert rep.counts > 0
    js = rep.to_json()
    assert js["meta"]["basis"] in ("lemma", "plumbing")
    assert "elapsed_ms" not in js and "elapsed_ms" in rep.to_json(timings=True)


def test_hlambda_details():
    rep = run_check("hlambda")
    assert rep.details["dims"] == {1: 12, 2: 12}
    assert rep.details["eigenvalues_lambda_1"] == [0, 1]


def test_seeds_are_stable_and_separate():
    assert derive_seed(42, "a", "A2", 3) == derive_seed(42, "a", "A2", 3)
    assert len({derive_seed(42, "a", "A2", p) for p in (3, 5, 7)}) == 3
    assert derive_seed(42, "a") != derive_seed(43, "a")


def test_trial_sweep_deterministic():
    a = run_check("g2-p5-stable", {"seed": 5, "trials": 10})
    b = run_check("g2-p5-stable", {"seed": 5, "trials": 10})
    assert a.to_json() == b.to_json()
    assert a.passed and a.details["verdicts"] == {"G2/p=5": {"TStable": 10}, "G2/p=7": {"TStable": 10}}


def test_counterexample_reported():
    rep = run_check("t-stable-random", {"type": "A2", "p": 3, "trials": 100, "seed": 42})
    assert not rep.passed
    ce = rep.counterexample
    assert ce["type"] == "A2" and ce["p"] == 3 and ce["verdict"].startswith("Unexpected")
    assert len(ce["closure_basis"]) == ce["closure_dim"]


def test_exhaustive_a2_p3_reports_unexpected():
    rep = run_check("t-stable-exhaustive", {"type": "A2", "p": 3})
    assert rep.details["verdicts"] == {"A2/p=3": {"TStable": 11, "Unexpected": 2}}
    assert not rep.passed
    assert run_check("t-stable-exhaustive", {"type": "B2", "p": 3}).passed


def test_param_errors():
    with pytest.raises(HarnessError):
        run_check("no-such-check")
    with pytest.raises(HarnessError):
        run_check("f4-chain", {"bogus": 1})
    with pytest.raises(HarnessError):
        run_check("f4-chain", {"trials": 0})


def test_run_all_subset_and_dumps():
    reps = run_all({"checks": ["hlambda", "f4-chain"], "seed": 3})
    assert [r.name for r in reps] == ["f4-chain", "hlambda"]
    assert exit_code(reps) == 0
    doc = json.loads(dumps(reps))
    assert {d["name"] for d in doc} == {"f4-chain", "hlambda"}
    assert dumps(reps) == dumps(run_all({"checks": ["f4-chain", "hlambda"], "seed": 3}))


def test_tamper_fault_injection():
    reps = {r.name: r for r in run_all({"checks": ["constants-range", "f4-chain", "hlambda"],
                                        "tamper": harness.DEFAULT_TAMPER})}
    assert not reps["constants-range"].passed
    assert reps["f4-chain"].passed and reps["hlambda"].passed
    assert exit_code(list(reps.values())) == 1
    # tampering is scoped to the run
    assert run_check("constants-range").passed


def test_zero_assertions_fail():
    harness.CHECKS["_empty"] = harness.CheckSpec(lambda rep, params: None, "plumbing", "nothing")
    try:
        assert not run_check("_empty").passed
    finally:
        del harness.CHECKS["_empty"]


def test_crash_is_failure():
    def boom(rep, params):
        raise RuntimeError("boom")
    harness.CHECKS["_boom"] = harness.CheckSpec(boom, "plumbing", "crash")
    try:
        rep = run_check("_boom")
        assert not rep.passed and "boom" in rep.counterexample["error"]
    finally:
        del harness.CHECKS["_boom"]
