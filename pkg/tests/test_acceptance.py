"""Acceptance gate: criteria 1-8 at their stated case counts, seed 1729.

Each test appends one pass/fail line that conftest prints in the terminal
summary, and also prints it directly (visible with ``-s``).
"""
import json
import os
import subprocess
import sys
import time

from binaryk.suites import SUITES

from .conftest import ACCEPTANCE_LINES

SEED = 1729


def _report(number, title, ok, detail=""):
    line = f"criterion {number} [{'PASS' if ok else 'FAIL'}] {title}" + (f": {detail}" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)


def _run(name, cases):
    start = time.perf_counter()
    checks = SUITES[name][0](SEED, cases)
    return {c.name: c for c in checks}, time.perf_counter() - start


def _verify(checks, wanted):
    """wanted maps check name -> minimum case count; returns a list of problems."""
    problems = []
    for name, minimum in wanted.items():
        c = checks.get(name)
        if c is None:
            problems.append(f"{name} missing")
        elif c.status != "pass":
            problems.append(f"{name} {c.status} ({c.failed} failed, first witness {c.witnesses[:1]})")
        elif c.cases < minimum:
            problems.append(f"{name} ran {c.cases} < {minimum} cases")
    return problems


def _gate(number, title, checks, wanted, extra=()):
    problems = _verify(checks, wanted) + list(extra)
    total = sum(checks[n].cases for n in wanted if n in checks)
    _report(number, title, not problems, "; ".join(problems) or f"{total} cases")
    assert not problems, problems


def test_criterion_1_linear_algebra():
    checks, elapsed = _run("linalg", 500)
    wanted = {}
    for ring in ("F5", "F4", "Q", "Z"):
        wanted[f"linalg.matmul[{ring}]"] = 500
        wanted[f"linalg.det_multiplicative[{ring}]"] = 500
    wanted["linalg.snf[Z]"] = 500
    slow = [f"runtime {elapsed:.2f}s >= 10s"] if elapsed >= 10 else []
    _gate(1, f"exact linear algebra ({elapsed:.2f}s)", checks, wanted, slow)


def test_criterion_2_complex_calculus():
    checks, _ = _run("complexes", 200)
    _gate(2, "complex calculus", checks, {
        "complexes.cone_identity_acyclic": 200,
        "complexes.euler_identities": 200,
        "complexes.naive_filtration": 200,
    })


def test_criterion_3_k1_relations():
    checks, _ = _run("k1", 200)
    _gate(3, "K1 relations", checks, {"k1.diagonal_trivial": 200, "k1.ses_multiplicative": 200})


def test_criterion_4_h_functor():
    checks, _ = _run("hfunctor", 100)
    _gate(4, "H-functor", checks, {"hfunctor.witnesses_exact": 100, "hfunctor.k1_invariant": 100})


def test_criterion_5_nenashev_calibration():
    checks, _ = _run("nenashev", 100)
    cal = checks["nenashev.calibrate_epsilon"]
    eps = cal.info.get("epsilon")
    extra = [] if eps in (1, -1) else [f"epsilon {eps!r}"]
    _gate(5, f"determinant compatibility (epsilon={eps}, {cal.info.get('pinning_samples')} pinning samples)",
          checks, {"nenashev.calibrate_epsilon": 100}, extra)


def test_criterion_6_relative():
    checks, _ = _run("relative", 100)
    _gate(6, "relative classes F2 -> F4", checks, {
        "relative.ses_relation": 100,
        "relative.diagonal_relation": 100,
        "relative.weak_equivalence": 100,
        "relative.bracket_in_source_units": 200,
        "relative.cosets_realized": 3,
        "relative.source_k1_trivial": 100,
        "relative.boundary": 100,
    })


def test_criterion_7_multicube():
    checks, _ = _run("multicube", 100)
    mut = checks["multicube.mutations_rejected"]
    _gate(7, f"multicube n=2 ({mut.info.get('equivalent_mutants')} equivalent mutants accepted)", checks, {
        "multicube.split_identity": 100,
        "multicube.cross_axis": 100,
        "multicube.accepts_generated": 100,
        "multicube.mutations_rejected": 100,
        "multicube.certify": 100,
    })


def _selftest_digest():
    env = {k: v for k, v in os.environ.items() if k != "BINARYK_SEED"}
    out = subprocess.run([sys.executable, "-m", "binaryk", "selftest", "--seed", str(SEED), "--json"],
                         env=env, capture_output=True, text=True)
    assert out.returncode == 0, out.stderr[-2000:]
    return json.loads(out.stdout)["digest"]


def test_criterion_8_determinism():
    first, second = _selftest_digest(), _selftest_digest()
    ok = first == second
    _report(8, "selftest digest replay", ok, f"{first[:16]}" if ok else f"{first[:16]} != {second[:16]}")
    assert ok
