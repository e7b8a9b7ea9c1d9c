"""Acceptance suite: one PASS/FAIL line per criterion.

Run with pytest (lines appear in the terminal summary) or directly:

    python3 tests/test_acceptance.py [criterion numbers...]
"""

from __future__ import annotations

import itertools
import math
import os
import subprocess
import sys
import time
from dataclasses import dataclass

import pytest

from cfdim import checks, cover, empirics, pressure
from cfdim.cf import LinearIndex
from cfdim.dimension import (B_EQUALS_1, B_INFINITE, B_INFINITE_B_INFINITE, DoubleExponential,
                             Exponents, GrowthSpec, PressureSolver, Poly, dim_Ef, exponents_from_psi)

WORKERS = min(8, os.cpu_count() or 1)
SOLVER = PressureSolver(M_max=6, n_max=5, workers=WORKERS)


@dataclass
class Verdict:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float
    limit: float | None

    @property
    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        budget = f" (limit {self.limit:g} s)" if self.limit else ""
        return f"CRITERION {self.number}: {status} {self.title}: {self.detail} [{self.seconds:.1f} s{budget}]"


def _sweep(fn, *args):
    ok, detail, _ = fn(*args)
    return ok, detail


def crit_exact_cf():
    parts = [
        ("determinant", checks.determinant_symbolic),
        ("determinant enumeration", checks.determinant_sweep),
        ("deletion bounds", checks.deletion_sweep),
        ("concatenation bounds", checks.concatenation_sweep),
        ("all-ones growth", checks.growth_sweep),
    ]
    failed = []
    for name, fn in parts:
        ok, detail = _sweep(fn)
        if not ok:
            failed.append(f"{name}: {detail}")
    return not failed, "; ".join(failed) or "all sweeps exact"


def crit_operator_vs_enum():
    return _sweep(checks.operator_vs_enum, (1, 2, 3, 4), range(1, 7), (0.55, 0.7, 0.9), 1e-8)


def crit_closed_form_root():
    v = pressure.s_B_finite(1, 5, 2.0, LinearIndex(1, 0))
    err = abs(v - 5 / 16)
    return err <= 1e-10, f"s = {v!r}, error {err:.2g} (tol 1e-10)"


TREND_B = (1.5, 2.0, 4.0, 8.0, 16.0, 64.0)


def crit_sB_trend():
    vals = [SOLVER.estimate(B).value for B in TREND_B]
    decreasing = all(b < a for a, b in zip(vals, vals[1:]))
    in_range = all(0.5 < v < 1.0 for v in vals)
    near_half = abs(vals[-1] - 0.5) < 0.1
    low = SOLVER.estimate(1.1).value
    detail = (f"values {[round(v, 4) for v in vals]}; decreasing={decreasing}, in (1/2,1)={in_range}; "
              f"diagnostics: |s(64)-1/2|<0.1 {near_half}, s(1.1)={low:.4f}>0.85 {low > 0.85}")
    return decreasing and in_range, detail


def crit_cover_oracle():
    failed = []
    for name, fn in (("oracle", checks.cover_oracle_sweep), ("relations", checks.cover_relations),
                     ("log A_1 trend", checks.cover_limit_trend)):
        ok, detail = _sweep(fn)
        if not ok:
            failed.append(f"{name}: {detail}")
    return not failed, "; ".join(failed) or "16 oracle configurations, relations and trend hold"


def crit_khintchine():
    cfg = empirics.SampleConfig(seed=0, samples=200, digits_per_sample=10_000, workers=WORKERS)
    r = empirics.geometric_mean_experiment(cfg, 10_000, tolerance=0.05)
    mean = r.summary["mean"]
    ok = abs(mean - 2.685452001) <= 0.05 and r.discarded == 0
    return ok, f"mean {mean:.5f} over {len(r.values)} samples (target 2.685452001 +- 0.05)"


def crit_divisor_sum():
    growths, ok = [], True
    for k, s in itertools.product((2, 3), (0.6, 0.8)):
        r = empirics.divisor_sum_ratio(k, s, (10, 100, 1000, 10_000))
        g = max(b / a for a, b in zip(r.values, r.values[1:]))
        growths.append(round(g, 3))
        ok = ok and g < 3 and r.summary["enumerations_agree"]
    return ok, f"max decade growth per (k, s): {growths} (< 3)"


def crit_cantor():
    parts, ok = [], True
    for M, depth, prof in checks.CANTOR_CONFIGS:
        r = empirics.cantor_geometry_check(M, depth, prof)
        s = r.summary
        gaps = [row["min_gap_over_length"] for row in r.table if row["min_gap_over_length"] is not None]
        ok = ok and s["sandwich_ok"] and s["lengths_ok"] and s["gap_ok"]
        parts.append(f"M={M}: sandwich {s['sandwich_ok']}, gap {s['gap_ok']} "
                     f"(min gap/|J| {min(gaps):.4f} vs 1/M {1 / M:.4f})")
    return ok, "; ".join(parts)


def crit_case_analysis():
    notes, ok = [], True
    for psi in (Poly(1, 1), Poly(3, 2), DoubleExponential(0.5)):
        r = dim_Ef(exponents_from_psi(GrowthSpec(psi)))
        ok = ok and r.case == B_EQUALS_1 and r.value == 1.0
    for beta in (1.5, 2.0, 5.0):
        r = dim_Ef(exponents_from_psi(GrowthSpec(DoubleExponential(beta))))
        ok = ok and r.case == B_INFINITE and r.value == 1.0 / (1.0 + beta)
    r = dim_Ef(Exponents(math.inf, math.inf))
    ok = ok and r.case == B_INFINITE_B_INFINITE and r.value == 0.0
    notes.append(f"closed cases exact {ok}")

    t_est = [SOLVER.estimate(2.0, LinearIndex(1, t)) for t in (0, 1, 5)]
    t_ok = all(abs(a.value - b.value) <= a.uncertainty + b.uncertainty
               for a, b in itertools.combinations(t_est, 2))
    notes.append(f"t in {{0,1,5}}: {[round(e.value, 4) for e in t_est]} agree within bands {t_ok}")

    d_vals = [dim_Ef(Exponents(4.0 ** (1 / d), 1.0, LinearIndex(d, 0)), SOLVER).value for d in (1, 2, 3)]
    d_ok = all(b > a for a, b in zip(d_vals, d_vals[1:]))
    notes.append(f"B^d=4, d=1,2,3: {[round(v, 4) for v in d_vals]} increasing {d_ok}")
    return ok and t_ok and d_ok, "; ".join(notes)


CLI_RUNS = (
    ["sb", "--B", "2", "8"],
    ["dim", "--psi", "exp(3)", "--d", "2"],
    ["dim", "--psi", "dexp(2)"],
    ["expand", "--x", "pi-3", "--n", "20"],
    ["cover", "--n", "3", "--s", "0.7", "--B", "4", "--grid", "201"],
    ["check", "divisor-sum"],
    ["mc", "--experiment", "geomean", "--samples", "16", "--digits", "2000", "--n", "2000", "--seed", "5"],
    ["mc", "--experiment", "mixed", "--samples", "16", "--digits", "2000", "--n", "30", "--seed", "5"],
    ["mc", "--experiment", "limsup", "--samples", "16", "--digits", "500", "--window", "500", "--variant", "E1", "--seed", "5"],
    ["mc", "--experiment", "first-digit", "--samples", "2000", "--digits", "1", "--seed", "5"],
    ["mc", "--experiment", "divisor-sum", "--k", "2"],
    ["mc", "--experiment", "cantor", "--M", "2", "--depth", "2"],
)


def _cli(argv, workers):
    proc = subprocess.run([sys.executable, "-m", "cfdim", *argv, "--no-timestamp", "--workers", str(workers)],
                          capture_output=True, check=False)
    return proc.returncode, proc.stdout


def crit_determinism():
    bad = []
    for argv in CLI_RUNS:
        for fmt in ("csv", "json"):
            outs = {(w, rep): _cli([*argv, "--format", fmt], w) for w in (1, 8) for rep in range(2)}
            if len(set(outs.values())) != 1:
                bad.append(f"{argv[0]} {fmt}")
            elif not next(iter(outs.values()))[1]:
                bad.append(f"{argv[0]} {fmt} (empty output)")
    n = len(CLI_RUNS) * 2
    return not bad, f"{n - len(bad)}/{n} invocations byte-identical across 2 repeats x workers 1, 8" + \
        (f"; differing: {bad}" if bad else "")


CRITERIA = {
    1: ("exact continued-fraction sweeps", crit_exact_cf, 60),
    2: ("transfer operator vs enumeration", crit_operator_vs_enum, 120),
    3: ("closed-form root 5/16", crit_closed_form_root, 1),
    4: ("s_B decreasing in B", crit_sB_trend, 600),
    5: ("equalized cover vs grid oracle", crit_cover_oracle, 300),
    6: ("Khintchine geometric mean", crit_khintchine, 600),
    7: ("divisor-sum ratio growth", crit_divisor_sum, 300),
    8: ("Cantor-subset geometry", crit_cantor, 120),
    9: ("dimension case analysis", crit_case_analysis, 600),
    10: ("CLI determinism", crit_determinism, None),
}


def evaluate(number: int) -> Verdict:
    title, fn, limit = CRITERIA[number]
    start = time.perf_counter()
    try:
        passed, detail = fn()
    except Exception as exc:  # report, do not hide
        passed, detail = False, f"raised {type(exc).__name__}: {exc}"
    seconds = time.perf_counter() - start
    if limit is not None and seconds > limit:
        passed, detail = False, f"{detail}; over time limit"
    return Verdict(number, title, passed, detail, seconds, limit)


@pytest.mark.slow
@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, criterion_log):
    v = evaluate(number)
    print(v.line)
    criterion_log(v.line)
    assert v.passed, v.line


if __name__ == "__main__":
    wanted = [int(a) for a in sys.argv[1:]] or sorted(CRITERIA)
    verdicts = [evaluate(k) for k in wanted]
    for v in verdicts:
        print(v.line, flush=True)
    sys.exit(0 if all(v.passed for v in verdicts) else 1)
