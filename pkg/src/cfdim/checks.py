"""Invariant suites run by ``cfdim check <suite>``.

Each check returns a :class:`CheckResult`; a suite is a named list of checks.
The exhaustive continued-fraction sweeps use exact integer arithmetic
(numpy int64 with explicit overflow guards, or Python integers).
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

import numpy as np

from . import cf, cover, empirics, pressure
from .errors import ValidationError

INT64_SAFE = 2**62


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    counterexample: Optional[dict] = None
    seconds: float = 0.0

    def as_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail,
                "counterexample": self.counterexample, "seconds": self.seconds}


@dataclass
class SuiteReport:
    suite: str
    results: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def as_dict(self) -> dict:
        return {"suite": self.suite, "passed": self.passed,
                "results": [r.as_dict() for r in self.results]}


def _timed(name: str, fn: Callable[[], tuple]) -> CheckResult:
    t0 = time.perf_counter()
    ok, detail, cex = fn()
    return CheckResult(name, bool(ok), detail, cex, round(time.perf_counter() - t0, 3))


# -- exhaustive word tables ---------------------------------------------------


def all_words(length: int, max_digit: int) -> np.ndarray:
    """Every word in {1..max_digit}^length as rows of an int64 array (lexicographic)."""
    if length == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grids = np.meshgrid(*([np.arange(1, max_digit + 1, dtype=np.int64)] * length), indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=1)


def continuant_pairs(words: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Vectorized (p_{n-1}, p_n, q_{n-1}, q_n) for every row of ``words``."""
    n_words = words.shape[0]
    pp = np.ones(n_words, dtype=np.int64)
    p = np.zeros(n_words, dtype=np.int64)
    qp = np.zeros(n_words, dtype=np.int64)
    q = np.ones(n_words, dtype=np.int64)
    for j in range(words.shape[1]):
        a = words[:, j]
        pp, p = p, a * p + pp
        qp, q = q, a * q + qp
    return pp, p, qp, q


def _guard(max_digit: int, length: int, factor: int = 1):
    # q_n <= (a_max + 1)^n bounds every product formed below
    bound = (max_digit + 1) ** length
    if factor * bound * bound >= INT64_SAFE:
        raise ValidationError(f"sweep range overflows int64 (digits <= {max_digit}, length {length})")


# -- cf-core sweeps -----------------------------------------------------------


def determinant_symbolic(max_length: int = 12) -> tuple:
    """p_n q_{n-1} - p_{n-1} q_n = (-1)^(n+1) as a polynomial identity in a_1..a_n.

    Holding as polynomials means it holds for every digit value, which
    covers any finite sweep range.
    """
    import sympy

    a = sympy.symbols(f"a1:{max_length + 1}")
    pp, p, qp, q = sympy.Integer(1), sympy.Integer(0), sympy.Integer(0), sympy.Integer(1)
    for n in range(1, max_length + 1):
        pp, p = p, sympy.expand(a[n - 1] * p + pp)
        qp, q = q, sympy.expand(a[n - 1] * q + qp)
        det = sympy.expand(p * qp - pp * q)
        if det != (-1) ** (n + 1):
            return False, f"identity fails at length {n}: {det}", {"length": n}
    return True, f"polynomial identity verified for lengths 1..{max_length}", None


def determinant_sweep(max_length: int = 6, max_digit: int = 10) -> tuple:
    """Enumerative cross-check of the determinant identity."""
    _guard(max_digit, max_length)
    count = 0
    for n in range(1, max_length + 1):
        w = all_words(n, max_digit)
        pp, p, qp, q = continuant_pairs(w)
        det = p * qp - pp * q
        bad = np.nonzero(det != (-1) ** (n + 1))[0]
        if bad.size:
            return False, f"length {n}", {"word": w[bad[0]].tolist(), "det": int(det[bad[0]])}
        count += w.shape[0]
    return True, f"{count} words, lengths 1..{max_length}, digits <= {max_digit}", None


def deletion_sweep(max_length: int = 8, max_digit: int = 6) -> tuple:
    """(a_k + 1)/2 <= q_n(w) / q_{n-1}(w without a_k) <= a_k + 1 for every k."""
    _guard(max_digit, max_length, 4)
    checks = 0
    for n in range(1, max_length + 1):
        w = all_words(n, max_digit)
        q = continuant_pairs(w)[3]
        for k in range(n):
            rest = np.delete(w, k, axis=1)
            q_del = continuant_pairs(rest)[3]
            ak1 = w[:, k] + 1
            lower = 2 * q >= ak1 * q_del
            upper = q <= ak1 * q_del
            bad = np.nonzero(~(lower & upper))[0]
            if bad.size:
                i = bad[0]
                return False, f"length {n}, deleted position {k + 1}", {
                    "word": w[i].tolist(), "k": k + 1, "q": int(q[i]), "q_deleted": int(q_del[i])}
            checks += w.shape[0]
    return True, f"{checks} (word, position) pairs, lengths <= {max_length}, digits <= {max_digit}", None


def concatenation_sweep(max_length: int = 5, max_digit: int = 5) -> tuple:
    """q_n(u) q_k(v) <= q_{n+k}(uv) <= 2 q_n(u) q_k(v).

    The concatenation is evaluated by running the recurrence on from the
    state of ``u``, never through a continuant identity.
    """
    _guard(max_digit, 2 * max_length, 2)
    words = {n: all_words(n, max_digit) for n in range(1, max_length + 1)}
    q_of = {n: continuant_pairs(w)[3] for n, w in words.items()}
    pairs = 0
    for n, U in words.items():
        _, _, u_qp, u_q = continuant_pairs(U)
        for k, V in words.items():
            for j in range(V.shape[0]):
                v = V[j]
                qp, q = u_qp, u_q
                for a in v:
                    qp, q = q, a * q + qp
                prod = u_q * q_of[k][j]
                ok = (prod <= q) & (q <= 2 * prod)
                if not ok.all():
                    i = int(np.nonzero(~ok)[0][0])
                    return False, f"lengths {n}+{k}", {"u": U[i].tolist(), "v": v.tolist()}
                pairs += U.shape[0]
    return True, f"{pairs} pairs (u, v), lengths <= {max_length}, digits <= {max_digit}", None


def growth_sweep(max_length: int = 64) -> tuple:
    """q_n >= 2^((n-1)/2) on all-ones words, i.e. q_n^2 >= 2^(n-1), exactly."""
    for n in range(1, max_length + 1):
        q = cf.continuant((1,) * n)
        if q * q < 2 ** (n - 1):
            return False, f"length {n}", {"n": n, "q": q}
    return True, f"all-ones words of length 1..{max_length}", None


def cylinder_length_sweep(max_length: int = 5, max_digit: int = 5) -> tuple:
    count = 0
    for n in range(1, max_length + 1):
        for w in itertools.product(range(1, max_digit + 1), repeat=n):
            st = cf.convergent_state(w)
            c = cf.cylinder(w)
            if c.length * st.q_cur * (st.q_cur + st.q_prev) != 1:
                return False, "length identity", {"word": list(w)}
            count += 1
    return True, f"{count} cylinders", None


def _strict_subset(child: cf.CylinderInterval, parent: cf.CylinderInterval) -> bool:
    if child.lo < parent.lo or child.hi > parent.hi:
        return False
    if child.lo == parent.lo and child.closed_lo and not parent.closed_lo:
        return False
    if child.hi == parent.hi and child.closed_hi and not parent.closed_hi:
        return False
    return True


def nesting_sweep(max_length: int = 4, max_digit: int = 5) -> tuple:
    """Closure of every child cylinder lies in the closure of its parent.

    Set inclusion with the half-open ends can fail only at a shared rational
    endpoint with two expansions (e.g. 1/2 = [2] = [1, 1]); those pairs are
    counted in the detail but do not fail the check.
    """
    count = endpoint_only = 0
    for n in range(1, max_length + 1):
        for w in itertools.product(range(1, max_digit + 1), repeat=n):
            parent = cf.cylinder(w)
            for a in range(1, max_digit + 1):
                child = cf.cylinder(w + (a,))
                if child.lo < parent.lo or child.hi > parent.hi:
                    return False, "nesting", {"word": list(w), "a": a}
                if not _strict_subset(child, parent):
                    endpoint_only += 1
                count += 1
    return True, f"{count} (parent, child) pairs; {endpoint_only} differ from strict inclusion only at a shared endpoint", None


def expand_roundtrip_sweep(max_length: int = 6, max_digit: int = 8) -> tuple:
    """The midpoint of cylinder(w) expands to a word starting with w."""
    count = 0
    for n in range(1, max_length + 1):
        W = all_words(n, max_digit)
        pp, p, qp, q = continuant_pairs(W)
        for i in range(W.shape[0]):
            P, Q, PP, QP = int(p[i]), int(q[i]), int(pp[i]), int(qp[i])
            # midpoint of p/q and (p+pp)/(q+qp)
            num = P * (Q + QP) + (P + PP) * Q
            den = 2 * Q * (Q + QP)
            g = math.gcd(num, den)
            digits = cf.gauss_digits(num // g, den // g, num // g, den // g, n)
            if tuple(digits) != tuple(W[i].tolist()):
                return False, "roundtrip", {"word": W[i].tolist(), "got": digits}
            count += 1
    return True, f"{count} words, lengths <= {max_length}, digits <= {max_digit}", None


def expand_examples() -> tuple:
    got = {
        "golden": cf.expand(cf.golden_enclosure(), 6),
        "2/5": cf.expand(Fraction(2, 5), 3),
        "pi-3": cf.expand(cf.pi_minus_3_enclosure(), 4),
    }
    want = {"golden": (1,) * 6, "2/5": (2, 2), "pi-3": (7, 15, 1, 292)}
    ok = got == want
    return ok, str(got), None if ok else {"got": str(got), "want": str(want)}


def cf_inequalities() -> SuiteReport:
    rep = SuiteReport("cf-inequalities")
    rep.results += [
        _timed("determinant-symbolic", determinant_symbolic),
        _timed("determinant-sweep", determinant_sweep),
        _timed("deletion-bounds", deletion_sweep),
        _timed("concatenation-bounds", concatenation_sweep),
        _timed("all-ones-growth", growth_sweep),
        _timed("cylinder-length", cylinder_length_sweep),
        _timed("cylinder-nesting", nesting_sweep),
        _timed("expand-roundtrip", expand_roundtrip_sweep),
        _timed("expand-examples", expand_examples),
    ]
    return rep


# -- pressure ----------------------------------------------------------------


def operator_vs_enum(Ms=(1, 2, 3, 4), lengths=range(1, 7), ss=(0.55, 0.7, 0.9), rtol=1e-8) -> tuple:
    worst = 0.0
    for M in Ms:
        for m in lengths:
            for s in ss:
                e = pressure.cylinder_sum_enum(M, m, s).value
                o = pressure.cylinder_sum_operator(M, m, s).value
                rel = abs(o - e) / e
                worst = max(worst, rel)
                if rel > rtol:
                    return False, f"relative difference {rel:.3g}", {"M": M, "m": m, "s": s, "enum": e, "operator": o}
    return True, f"max relative difference {worst:.3g}", None


def closed_form_root(tol: float = 1e-10) -> tuple:
    v = pressure.s_B_finite(1, 5, 2.0, cf.LinearIndex(1, 0))
    err = abs(v - 5 / 16)
    return err <= tol, f"s = {v!r}, |s - 5/16| = {err:.3g}", None if err <= tol else {"s": v}


def sum_examples() -> tuple:
    import mpmath

    a = pressure.cylinder_sum_enum([1], 5, 1.0).value
    b = pressure.cylinder_sum_enum([1, 2], 1, 0.5).value
    c = pressure.cylinder_sum_enum([1, 2], 3, 0.7).value
    with mpmath.workdps(40):
        ref = mpmath.fsum(mpmath.mpf(cf.continuant(w)) ** mpmath.mpf("-1.4")
                          for w in itertools.product((1, 2), repeat=3))
    ok = abs(a - 1 / 64) <= 1e-15 and abs(b - 1.5) <= 1e-15 and abs(c - float(ref)) <= 1e-14 * float(ref)
    return ok, f"{a!r}, {b!r}, {c!r} vs {float(ref)!r}", None if ok else {"values": [a, b, c]}


def defect_monotone(points: int = 20) -> tuple:
    for M, n, B in [(1, 5, 2.0), (3, 3, 4.0), (4, 2, 1.5)]:
        grid = np.linspace(0.05, 1.0, points)
        vals = [pressure.defect(pressure.PressureQuery(M, n, B, cf.LinearIndex(), float(s))) for s in grid]
        if any(v2 >= v1 for v1, v2 in zip(vals, vals[1:])):
            return False, "defect not decreasing", {"M": M, "n": n, "B": B}
    return True, f"{points}-point grids strictly decreasing", None


def _root_table(Ms, ns, Bs) -> dict:
    return {(M, n, B): pressure.s_B_finite(M, n, B, tol=1e-12) for M in Ms for n in ns for B in Bs}


ROOT_GRID = (tuple(range(1, 9)), tuple(range(1, 7)), (1.1, 1.2, 1.5, 2.0, 4.0, 8.0, 16.0, 64.0))


def finite_root_range(lo: float = 0.0, hi: float = 1.2) -> tuple:
    tab = _root_table(*ROOT_GRID)
    out = {f"M={M},n={n},B={B}": s for (M, n, B), s in tab.items() if not lo < s < hi}
    if out:
        return False, f"{len(out)} of {len(tab)} roots outside ({lo}, {hi})", out
    return True, f"{len(tab)} roots in ({lo}, {hi})", None


def finite_root_monotone(slack: float = 1e-11, above_half_only: bool = False) -> tuple:
    """Nondecreasing in M (alphabet inclusion) and nonincreasing in B.

    With ``above_half_only`` the B-comparison is restricted to pairs whose
    roots are both >= 1/2; below 1/2 the factor B^(-(2s-1) d n) grows with B
    and the root moves up instead.
    """
    Ms, ns, Bs = ROOT_GRID
    tab = _root_table(Ms, ns, Bs)
    skipped = 0
    for (M, n, B), s in tab.items():
        if M > 1 and s < tab[M - 1, n, B] - slack:
            return False, "decreasing in M", {"M": M, "n": n, "B": B}
        i = Bs.index(B)
        if not i:
            continue
        prev = tab[M, n, Bs[i - 1]]
        if above_half_only and min(s, prev) < 0.5:
            skipped += 1
            continue
        if s > prev + slack:
            return False, "increasing in B", {"M": M, "n": n, "B": B, "s": s, "s_prev_B": prev}
    note = f" ({skipped} B-pairs with a root below 1/2 skipped)" if above_half_only else ""
    return True, f"{len(tab)} roots monotone in M and B{note}", None


def operator_refinement() -> tuple:
    r = pressure.cylinder_sum_operator(4, 12, 0.75)
    r2 = pressure.cylinder_sum_operator(4, 12, 0.75, degree=2 * (r.degree or 16))
    rel = abs(r.value - r2.value) / r2.value
    return r.value > 0 and rel <= 1e-8, f"value {r.value!r} at degree {r.degree}, refinement diff {rel:.3g}", None


def pressure_oracles() -> SuiteReport:
    rep = SuiteReport("pressure-oracles")
    rep.results += [
        _timed("operator-vs-enumeration", operator_vs_enum),
        _timed("closed-form-root", closed_form_root),
        _timed("sum-examples", sum_examples),
        _timed("defect-decreasing", defect_monotone),
        _timed("finite-root-range", finite_root_range),
        _timed("finite-root-monotonicity", finite_root_monotone),
        _timed("finite-root-monotonicity-above-half", lambda: finite_root_monotone(above_half_only=True)),
        _timed("operator-degree-refinement", operator_refinement),
    ]
    return rep


# -- cover -------------------------------------------------------------------

COVER_GRID_POINTS = {2: 2001, 3: 301}


def cover_oracle_sweep(tol: float = 1e-9) -> tuple:
    rows = []
    for n, s, B, d in itertools.product((2, 3), (0.6, 0.8), (2.0, 4.0), (1, 2)):
        prof = cover.equalized_cover(n, s, B, d)
        terms = cover.cover_terms(prof)
        spread = max(terms) - min(terms)
        if spread > tol:
            return False, "terms not equal", {"n": n, "s": s, "B": B, "d": d, "spread": spread}
        grid, slack = cover.supremum_grid_oracle(n, s, B, d, COVER_GRID_POINTS[n])
        eq = cover.cover_value(prof)
        if grid > eq + slack:
            return False, "grid exceeds equalized value", {"n": n, "s": s, "B": B, "d": d, "grid": grid, "eq": eq}
        rows.append(eq - grid)
    return True, f"16 configurations; equalized - grid in [{min(rows):.3g}, {max(rows):.3g}]", None


def cover_relations(tol: float = 1e-9) -> tuple:
    """Profile recursion, product relation, budget and monotonicity for equalized profiles.

    recursion: s log A_{k+1} = s log A_1 + (1-s) log A_k
    product:   (1-2s) log(A_1...A_k) = -s k log A_1 + (1-s) log A_k
    """
    worst = 0.0
    for n in range(1, 31):
        for s, B, d in itertools.product(np.linspace(0.55, 0.95, 9), (2.0, 4.0), (1, 2)):
            s = float(s)
            prof = cover.equalized_cover(n, s, B, d)
            logA, logAlpha = prof.logA, prof.logAlpha
            scale = max(1.0, max(abs(x) for x in logAlpha))
            cfg = {"n": n, "s": s, "B": B, "d": d}
            for k in range(1, n):
                err = abs(s * logA[k] - (s * logA[0] + (1 - s) * logA[k - 1])) / scale
                worst = max(worst, err)
                if err > tol:
                    return False, "recursion", {**cfg, "k": k + 1, "err": err}
                if logA[k] < logA[k - 1]:
                    return False, "profile not nondecreasing", {**cfg, "k": k + 1}
            for k in range(1, n + 1):
                err = abs((1 - 2 * s) * logAlpha[k - 1] - (-s * k * logA[0] + (1 - s) * logA[k - 1])) / scale
                worst = max(worst, err)
                if err > tol:
                    return False, "product relation", {**cfg, "k": k, "err": err}
            budget = d * n * math.log(B)
            if abs(math.fsum(logA) - budget) > tol * budget:
                return False, "budget", cfg
    return True, f"n <= 30, 9 s-values, 4 (B, d) pairs; max relative error {worst:.3g}", None


def cover_perturbation(delta: float = 0.1) -> tuple:
    """Moving any free log alpha_k off the equalized profile lowers the min term."""
    for n, s, B, d in itertools.product((2, 3, 5), (0.6, 0.8), (2.0, 4.0), (1, 2)):
        prof = cover.equalized_cover(n, s, B, d)
        base = min(cover.cover_terms(prof))
        free = list(prof.logAlpha[:-1])
        for k in range(len(free)):
            for sign in (1, -1):
                moved = free.copy()
                moved[k] += sign * delta
                val = min(cover.log_cover_terms(n, s, moved, prof.log_budget))
                if not val < base:
                    return False, "perturbation did not decrease", {"n": n, "s": s, "B": B, "d": d, "k": k + 1}
    one = cover.cover_value(cover.equalized_cover(1, 0.7, 2.0, 1))
    ok = abs(one - 2.0 ** (-0.7)) < 1e-15
    return ok, f"all single-coordinate moves of +-{delta} lower the min; n=1 value {one!r}", None


def cover_limit_trend(ns=(5, 10, 20, 40)) -> tuple:
    for s, B, d in itertools.product((0.6, 0.8), (2.0, 4.0), (1, 2)):
        limit = (2 - 1 / s) * d * math.log(B)
        gaps = [abs(cover.equalized_cover(n, s, B, d).logA[0] - limit) for n in ns]
        if any(g2 >= g1 for g1, g2 in zip(gaps, gaps[1:])):
            return False, "gap not shrinking", {"s": s, "B": B, "d": d, "gaps": gaps}
    return True, f"log A_1 gap shrinks over n = {list(ns)}", None


def iteration_examples() -> tuple:
    h = cover.h_iter(0.5, 2)[2]
    f = cover.f_iter(0.5, 3)[3]
    fs = [cover.f_iter(0.7, m)[m] for m in range(1, 60)]
    # strictly decreasing until it reaches the fixed point in floating point
    dec = all(b < a for a, b in zip(fs[:20], fs[1:21])) and all(b <= a for a, b in zip(fs, fs[1:]))
    conv = abs(fs[-1] - 0.4) < 1e-12
    two = cover.two_term_sup(0.7, 3.0, 200_001)
    ok = abs(h - 1 / 6) < 1e-15 and abs(f - 1 / 6) < 1e-15 and dec and conv and abs(two + cover.h_iter(0.7, 2)[2] * 3.0) < 1e-4
    return ok, f"h_2(1/2)={h!r}, f_3(1/2)={f!r}, f_m(0.7) decreasing to {fs[-1]!r}", None


def cover_suite() -> SuiteReport:
    rep = SuiteReport("cover-optimality")
    rep.results += [
        _timed("grid-oracle-vs-equalized", cover_oracle_sweep),
        _timed("profile-relations", cover_relations),
        _timed("perturbation", cover_perturbation),
        _timed("log-A1-trend", cover_limit_trend),
        _timed("iteration-examples", iteration_examples),
    ]
    return rep


# -- empirics ----------------------------------------------------------------


def divisor_sum_suite() -> SuiteReport:
    rep = SuiteReport("divisor-sum")
    for k, s in itertools.product((2, 3), (0.6, 0.8)):
        def run(k=k, s=s):
            r = empirics.divisor_sum_ratio(k, s)
            return r.passed, f"ratios {[round(v, 4) for v in r.values]}, max growth {r.summary['max_growth']:.4g}", \
                None if r.passed else r.summary
        rep.results.append(_timed(f"k={k},s={s}", run))

    def k1():
        r = empirics.divisor_sum_ratio(1, 0.6)
        trend = all(b > a for a, b in zip(r.values, r.values[1:])) and r.values[-1] < 1 / (1 - 0.6)
        return r.passed and trend, f"ratios {[round(v, 4) for v in r.values]} approaching {1 / 0.4}", None
    rep.results.append(_timed("k=1 trend", k1))
    return rep


CANTOR_CONFIGS = ((2, 2, {}), (3, 3, {2: 5}))


def cantor_suite() -> SuiteReport:
    rep = SuiteReport("cantor-geometry")
    for M, depth, prof in CANTOR_CONFIGS:
        r = empirics.cantor_geometry_check(M, depth, prof)
        tag = f"M={M},depth={depth},profile={prof}"
        fails = r.summary["failures_by_check"]
        rep.results.append(CheckResult(f"{tag} lengths", r.summary["lengths_ok"], str(fails)))
        rep.results.append(CheckResult(f"{tag} sandwich", r.summary["sandwich_ok"], str(fails)))
        worst = [row["min_gap_over_length"] for row in r.table if row["min_gap_over_length"] is not None]
        rep.results.append(CheckResult(
            f"{tag} gap >= |J|/M", r.summary["gap_ok"],
            f"min gap/|J| = {min(worst):.4g}, required {1 / M:.4g}",
            None if r.summary["gap_ok"] else {"counterexamples": r.summary["counterexamples"]}))
    return rep


def sampler_suite(samples: int = 100_000, seed: int = 20240101) -> SuiteReport:
    rep = SuiteReport("sampler")

    def law():
        r = empirics.first_digit_law(empirics.SampleConfig(seed=seed, samples=samples, digits_per_sample=1))
        zs = [round(row["z"], 2) for row in r.table]
        return r.passed, f"z-scores {zs}", None if r.passed else {"table": r.table}
    rep.results.append(_timed("first-digit-law", law))

    def determinism():
        cfg = dict(seed=seed, samples=16, digits_per_sample=200)
        a = empirics.geometric_mean_experiment(empirics.SampleConfig(**cfg, workers=1), 200).to_json()
        b = empirics.geometric_mean_experiment(empirics.SampleConfig(**cfg, workers=2), 200).to_json()
        return a == b, "identical reports for workers 1 and 2" if a == b else "reports differ", None
    rep.results.append(_timed("determinism", determinism))

    def golden():
        digits = cf.expand(cf.golden_enclosure(2048), 500)
        g = empirics.geometric_mean(digits)
        return g == 1.0, f"golden-ratio geometric mean {g!r}", None
    rep.results.append(_timed("golden-mean", golden))
    return rep


SUITES = {
    "cf-inequalities": cf_inequalities,
    "pressure-oracles": pressure_oracles,
    "cover-optimality": cover_suite,
    "cover-prop31": cover_suite,
    "divisor-sum": divisor_sum_suite,
    "lemma51": divisor_sum_suite,
    "cantor-geometry": cantor_suite,
    "sampler": sampler_suite,
}


def run_suite(name: str) -> SuiteReport:
    if name not in SUITES:
        raise ValidationError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return SUITES[name]()
