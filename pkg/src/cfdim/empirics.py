"""Monte Carlo and exhaustive desk-scale experiments.

Random points are Lebesgue-uniform: each sample draws ``precision_bits``
random bits ``k`` and works with the dyadic interval ``[k/2^b, (k+1)/2^b]``.
Only digits shared by the whole interval are used, so no digit is ever a
floating-point artifact; a sample whose interval runs out early is discarded
and counted.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import math
from collections import Counter
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .cf import LinearIndex, convergent_state, fundamental_interval, fundamental_length, gauss_digits
from .dimension import GrowthSpec
from .errors import BudgetExceeded, PrecisionExhausted, ValidationError
from .parallel import ordered_map

KHINTCHINE = 2.685452001065306


@dataclass(frozen=True)
class SampleConfig:
    seed: int = 0
    samples: int = 200
    digits_per_sample: int = 10_000
    precision_bits: Optional[int] = None  # default: 4 * digits + 64
    workers: int = 1

    def __post_init__(self):
        if self.samples < 1:
            raise ValidationError("samples must be >= 1")
        if self.digits_per_sample < 1:
            raise ValidationError("digits_per_sample must be >= 1")
        if self.precision_bits is not None and self.precision_bits < 8:
            raise ValidationError("precision_bits must be >= 8")

    @property
    def bits(self) -> int:
        return self.precision_bits or 4 * self.digits_per_sample + 64

    def as_dict(self) -> dict:
        d = asdict(self)
        d.pop("workers")  # parallelism never changes a report
        d["bits"] = self.bits
        return d


@dataclass
class ExperimentReport:
    statistic: str
    config: dict
    params: dict = field(default_factory=dict)
    values: list = field(default_factory=list)
    summary: dict = field(default_factory=dict)
    target: Optional[float] = None
    tolerance: Optional[float] = None
    passed: Optional[bool] = None
    discarded: int = 0
    notes: list = field(default_factory=list)
    table: list = field(default_factory=list)  # list of row dicts

    def as_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=True, default=_json_default)

    def to_csv(self) -> str:
        """Comment header with the metadata, then ``table`` (or ``values``) as rows."""
        buf = io.StringIO()
        meta = {k: v for k, v in self.as_dict().items() if k not in ("values", "table")}
        for key, val in meta.items():
            buf.write(f"# {key}: {json.dumps(val, sort_keys=True, default=_json_default)}\n")
        rows = self.table or [{"index": i, "value": v} for i, v in enumerate(self.values)]
        if rows:
            w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
            w.writeheader()
            w.writerows(rows)
        return buf.getvalue()


def _json_default(o):
    if isinstance(o, Fraction):
        return str(o)
    if isinstance(o, (np.integer,)):
        return int(o)
    if isinstance(o, (np.floating,)):
        return float(o)
    raise TypeError(f"not JSON serializable: {type(o).__name__}")


def _summary(values: Sequence[float]) -> dict:
    if not values:
        return {"count": 0}
    a = np.asarray(values, dtype=float)
    q = np.quantile(a, [0.05, 0.25, 0.5, 0.75, 0.95])
    return {"count": int(a.size), "mean": math.fsum(a) / a.size,
            "std": float(a.std(ddof=1)) if a.size > 1 else 0.0,
            "q05": float(q[0]), "q25": float(q[1]), "median": float(q[2]),
            "q75": float(q[3]), "q95": float(q[4])}


# -- sampler -----------------------------------------------------------------


def sample_interval(seed: int, index: int, bits: int) -> tuple[int, int]:
    """Numerator ``k`` of the dyadic interval ``[k/2^bits, (k+1)/2^bits]`` for one sample."""
    rng = np.random.default_rng(np.random.SeedSequence([seed, index]))
    nbytes = (bits + 7) // 8
    return int.from_bytes(rng.bytes(nbytes), "little") >> (8 * nbytes - bits)


def sample_digits(seed: int, index: int, n: int, bits: int) -> list[int]:
    """First ``n`` certified digits of sample ``index``; raises PrecisionExhausted."""
    k = sample_interval(seed, index, bits)
    den = 1 << bits
    if k == 0:
        raise PrecisionExhausted("sample interval touches 0")
    return gauss_digits(k, den, k + 1, den, n)


def _run_samples(config: SampleConfig, n: int, fn) -> tuple[list, int]:
    """Apply ``fn`` to each sample's digit list; returns (results, discarded)."""
    if n > config.digits_per_sample:
        raise ValidationError(f"needs {n} digits but digits_per_sample = {config.digits_per_sample}")
    jobs = [(config.seed, i, n, config.bits, fn) for i in range(config.samples)]
    out = ordered_map(_sample_job, jobs, config.workers, chunksize=max(1, len(jobs) // (4 * max(config.workers, 1))))
    kept = [r for r in out if r is not None]
    return kept, len(out) - len(kept)


def _sample_job(args):
    seed, i, n, bits, fn = args
    try:
        digits = sample_digits(seed, i, n, bits)
    except PrecisionExhausted:
        return None
    return fn(digits)


def digit_log_mean(digits: Sequence[int]) -> float:
    return math.fsum(math.log(a) for a in digits) / len(digits)


def geometric_mean(digits: Sequence[int]) -> float:
    """(a_1 ... a_n)^(1/n) via a log sum."""
    return math.exp(digit_log_mean(digits))


# -- experiments -------------------------------------------------------------


def geometric_mean_experiment(config: SampleConfig, n: int, tolerance: float = 0.05) -> ExperimentReport:
    """Sample mean of (a_1...a_n)^(1/n), compared with Khintchine's constant."""
    if n < 1:
        raise ValidationError("n must be >= 1")
    vals, discarded = _run_samples(config, n, _GeoMean(n))
    summ = _summary(vals)
    passed = bool(vals) and abs(summ["mean"] - KHINTCHINE) <= tolerance
    return ExperimentReport("geometric_mean", config.as_dict(), {"n": n}, vals, summ,
                            KHINTCHINE, tolerance, passed, discarded)


@dataclass(frozen=True)
class _GeoMean:
    n: int

    def __call__(self, digits):
        return geometric_mean(digits[: self.n])


@dataclass(frozen=True)
class _MixedMean:
    n: int
    step: int

    def __call__(self, digits):
        return geometric_mean([digits[i * self.step - 1] for i in range(1, self.n + 1)])


def mixed_digits(digits: Sequence[int], index: LinearIndex, n: int) -> list[int]:
    """a_{f(n)}, a_{2 f(n)}, ..., a_{n f(n)}."""
    step = index(n)
    return [digits[i * step - 1] for i in range(1, n + 1)]


def mixed_geometric_mean(config: SampleConfig, index: LinearIndex, n: int) -> ExperimentReport:
    """Distribution of (prod_i a_{i f(n)})^(1/n). Exploratory: no target, no verdict."""
    if n < 1:
        raise ValidationError("n must be >= 1")
    need = n * index(n)
    vals, discarded = _run_samples(config, need, _MixedMean(n, index(n)))
    return ExperimentReport(
        "mixed_geometric_mean", config.as_dict(), {"n": n, "d": index.d, "t": index.t},
        vals, _summary(vals), discarded=discarded,
        notes=["no convergence claim exists for this statistic; distribution only"])


@dataclass(frozen=True)
class _EventCounter:
    variant: str
    log_thresholds: tuple  # index n-1 -> threshold on the log statistic
    steps: tuple  # f(n) per n (E_f variant)

    def __call__(self, digits):
        logs = [math.log(a) for a in digits]
        hits = 0
        first = None
        for n, thr in enumerate(self.log_thresholds, start=1):
            if self.variant == "E1":
                ok = logs[n - 1] >= thr
            else:
                step = self.steps[n - 1]
                ok = math.fsum(logs[i * step - 1] for i in range(1, n + 1)) >= n * thr
            if ok:
                hits += 1
                if first is None:
                    first = n
        return hits, first


def limsup_event_frequency(config: SampleConfig, spec: GrowthSpec, window: int,
                           variant: str = "Ef", ks: Sequence[int] = (1, 2, 4, 8)) -> ExperimentReport:
    """Fraction of samples where the digit event holds for at least k indices n <= window.

    ``variant="E1"``: a_n >= psi(n). ``variant="Ef"``:
    a_{f(n)} a_{2f(n)} ... a_{n f(n)} >= psi(n)^n.
    """
    if variant not in ("E1", "Ef"):
        raise ValidationError(f"variant must be 'E1' or 'Ef', got {variant!r}")
    if window < 1:
        raise ValidationError("window must be >= 1")
    # E1 compares a_n with psi(n) directly; no index function involved
    log_thr = tuple(spec.log_psi(n) for n in range(1, window + 1))
    steps = tuple(spec.index(n) for n in range(1, window + 1))
    need = window if variant == "E1" else window * steps[-1]
    counts, discarded = _run_samples(config, need, _EventCounter(variant, log_thr, steps))
    kept = len(counts)
    fractions = {k: (sum(1 for h, _ in counts if h >= k) / kept if kept else float("nan")) for k in ks}
    table = [{"k": k, "fraction": fractions[k]} for k in ks]
    return ExperimentReport(
        f"limsup_event_frequency[{variant}]", config.as_dict(),
        {"psi": str(spec.psi), "d": spec.index.d, "t": spec.index.t, "window": window, "variant": variant},
        [h for h, _ in counts], {"fractions": {str(k): v for k, v in fractions.items()}, "kept": kept},
        discarded=discarded, table=table,
        notes=["'infinitely many n' truncated to n <= window; k-occurrence counts make this explicit"])


# -- tuple sums --------------------------------------------------------------


def product_counts_enum(k: int, bound: int) -> Counter:
    """Counter {P: number of ordered k-tuples of positive integers with product P < bound}."""
    counts = Counter()

    def rec(depth, prod):
        if depth == k:
            counts[prod] += 1
            return
        a = 1
        while prod * a < bound:
            rec(depth + 1, prod * a)
            a += 1

    if bound > 1:
        rec(0, 1)
    return counts


def product_counts_sieve(k: int, bound: int) -> Counter:
    """Same counts via the divisor-function recursion d_k = d_{k-1} * 1 (Dirichlet convolution)."""
    if bound <= 1:
        return Counter()
    size = bound  # entries 0..bound-1
    dk = np.zeros(size, dtype=np.int64)
    dk[1:] = 1  # d_1
    for _ in range(k - 1):
        nxt = np.zeros(size, dtype=np.int64)
        for m in range(1, size):
            if dk[m]:
                nxt[m::m] += dk[m]
        dk = nxt
    return Counter({int(p): int(c) for p, c in enumerate(dk) if c})


def tuple_sum(counts: Counter, s: float) -> float:
    """sum over tuples of (a_1...a_k)^(-s), from product counts."""
    return math.fsum(c * p ** (-s) for p, c in sorted(counts.items()))


def divisor_sum_ratio(k: int, s: float, phi_grid: Sequence[float] = (10, 100, 1000, 10_000),
                  max_phi: int = 10_000, growth_limit: float = 3.0) -> ExperimentReport:
    """LHS = sum_{a_1...a_k < phi} (a_1...a_k)^(-s) against phi^(1-s) (log phi)^(k-1).

    LHS is computed by two independent enumerations whose product counts must
    agree exactly; the verdict is that the ratio grows by less than
    ``growth_limit`` between successive grid points.
    """
    if not 1 <= k <= 3:
        raise ValidationError("k must be 1, 2 or 3")
    if not 0 < s < 1:
        raise ValidationError("s must lie in (0, 1)")
    grid = list(phi_grid)
    if any(p <= 1 for p in grid):
        raise ValidationError("phi values must exceed 1")
    if any(p > max_phi for p in grid):
        raise BudgetExceeded(f"phi values above {max_phi} are too costly to enumerate")
    if grid != sorted(grid):
        raise ValidationError("phi_grid must be increasing")
    top = math.ceil(max(grid))
    enum = product_counts_enum(k, top)
    sieve = product_counts_sieve(k, top)
    agree = enum == sieve
    rows = []
    for phi in grid:
        sub = Counter({p: c for p, c in enum.items() if p < phi})
        lhs = tuple_sum(sub, s)
        rhs = phi ** (1 - s) * math.log(phi) ** (k - 1)
        rows.append({"phi": phi, "lhs": lhs, "rhs": rhs, "ratio": lhs / rhs, "tuples": sum(sub.values())})
    growth = [rows[i + 1]["ratio"] / rows[i]["ratio"] for i in range(len(rows) - 1)]
    for r, g in zip(rows[1:], growth):
        r["growth"] = g
    rows[0]["growth"] = None
    passed = agree and all(g < growth_limit for g in growth)
    return ExperimentReport("divisor_sum_ratio", {}, {"k": k, "s": s, "phi_grid": grid},
                            [r["ratio"] for r in rows], {"enumerations_agree": agree,
                                                         "max_growth": max(growth) if growth else None},
                            None, growth_limit, passed, table=rows)


# -- Cantor geometry ---------------------------------------------------------


def _digit_range(pos: int, M: int, profile: dict) -> tuple[int, int]:
    if pos in profile:
        A = profile[pos]
        return A, 2 * A
    return 1, M


def cantor_geometry_check(M: int, depth: int, range_profile: Optional[dict] = None,
                          budget: int = 100_000) -> ExperimentReport:
    """Exact length and gap checks for fundamental intervals of a miniature Cantor set.

    Digits range over 1..M except at positions listed in ``range_profile``
    (1-based position -> A), which range over [A, 2A]. For every order
    0..depth, each fundamental interval J (union of next-level cylinders over
    the allowed next digit) is checked against

    * next digit ordinary: 1/(6 q^2) <= |J| <= 1/q^2;
    * next digit in [A, 2A]: 1/(32 A q^2) <= |J| <= 1/(A q^2);
    * the gap from J to the nearest other interval of the same order is
      at least |J|/M.

    Also reported (not part of the verdict): the distance from J to the far
    endpoint of its own cylinder, which is the quantity the gap estimate is
    built from.
    """
    profile = dict(range_profile or {})
    if M < 1 or depth < 0:
        raise ValidationError("M must be >= 1 and depth >= 0")
    for pos, A in profile.items():
        if pos < 1 or A < 1:
            raise ValidationError("range_profile needs positions >= 1 and A >= 1")
    total = 1
    for pos in range(1, depth + 1):
        lo, hi = _digit_range(pos, M, profile)
        total *= hi - lo + 1
    if total > budget:
        raise BudgetExceeded(f"{total} fundamental intervals exceed budget {budget}")

    rows = []
    failures = []
    for order in range(depth + 1):
        ranges = [range(lo, hi + 1) for lo, hi in (_digit_range(p, M, profile) for p in range(1, order + 1))]
        nlo, nhi = _digit_range(order + 1, M, profile)
        large = (order + 1) in profile
        intervals = []
        for w in itertools.product(*ranges):
            J = fundamental_interval(w, nlo, nhi)
            if J.length != fundamental_length(w, nlo, nhi):
                failures.append({"order": order, "word": w, "check": "length-formula"})
            # length from the union of next-level cylinders, computed directly
            st = convergent_state(w)
            direct = sum(Fraction(1, (a * st.q_cur + st.q_prev) * ((a + 1) * st.q_cur + st.q_prev))
                         for a in range(nlo, nhi + 1))
            if direct != J.length:
                failures.append({"order": order, "word": w, "check": "length-union"})
            q = st.q_cur
            if large:
                A = profile[order + 1]
                lower, upper = Fraction(1, 32 * A * q * q), Fraction(1, A * q * q)
            else:
                lower, upper = Fraction(1, 6 * q * q), Fraction(1, q * q)
            if not lower <= J.length <= upper:
                failures.append({"order": order, "word": w, "check": "sandwich"})
            # far side of the parent cylinder, i.e. the excluded next digits
            cyl_ends = (Fraction(st.p_cur, st.q_cur), Fraction(st.p_cur + st.p_prev, st.q_cur + st.q_prev))
            own = min(max(J.lo - min(cyl_ends), 0), max(max(cyl_ends) - J.hi, 0)) if order else None
            free = max(J.lo - min(cyl_ends), max(cyl_ends) - J.hi) if order else None
            intervals.append((J, own, free))
        intervals.sort(key=lambda item: item[0].lo)
        worst_gap = None
        worst_free = None
        for i, (J, _, free) in enumerate(intervals):
            gaps = []
            if i > 0:
                gaps.append(J.lo - intervals[i - 1][0].hi)
            if i + 1 < len(intervals):
                gaps.append(intervals[i + 1][0].lo - J.hi)
            if gaps:
                ratio = min(gaps) / J.length
                if worst_gap is None or ratio < worst_gap[0]:
                    worst_gap = (ratio, J.base)
                if ratio * M < 1:
                    failures.append({"order": order, "word": J.base, "check": "gap",
                                     "gap_over_length": str(ratio)})
            if free is not None:
                fr = free / J.length
                if worst_free is None or fr < worst_free:
                    worst_free = fr
        rows.append({
            "order": order, "intervals": len(intervals), "next_range": f"[{nlo},{nhi}]",
            "bound": "large" if large else "ordinary",
            "min_gap_over_length": float(worst_gap[0]) if worst_gap else None,
            "min_gap_word": list(worst_gap[1]) if worst_gap else None,
            "min_far_side_over_length": float(worst_free) if worst_free is not None else None,
            "required": 1.0 / M,
        })
    checks = {c: sum(1 for f in failures if f["check"] == c) for c in ("length-formula", "length-union", "sandwich", "gap")}
    return ExperimentReport(
        "cantor_geometry", {}, {"M": M, "depth": depth, "range_profile": {str(k): v for k, v in profile.items()}},
        summary={"failures_by_check": checks, "sandwich_ok": checks["sandwich"] == 0,
                 "lengths_ok": checks["length-formula"] + checks["length-union"] == 0,
                 "gap_ok": checks["gap"] == 0,
                 "counterexamples": [{k: (list(v) if isinstance(v, tuple) else v) for k, v in f.items()}
                                     for f in failures[:10]]},
        passed=not failures, table=rows)


# -- sampler validation ------------------------------------------------------


def first_digit_law(config: SampleConfig, kmax: int = 5, sigmas: float = 3.0) -> ExperimentReport:
    """Empirical P(a_1 = k) against the Lebesgue law 1/k - 1/(k+1)."""
    vals, discarded = _run_samples(config, 1, _first_digit)
    N = len(vals)
    c = Counter(vals)
    rows, ok = [], N > 0
    for k in range(1, kmax + 1):
        p = 1.0 / k - 1.0 / (k + 1)
        se = math.sqrt(p * (1 - p) / N) if N else float("nan")
        emp = c.get(k, 0) / N if N else float("nan")
        z = (emp - p) / se if N else float("nan")
        ok = ok and abs(z) <= sigmas
        rows.append({"k": k, "empirical": emp, "expected": p, "z": z})
    return ExperimentReport("first_digit_law", config.as_dict(), {"kmax": kmax}, [],
                            {"kept": N}, None, sigmas, ok, discarded, table=rows)


def _first_digit(digits):
    return digits[0]


lemma51_ratio = divisor_sum_ratio  # interface name
