"""Growth exponents of a rate function and the resulting dimension formulas.

Given psi and f(n) = d n + t,

    log B = liminf log psi(n) / (d n),     log b = liminf log log psi(n) / (d n^2).

The dimension of E_f(psi) is 1 when B = 1, the root s_B of the pressure
equation when 1 < B < inf, and 1/(1+b) when B = inf (0 when b = inf).
"""

from __future__ import annotations

import csv
import math
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .cf import LinearIndex
from .cover import f_penalty
from .errors import ValidationError
from .pressure import SBEstimate, s_B_estimate

INF = math.inf

B_EQUALS_1 = "B-equals-1"
B_FINITE = "B-finite"
B_INFINITE = "B-infinite-b-finite"
B_INFINITE_B_INFINITE = "b-infinite"
CASES = (B_EQUALS_1, B_FINITE, B_INFINITE, B_INFINITE_B_INFINITE)


# -- rate functions ----------------------------------------------------------


@dataclass(frozen=True)
class Poly:
    """psi(n) = c * n**k."""

    c: float
    k: float

    def __post_init__(self):
        if self.c < 1 or self.k < 0:
            raise ValidationError("poly(c,k) needs c >= 1 and k >= 0 so that psi >= 1")

    def log_psi(self, n: int, d: int) -> float:
        return math.log(self.c) + self.k * math.log(n)

    def __str__(self):
        return f"poly({self.c:g},{self.k:g})"


@dataclass(frozen=True)
class Exponential:
    """psi(n) = beta**(d n)."""

    beta: float

    def __post_init__(self):
        if self.beta < 1:
            raise ValidationError("exp(beta) needs beta >= 1")

    def log_psi(self, n: int, d: int) -> float:
        return d * n * math.log(self.beta)

    def __str__(self):
        return f"exp({self.beta:g})"


@dataclass(frozen=True)
class DoubleExponential:
    """psi(n) = e ** (beta ** (d n^2))."""

    beta: float

    def __post_init__(self):
        if self.beta <= 0:
            raise ValidationError("dexp(beta) needs beta > 0")

    def log_psi(self, n: int, d: int) -> float:
        try:
            return math.exp(d * n * n * math.log(self.beta))
        except OverflowError:
            return INF

    def loglog_psi(self, n: int, d: int) -> float:
        return d * n * n * math.log(self.beta)

    def __str__(self):
        return f"dexp({self.beta:g})"


@dataclass(frozen=True)
class Table:
    """Sampled psi(1..N), stored as natural logs."""

    log_values: tuple  # index i holds log psi(i + 1)
    source: str = ""

    def log_psi(self, n: int, d: int) -> float:
        if not 1 <= n <= len(self.log_values):
            raise ValidationError(f"table has no value for n = {n}")
        return self.log_values[n - 1]

    def __str__(self):
        return f"table:{self.source}"


def read_table(path) -> Table:
    """CSV with rows ``n,psi`` (or a header naming a ``log_psi`` column).

    psi values are parsed with mpmath so entries such as ``1e5000`` work.
    """
    import mpmath

    path = Path(path)
    rows = {}
    use_log = False
    with path.open(newline="") as fh:
        for rec in csv.reader(fh):
            if not rec or rec[0].strip().startswith("#"):
                continue
            head = [c.strip().lower() for c in rec]
            if head[0] == "n":
                use_log = len(head) > 1 and head[1] == "log_psi"
                continue
            n = int(head[0])
            if use_log:
                lv = float(head[1])
            else:
                v = mpmath.mpf(rec[1].strip())
                if v < 1:
                    raise ValidationError(f"psi({n}) = {rec[1].strip()} < 1")
                lv = float(mpmath.log(v))
            rows[n] = lv
    if not rows:
        raise ValidationError(f"no rows in {path}")
    N = max(rows)
    missing = [n for n in range(1, N + 1) if n not in rows]
    if missing:
        raise ValidationError(f"table {path} is missing n = {missing[:5]}")
    return Table(tuple(rows[n] for n in range(1, N + 1)), str(path))


_NUM = r"\s*([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)\s*"


def parse_psi(text: str):
    """Parse ``poly(c,k)``, ``exp(beta)``, ``dexp(beta)`` or ``table:<path>``."""
    text = text.strip()
    if text.startswith("table:"):
        return read_table(text[len("table:"):])
    m = re.fullmatch(rf"poly\({_NUM},{_NUM}\)", text)
    if m:
        return Poly(float(m.group(1)), float(m.group(2)))
    m = re.fullmatch(rf"(d?exp)\({_NUM}\)", text)
    if m:
        beta = float(m.group(2))
        return Exponential(beta) if m.group(1) == "exp" else DoubleExponential(beta)
    raise ValidationError(f"cannot parse psi descriptor {text!r}")


@dataclass(frozen=True)
class GrowthSpec:
    psi: object
    index: LinearIndex = LinearIndex()

    def log_psi(self, n: int) -> float:
        return self.psi.log_psi(n, self.index.d)


# -- exponents ---------------------------------------------------------------


@dataclass
class Exponents:
    B: float
    b: float
    index: LinearIndex = LinearIndex()
    horizon: Optional[int] = None
    exact: bool = False
    trace: list = field(default_factory=list)  # (N', log B estimate, log b estimate)
    skipped: int = 0


def _loglog(spec: GrowthSpec, n: int) -> Optional[float]:
    psi = spec.psi
    if isinstance(psi, DoubleExponential):
        return psi.loglog_psi(n, spec.index.d)
    lp = spec.log_psi(n)
    if lp <= 1.0:  # psi <= e
        return None
    return math.log(lp)


def _window_estimates(spec: GrowthSpec, N: int):
    d = spec.index.d
    qB = {n: spec.log_psi(n) / (d * n) for n in range(1, N + 1)}
    qb, skipped = {}, 0
    for n in range(1, N + 1):
        v = _loglog(spec, n)
        if v is None:
            skipped += 1
        else:
            qb[n] = v / (d * n * n)
    trace = []
    for Np in range(10, N + 1):
        lo = (Np + 1) // 2
        b_vals = [qb[n] for n in range(lo, Np + 1) if n in qb]
        trace.append((Np, min(qB[n] for n in range(lo, Np + 1)),
                      min(b_vals) if b_vals else None))
    return trace, skipped


def exponents_from_psi(spec: GrowthSpec, N: int = 200,
                       b_threshold: float = 1.01) -> Exponents:
    """Growth exponents (B, b) of ``spec``.

    Closed forms get their exact limits. Tables get finite-horizon liminf
    estimates (min of the quotient over n in [N/2, N]); a table is treated as
    B = inf only when the b-estimate exceeds ``b_threshold``.
    """
    if N < 10:
        raise ValidationError("horizon N must be >= 10")
    psi = spec.psi
    if isinstance(psi, Table) and N > len(psi.log_values):
        raise ValidationError(f"horizon {N} exceeds table length {len(psi.log_values)}")
    trace, skipped = _window_estimates(spec, N)
    if isinstance(psi, Poly):
        return Exponents(1.0, 1.0, spec.index, N, True, trace, skipped)
    if isinstance(psi, Exponential):
        return Exponents(float(psi.beta), 1.0, spec.index, N, True, trace, skipped)
    if isinstance(psi, DoubleExponential):
        if psi.beta > 1:
            return Exponents(INF, float(psi.beta), spec.index, N, True, trace, skipped)
        return Exponents(1.0, 1.0, spec.index, N, True, trace, skipped)
    _, logB, logb = trace[-1]
    b = math.exp(logb) if logb is not None else 1.0
    if b > b_threshold:
        return Exponents(INF, b, spec.index, N, False, trace, skipped)
    return Exponents(math.exp(max(logB, 0.0)), 1.0, spec.index, N, False, trace, skipped)


# -- dimensions --------------------------------------------------------------


@dataclass
class DimensionResult:
    case: str
    value: float
    diagnostics: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"case": self.case, "value": self.value, "diagnostics": self.diagnostics}


class PressureSolver:
    """Memoizing wrapper around :func:`s_B_estimate` with fixed tableau settings."""

    def __init__(self, M_max: int = 6, n_max: int = 5, tol: float = 1e-12,
                 workers: int = 1, cross_check: bool = False):
        self.M_max = M_max
        self.n_max = n_max
        self.tol = tol
        self.workers = workers
        self.cross_check = cross_check
        self._cache = {}

    def settings(self) -> dict:
        return {"M_max": self.M_max, "n_max": self.n_max, "tol": self.tol}

    def estimate(self, B: float, index: LinearIndex = LinearIndex(), m: Optional[int] = None) -> SBEstimate:
        """s_B for E_f (``m is None``) or the E_m root with weight f_m(s)."""
        key = (float(B), index.d, index.t, m)
        if key not in self._cache:
            penalty = None if m is None else f_penalty(m)
            self._cache[key] = s_B_estimate(B, index, self.M_max, self.n_max, self.tol,
                                            penalty=penalty, workers=self.workers,
                                            cross_check=self.cross_check)
        return self._cache[key]


def _finite_case(est: SBEstimate, lo: float, tag: str) -> DimensionResult:
    raw = est.value
    value = min(max(raw, lo), 1.0)
    diag = {"formula": tag, "raw_estimate": raw, "uncertainty": est.uncertainty,
            "clipped": value != raw, "warnings": list(est.warnings), "estimate": est.as_dict()}
    return DimensionResult(B_FINITE, value, diag)


def _infinite_case(b: float) -> DimensionResult:
    if math.isinf(b):
        return DimensionResult(B_INFINITE_B_INFINITE, 0.0, {"formula": "limit 1/(1+b) as b -> inf"})
    return DimensionResult(B_INFINITE, 1.0 / (1.0 + b), {"formula": "1/(1+b)", "b": b})


def dim_Ef(exponents: Exponents, solver: Optional[PressureSolver] = None) -> DimensionResult:
    """Hausdorff dimension of E_f(psi) from its growth exponents."""
    B, b = exponents.B, exponents.b
    if not B >= 1 or not b >= 1:
        raise ValidationError(f"exponents must satisfy B >= 1, b >= 1 (got B={B}, b={b})")
    if B == 1:
        return DimensionResult(B_EQUALS_1, 1.0, {"formula": "closed form, B = 1"})
    if math.isinf(B):
        return _infinite_case(b)
    solver = solver or PressureSolver()
    return _finite_case(solver.estimate(B, exponents.index), 0.5,
                        "pressure root with potential -s log|T'| - (2s-1) log B")


def dim_Em(B: float, m: int, solver: Optional[PressureSolver] = None) -> DimensionResult:
    """Dimension of E_m(psi) for 1 < B < inf: pressure root with weight f_m(s)."""
    if m < 1:
        raise ValidationError("m must be >= 1")
    if not 1 < B < INF:
        raise ValidationError(f"dim_Em needs 1 < B < inf, got {B}")
    solver = solver or PressureSolver()
    res = _finite_case(solver.estimate(B, LinearIndex(1, 0), m=m), 0.5,
                       f"pressure root with potential -s log|T'| - f_{m}(s) log B")
    res.diagnostics["m"] = m
    return res


def dim_E1(B: float, b: float = 1.0, solver: Optional[PressureSolver] = None) -> DimensionResult:
    """Dimension of E_1(psi) (single partial quotient a_n >= psi(n))."""
    if not B >= 1:
        raise ValidationError(f"B must be >= 1, got {B}")
    if B == 1:
        return DimensionResult(B_EQUALS_1, 1.0, {"formula": "closed form, B = 1"})
    if math.isinf(B):
        return _infinite_case(b)
    return dim_Em(B, 1, solver)
