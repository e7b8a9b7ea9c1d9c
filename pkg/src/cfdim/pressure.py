"""Cylinder partition sums, the pressure defect, and the root s_B.

For a finite alphabet ``A`` and word length ``m`` the basic quantity is

    Z_m(s) = sum over (a_1..a_m) in A^m of q_m(a_1..a_m) ** (-2 s)

computed either by brute-force enumeration or by iterating the transfer
operator ``(L_s g)(x) = sum_a (a + x)**(-2s) g(1 / (a + x))`` on a Chebyshev
collocation grid, since ``(L_s^m 1)(0) = Z_m(s)``.

``s_B(M, n)`` is the zero of ``Z_{f(n)}(s) * B**(-(2s-1) d n) - 1``; the
estimate of ``s_B`` extrapolates a tableau of these roots in ``n`` and then in
``M``.
"""

from __future__ import annotations

import logging
import math
import sys
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from .cf import LinearIndex
from .parallel import ordered_map
from .errors import (BracketError, BudgetExceeded, ConvergenceError, TableauError,
                     ValidationError)

log = logging.getLogger(__name__)

ENUM_BUDGET = 10**7
# above this many words the "auto" method switches to the transfer operator
AUTO_ENUM_LIMIT = 20_000
BRACKET = (0.0, 1.5)
_EPS = sys.float_info.epsilon


@dataclass(frozen=True)
class Alphabet:
    """A finite set of admissible partial quotients."""

    digits: tuple

    def __post_init__(self):
        if not self.digits:
            raise ValidationError("alphabet must be non-empty")
        if any(isinstance(a, bool) or not isinstance(a, int) or a < 1 for a in self.digits):
            raise ValidationError(f"alphabet members must be integers >= 1: {self.digits!r}")
        if list(self.digits) != sorted(set(self.digits)):
            object.__setattr__(self, "digits", tuple(sorted(set(self.digits))))

    @classmethod
    def full(cls, M: int) -> "Alphabet":
        if M < 1:
            raise ValidationError(f"M must be >= 1, got {M}")
        return cls(tuple(range(1, M + 1)))

    def __len__(self):
        return len(self.digits)

    def __iter__(self):
        return iter(self.digits)

    def label(self) -> str:
        d = self.digits
        if d == tuple(range(1, len(d) + 1)):
            return f"1..{len(d)}"
        return "{" + ",".join(map(str, d)) + "}"


def as_alphabet(a) -> Alphabet:
    if isinstance(a, Alphabet):
        return a
    if isinstance(a, int) and not isinstance(a, bool):
        return Alphabet.full(a)
    return Alphabet(tuple(a))


@dataclass(frozen=True)
class SumResult:
    value: float
    log_value: float
    method: str
    certified_rel_error: float
    degree: Optional[int] = None


# -- enumeration -------------------------------------------------------------


@lru_cache(maxsize=64)
def _log_continuants(digits: tuple, m: int) -> np.ndarray:
    """log q_m for every word of A^m, in lexicographic order."""
    amax = max(digits)
    if (amax + 1) ** m < 2**62:
        dig = np.array(digits, dtype=np.int64)
        q_prev = np.zeros(1, dtype=np.int64)
        q = np.ones(1, dtype=np.int64)
        for _ in range(m):
            q_new = (q[:, None] * dig[None, :] + q_prev[:, None]).ravel()
            q_prev = np.repeat(q, len(dig))
            q = q_new
        return np.log(q.astype(np.float64))
    states = [(0, 1)]
    for _ in range(m):
        states = [(q, a * q + qp) for qp, q in states for a in digits]
    return np.array([math.log(q) for _, q in states])


def cylinder_sum_enum(alphabet, m: int, s: float, budget: int = ENUM_BUDGET) -> SumResult:
    """Sum of q_m**(-2s) over every word in A^m, by enumeration.

    Continuants are exact integers; each term is ``exp(-2 s log q)`` and the
    terms are added with ``math.fsum`` (correctly rounded, hence independent
    of traversal order).
    """
    alphabet = as_alphabet(alphabet)
    if m < 0:
        raise ValidationError("word length must be >= 0")
    count = len(alphabet) ** m
    if count > budget:
        raise BudgetExceeded(f"{count} words exceed enumeration budget {budget}")
    logq = _log_continuants(alphabet.digits, m)
    terms = np.exp(-2.0 * s * logq)
    value = math.fsum(terms.tolist())
    max_arg = 2.0 * abs(s) * float(logq.max()) if len(logq) else 0.0
    # libm log/exp are within 1 ulp; the argument error is amplified by exp
    rel = (2.0 * max_arg + 3.0) * _EPS
    return SumResult(value, math.log(value), "enumeration", rel)


# -- transfer operator -------------------------------------------------------


def chebyshev_nodes(degree: int) -> tuple[np.ndarray, np.ndarray]:
    """Chebyshev-Lobatto nodes on [0, 1] (node 0 is x = 0) and barycentric weights."""
    k = np.arange(degree + 1)
    x = (1.0 - np.cos(np.pi * k / degree)) / 2.0
    w = np.where(k % 2 == 0, 1.0, -1.0)
    w[0] *= 0.5
    w[-1] *= 0.5
    return x, w


def _interp_matrix(x: np.ndarray, w: np.ndarray, y: np.ndarray) -> np.ndarray:
    diff = y[:, None] - x[None, :]
    hit = diff == 0.0
    diff[hit] = 1.0
    c = w[None, :] / diff
    out = c / c.sum(axis=1, keepdims=True)
    rows = hit.any(axis=1)
    if rows.any():
        out[rows] = hit[rows].astype(float)
    return out


def transfer_matrix(alphabet, s: float, degree: int) -> tuple[np.ndarray, np.ndarray]:
    """Collocation matrix of L_s on ``degree + 1`` Chebyshev-Lobatto nodes."""
    alphabet = as_alphabet(alphabet)
    x, w = chebyshev_nodes(degree)
    L = np.zeros((degree + 1, degree + 1))
    for a in alphabet:
        y = 1.0 / (a + x)
        L += np.power(a + x, -2.0 * s)[:, None] * _interp_matrix(x, w, y)
    return L, x


def _operator_log_sum(alphabet, m: int, s: float, degree: int) -> float:
    L, _ = transfer_matrix(alphabet, s, degree)
    v = np.ones(degree + 1)
    log_scale = 0.0
    for _ in range(m):
        v = L @ v
        peak = np.max(np.abs(v))
        v /= peak
        log_scale += math.log(peak)
    if v[0] <= 0:
        raise ConvergenceError("operator iterate lost positivity at x = 0")
    return log_scale + math.log(v[0])


def cylinder_sum_operator(alphabet, m: int, s: float, degree: int = 16,
                          tol: float = 1e-12, max_degree: int = 512) -> SumResult:
    """Z_m(s) via m collocation steps of the transfer operator.

    The degree is doubled until two successive values agree to ``tol``
    (relative); the last difference is reported as ``certified_rel_error``.
    """
    alphabet = as_alphabet(alphabet)
    if degree < 8:
        raise ValidationError(f"collocation degree must be >= 8, got {degree}")
    prev = _operator_log_sum(alphabet, m, s, degree)
    while True:
        if 2 * degree > max_degree:
            raise ConvergenceError(
                f"collocation did not converge to {tol:g} by degree {degree}")
        degree *= 2
        cur = _operator_log_sum(alphabet, m, s, degree)
        err = abs(math.expm1(cur - prev))
        if err <= tol:
            return SumResult(math.exp(cur) if cur < 700 else math.inf, cur,
                             "operator-iteration", err, degree)
        prev = cur


def log_pressure(alphabet, s: float, degree: int = 32, tol: float = 1e-11) -> float:
    """log of the leading eigenvalue of L_s restricted to ``alphabet``.

    This is the pressure P_A(-s log|T'|) and the n -> infinity limit of
    ``log Z_m(s) / m``; used as an independent check on the n-extrapolation.
    """
    prev = None
    while degree <= 512:
        L, _ = transfer_matrix(alphabet, s, degree)
        lam = float(np.max(np.linalg.eigvals(L).real))
        cur = math.log(lam)
        if prev is not None and abs(cur - prev) <= tol * max(1.0, abs(cur)):
            return cur
        prev = cur
        degree *= 2
    raise ConvergenceError("leading eigenvalue did not settle")


def log_partition(alphabet, m: int, s: float, method: str = "auto") -> SumResult:
    alphabet = as_alphabet(alphabet)
    if method == "auto":
        method = "enum" if len(alphabet) ** m <= AUTO_ENUM_LIMIT else "operator"
    if method == "enum":
        return cylinder_sum_enum(alphabet, m, s)
    if method == "operator":
        return cylinder_sum_operator(alphabet, m, s)
    raise ValidationError(f"unknown summation method {method!r}")


# -- defect and root ---------------------------------------------------------


def ef_penalty(s: float) -> float:
    """Exponent weight (2s - 1) of log B in the E_f potential."""
    return 2.0 * s - 1.0


@dataclass(frozen=True)
class PressureQuery:
    alphabet: Alphabet
    n: int
    B: float
    index: LinearIndex
    s: float
    # weight of d*n*log B; None means (2s - 1)
    penalty: Optional[Callable[[float], float]] = None

    def __post_init__(self):
        object.__setattr__(self, "alphabet", as_alphabet(self.alphabet))
        if self.n < 1:
            raise ValidationError(f"n must be >= 1, got {self.n}")
        if not self.B >= 1.0:
            raise ValidationError(f"B must be >= 1, got {self.B}")


def log_defect(query: PressureQuery, method: str = "auto") -> float:
    """log of the normalized sum; same sign as :func:`defect`."""
    pen = query.penalty or ef_penalty
    m = query.index(query.n)
    r = log_partition(query.alphabet, m, query.s, method)
    return r.log_value - pen(query.s) * query.index.d * query.n * math.log(query.B)


def defect(query: PressureQuery, method: str = "auto") -> float:
    """``Z_{f(n)}(s) * B**(-(2s-1) d n) - 1``; strictly decreasing in s when B > 1."""
    return math.expm1(log_defect(query, method))


def bisect_root(fn: Callable[[float], float], lo: float, hi: float, tol: float) -> float:
    """Root of a decreasing function by plain bisection."""
    f_lo, f_hi = fn(lo), fn(hi)
    if f_lo == 0 and f_hi < 0:
        return lo
    if not (f_lo > 0 > f_hi):
        raise BracketError(
            f"no sign change on [{lo}, {hi}]: f(lo)={f_lo:.3g}, f(hi)={f_hi:.3g}")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if fn(mid) > 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def s_B_finite(M, n: int, B: float, index: LinearIndex = LinearIndex(),
               tol: float = 1e-12, method: str = "auto",
               penalty: Optional[Callable[[float], float]] = None) -> float:
    """s_B(A, n): the s where the normalized cylinder sum equals 1.

    ``M`` is an alphabet size (alphabet 1..M) or an explicit alphabet.
    """
    if not B > 1.0:
        raise ValidationError(f"root finding needs B > 1, got {B}")
    if not tol > 0:
        raise ValidationError("tol must be positive")
    alphabet = as_alphabet(M)

    def f(s):
        return log_defect(PressureQuery(alphabet, n, B, index, s, penalty), method)

    return bisect_root(f, BRACKET[0], BRACKET[1], tol)


def s_B_limit(M, B: float, penalty: Optional[Callable[[float], float]] = None,
              tol: float = 1e-12) -> float:
    """n -> infinity limit of s_B(M, n): zero of ``log lambda(s) - penalty(s) log B``."""
    pen = penalty or ef_penalty
    alphabet = as_alphabet(M)
    lb = math.log(B)
    return bisect_root(lambda s: log_pressure(alphabet, s) - pen(s) * lb,
                       BRACKET[0], BRACKET[1], tol)


# -- extrapolation -----------------------------------------------------------


def extrapolate_n(lengths: Sequence[int], values: Sequence[float]) -> tuple[float, float]:
    """Limit of s as the word length m grows, assuming s(m) = s_inf + c1/m + c2/m^2.

    Uses the last three points (two if only two are given). The band is the
    gap between the three-point and two-point estimates.
    """
    m = np.asarray(lengths, dtype=float)
    v = np.asarray(values, dtype=float)
    if len(m) < 2:
        raise ValidationError("need at least two depths to extrapolate")
    m2, v2 = m[-2:], v[-2:]
    two = (m2[1] * v2[1] - m2[0] * v2[0]) / (m2[1] - m2[0])
    if len(m) == 2:
        return float(two), float(abs(two - v[-1]))
    m3, v3 = m[-3:], v[-3:]
    A = np.stack([np.ones(3), 1.0 / m3, 1.0 / m3**2], axis=1)
    three = float(np.linalg.solve(A, v3)[0])
    return three, float(abs(three - two))


def _power_fit(Ms: np.ndarray, vals: np.ndarray, iters: int = 200) -> tuple[float, float, float]:
    """Fit s(M) = s_inf - c M**(-gamma) with gamma = 2 s_inf - 1 self-consistently.

    Returns (s_inf, gamma, rms residual).
    """
    s_inf = float(vals[-1])
    gamma = max(2.0 * s_inf - 1.0, 0.05)
    for _ in range(iters):
        X = np.stack([np.ones_like(Ms), -Ms ** (-gamma)], axis=1)
        coef, *_ = np.linalg.lstsq(X, vals, rcond=None)
        new = float(coef[0])
        gamma = max(2.0 * new - 1.0, 0.05)
        if abs(new - s_inf) < 1e-13:
            s_inf = new
            break
        s_inf = new
    X = np.stack([np.ones_like(Ms), -Ms ** (-gamma)], axis=1)
    coef, *_ = np.linalg.lstsq(X, vals, rcond=None)
    resid = vals - X @ coef
    return float(coef[0]), gamma, float(np.sqrt(np.mean(resid**2)))


def extrapolate_M(Ms: Sequence[int], values: Sequence[float]) -> tuple[float, float, float]:
    """Limit of s_B(M) as M grows. Returns (estimate, band, gamma).

    The tail of the alphabet shifts the root by roughly M**(1 - 2 s), so the
    fit uses that exponent with s the extrapolated value. Fits keep drifting
    as M grows; the band takes the shift-by-one change of the fit and sums it
    over all larger M assuming the change decays like M**(-3/2).
    """
    Ms = np.asarray(Ms, dtype=float)
    vals = np.asarray(values, dtype=float)
    keep = Ms >= 2
    Ms, vals = Ms[keep], vals[keep]
    if len(Ms) == 0:
        raise ValidationError("M extrapolation needs alphabets with M >= 2")
    if len(Ms) == 1:
        return float(vals[0]), 0.0, float("nan")
    k = min(3, len(Ms))
    est, gamma, resid = _power_fit(Ms[-k:], vals[-k:])
    if len(Ms) >= 4:
        prev, _, _ = _power_fit(Ms[-k - 1:-1], vals[-k - 1:-1])
    else:
        prev = float(vals[-1])
    band = float(max(2.0 * Ms[-1] * abs(est - prev), resid))
    return est, band, gamma


@dataclass
class SBEstimate:
    """Point estimate of s_B with the tableau it came from."""

    B: float
    index: LinearIndex
    value: float
    uncertainty: float
    tableau: dict  # (M, n) -> s_B(M, n)
    per_M: list  # (M, n-extrapolated value, band)
    gamma: float
    limit_per_M: list = field(default_factory=list)  # (M, eigenvalue limit)
    warnings: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "B": self.B, "d": self.index.d, "t": self.index.t,
            "value": self.value, "uncertainty": self.uncertainty,
            "gamma": self.gamma,
            "tableau": [{"M": M, "n": n, "s": s} for (M, n), s in sorted(self.tableau.items())],
            "per_M": [{"M": M, "s_inf_n": v, "band": b} for M, v, b in self.per_M],
            "limit_per_M": [{"M": M, "s_limit": v} for M, v in self.limit_per_M],
            "warnings": list(self.warnings),
        }


def _cell(args):
    M, n, B, index, tol, penalty = args
    return s_B_finite(M, n, B, index, tol, penalty=penalty)


def s_B_tableau(B: float, index: LinearIndex, M_max: int, n_max: int, tol: float = 1e-12,
                penalty: Optional[Callable[[float], float]] = None,
                workers: int = 1) -> dict:
    cells = [(M, n) for M in range(1, M_max + 1) for n in range(1, n_max + 1)]
    values = ordered_map(_cell, [(M, n, B, index, tol, penalty) for M, n in cells], workers)
    return dict(zip(cells, values))


def check_tableau(tableau: dict, tol: float) -> None:
    """Alphabet inclusion forces s_B(M, n) to be nondecreasing in M."""
    Ms = sorted({M for M, _ in tableau})
    ns = sorted({n for _, n in tableau})
    for n in ns:
        for M0, M1 in zip(Ms, Ms[1:]):
            if tableau[(M1, n)] < tableau[(M0, n)] - 4 * tol:
                raise TableauError(
                    f"s_B(M={M1}, n={n}) = {tableau[(M1, n)]:.12f} < "
                    f"s_B(M={M0}, n={n}) = {tableau[(M0, n)]:.12f}", tableau)


def s_B_estimate(B: float, index: LinearIndex = LinearIndex(), M_max: int = 6, n_max: int = 5,
                 tol: float = 1e-12, penalty: Optional[Callable[[float], float]] = None,
                 workers: int = 1, cross_check: bool = True) -> SBEstimate:
    """Estimate s_B from the s_B(M, n) tableau.

    Each row M is extrapolated in the word length f(n) and the row limits are
    then extrapolated in M. The reported uncertainty adds both bands; it is a
    heuristic, not a certified bound.
    """
    if M_max < 2 or n_max < 2:
        raise ValidationError("s_B_estimate needs M_max >= 2 and n_max >= 2")
    if not B > 1.0:
        raise ValidationError(f"s_B_estimate needs B > 1, got {B}")
    tab = s_B_tableau(B, index, M_max, n_max, tol, penalty, workers)
    check_tableau(tab, tol)
    ns = list(range(1, n_max + 1))
    lengths = [index(n) for n in ns]
    per_M = []
    for M in range(1, M_max + 1):
        est, band = extrapolate_n(lengths, [tab[(M, n)] for n in ns])
        per_M.append((M, est, band))
    warnings = []
    ext = [v for _, v, _ in per_M]
    if any(b < a - 1e-9 for a, b in zip(ext[1:], ext[2:])):
        warnings.append("n-extrapolated row limits are not nondecreasing in M")
    value, band_M, gamma = extrapolate_M([M for M, _, _ in per_M], ext)
    if gamma <= 0.05 or not 0.0 < value <= 1.0:
        warnings.append(f"M-extrapolation left the model's range (estimate {value:.4g}, gamma {gamma:.3g}); "
                        f"the tableau is too small for this B")
    band_n = max(b for M, _, b in per_M if M >= 2)
    limits = []
    if cross_check:
        limits = [(M, s_B_limit(M, B, penalty)) for M in range(1, M_max + 1)]
    return SBEstimate(B, index, value, band_M + band_n, tab, per_M, gamma, limits, warnings)
