"""Equalized optimal covers for the Cantor-subset construction.

For a depth ``n`` the candidate covers of the level set are scored by

    min_k ( alpha_{k-1}^{1-s} * alpha_k^{-s} )^{1/k},   k = 1..n,

with ``alpha_0 = 1`` and ``alpha_n = B^{d n}``. The best choice of
``alpha_1..alpha_{n-1}`` makes every term equal. All arithmetic is in log
space because ``A_k(n)**n`` overflows floats for modest n.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import partial

import numpy as np

from .errors import BudgetExceeded, DomainError, ValidationError

S_MIN = 0.5 + 1e-6
S_MAX = 1.0 - 1e-9


@dataclass(frozen=True)
class IterationTable:
    s: float
    values: tuple

    def __getitem__(self, k):
        """1-based access: ``table[1]`` is the first iterate."""
        return self.values[k - 1]

    def __len__(self):
        return len(self.values)


def _check_open_unit(s):
    if not 0.0 < s < 1.0:
        raise DomainError(f"s must lie in (0, 1), got {s}")


def h_iter(s: float, L: int) -> IterationTable:
    """h_1 = s, h_l = s h_{l-1} / (1 - s + l h_{l-1})."""
    _check_open_unit(s)
    if L < 1:
        raise ValidationError("L must be >= 1")
    vals = [s]
    for ell in range(2, L + 1):
        h = vals[-1]
        vals.append(s * h / (1.0 - s + ell * h))
    return IterationTable(s, tuple(vals))


def f_iter(s: float, m: int) -> IterationTable:
    """f_1 = s, f_{k+1} = s f_k / (1 - s + f_k)."""
    _check_open_unit(s)
    if m < 1:
        raise ValidationError("m must be >= 1")
    vals = [s]
    for _ in range(m - 1):
        f = vals[-1]
        vals.append(s * f / (1.0 - s + f))
    return IterationTable(s, tuple(vals))


def _f_value(s: float, m: int) -> float:
    # Same recursion as f_iter without the (0, 1) guard: the root finder
    # probes s outside (0, 1) while bracketing.
    f = s
    for _ in range(m - 1):
        f = s * f / (1.0 - s + f)
    return f


def f_penalty(m: int):
    """Picklable callable s -> f_m(s), the log B weight of the E_m potential."""
    return partial(_f_value, m=m)


@dataclass(frozen=True)
class CoverProfile:
    n: int
    s: float
    B: float
    d: int
    logA: tuple
    logAlpha: tuple

    @property
    def log_budget(self) -> float:
        return self.d * self.n * math.log(self.B)


def equalized_cover(n: int, s: float, B: float, d: int = 1) -> CoverProfile:
    """Profile with every cover term equal.

    With r = (1-s)/s, log A_k = c_k log A_1 where c_k = (1 - r**k)/(2 - 1/s),
    and log A_1 is fixed by sum_k log A_k = d n log B.
    """
    if not S_MIN <= s <= S_MAX:
        raise DomainError(f"equalized cover needs s in (1/2, 1), got {s}")
    if not B > 1.0:
        raise ValidationError(f"B must exceed 1, got {B}")
    if n < 1 or d < 1:
        raise ValidationError("n and d must be >= 1")
    r = (1.0 - s) / s
    denom = 2.0 - 1.0 / s
    c = [(1.0 - r**k) / denom for k in range(1, n + 1)]
    logA1 = d * n * math.log(B) / math.fsum(c)
    logA = tuple(ck * logA1 for ck in c)
    logAlpha = tuple(itertools.accumulate(logA))
    return CoverProfile(n, s, B, d, logA, logAlpha)


def log_cover_terms(n: int, s: float, log_alpha, log_budget: float) -> list[float]:
    """Logs of the n bracketed terms for free values log alpha_1..alpha_{n-1}."""
    la = [0.0, *log_alpha, log_budget]
    return [((1.0 - s) * la[k - 1] - s * la[k]) / k for k in range(1, n + 1)]


def cover_terms(profile: CoverProfile) -> list[float]:
    return log_cover_terms(profile.n, profile.s, profile.logAlpha[:-1], profile.log_budget)


def cover_value(profile: CoverProfile) -> float:
    return math.exp(min(cover_terms(profile)))


def supremum_grid_oracle(n: int, s: float, B: float, d: int, grid_points: int,
                         budget: int = 2 * 10**7) -> tuple[float, float]:
    """Brute-force sup over a uniform log-alpha grid of the min of the cover terms.

    Returns ``(value, slack)``. Every grid point is feasible, so the grid max
    never exceeds the true supremum; ``slack`` bounds how far below it can sit
    (half a grid step times the Lipschitz constant of the log objective, which
    is 1 in the sup norm since each term has coefficients (1-s)/k and s/k).
    """
    if not 1 <= n <= 4:
        raise ValidationError(f"grid oracle supports n <= 4, got {n}")
    if grid_points < 2:
        raise ValidationError("grid_points must be >= 2")
    _check_open_unit(s)
    free = n - 1
    if grid_points**free > budget:
        raise BudgetExceeded(f"{grid_points}^{free} grid points exceed budget {budget}")
    log_budget = d * n * math.log(B)
    if free == 0:
        return math.exp(min(log_cover_terms(n, s, (), log_budget))), 0.0
    axis = np.linspace(0.0, log_budget, grid_points)
    mesh = np.meshgrid(*([axis] * free), indexing="ij", sparse=True)
    la = [np.zeros(1), *mesh, np.full(1, log_budget)]
    best = None
    for k in range(1, n + 1):
        term = ((1.0 - s) * la[k - 1] - s * la[k]) / k
        best = term if best is None else np.minimum(best, term)
    top = float(np.max(best))
    step = log_budget / (grid_points - 1)
    value = math.exp(top)
    slack = value * math.expm1(0.5 * step)
    return value, slack


def two_term_sup(s: float, log_alpha2: float, grid_points: int = 20001) -> float:
    """sup over alpha_1 in [1, alpha_2] of min{alpha_1^-s, (alpha_1^(1-s) alpha_2^-s)^(1/2)}, in logs."""
    x = np.linspace(0.0, log_alpha2, grid_points)
    return float(np.max(np.minimum(-s * x, ((1.0 - s) * x - s * log_alpha2) / 2.0)))
