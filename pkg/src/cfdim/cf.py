"""Exact continued-fraction arithmetic.

Everything here works on Python integers and :class:`fractions.Fraction`;
no floating point enters. Digits (partial quotients) are produced by the
Gauss map ``T(x) = 1/x - floor(1/x)`` and convergents follow the usual
recurrence ``q_k = a_k q_{k-1} + q_{k-2}`` seeded with ``p_{-1}=1, q_{-1}=0,
p_0=0, q_0=1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from .errors import PrecisionExhausted, ValidationError

Word = tuple  # tuple[int, ...] of partial quotients, every entry >= 1


def as_word(digits: Iterable[int]) -> Word:
    """Validate ``digits`` and return them as a tuple."""
    word = tuple(digits)
    for a in word:
        if isinstance(a, bool) or not isinstance(a, int) or a < 1:
            raise ValidationError(f"partial quotients must be integers >= 1, got {a!r}")
    return word


class ConvergentState(NamedTuple):
    p_prev: int
    p_cur: int
    q_prev: int
    q_cur: int

    @property
    def value(self) -> Fraction:
        return Fraction(self.p_cur, self.q_cur)

    def determinant(self) -> int:
        """``p_cur*q_prev - p_prev*q_cur``; equals ``(-1)**(n+1)`` after n digits."""
        return self.p_cur * self.q_prev - self.p_prev * self.q_cur

    def push(self, a: int) -> "ConvergentState":
        return ConvergentState(self.p_cur, a * self.p_cur + self.p_prev,
                               self.q_cur, a * self.q_cur + self.q_prev)


INITIAL_STATE = ConvergentState(1, 0, 0, 1)


def convergents(w: Sequence[int]) -> list[ConvergentState]:
    """States after 0, 1, ..., len(w) digits (index k holds p_{k-1}, p_k, q_{k-1}, q_k)."""
    w = as_word(w)
    states = [INITIAL_STATE]
    for a in w:
        states.append(states[-1].push(a))
    return states


def convergent_state(w: Sequence[int]) -> ConvergentState:
    state = INITIAL_STATE
    for a in as_word(w):
        state = state.push(a)
    return state


def continuant(w: Sequence[int]) -> int:
    """q_n(a_1, ..., a_n); the empty word gives 1."""
    q_prev, q = 0, 1
    for a in w:
        q_prev, q = q, a * q + q_prev
    return q


@dataclass(frozen=True)
class CylinderInterval:
    """The set of x in [0, 1) whose expansion starts with ``word``.

    Even length: ``[lo, hi)``; odd length: ``(lo, hi]``.
    """

    word: Word
    lo: Fraction
    hi: Fraction

    @property
    def parity(self) -> str:
        return "even" if len(self.word) % 2 == 0 else "odd"

    @property
    def closed_lo(self) -> bool:
        return len(self.word) % 2 == 0

    @property
    def closed_hi(self) -> bool:
        return len(self.word) % 2 == 1

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    def __contains__(self, x) -> bool:
        x = Fraction(x)
        above = x >= self.lo if self.closed_lo else x > self.lo
        below = x <= self.hi if self.closed_hi else x < self.hi
        return above and below

    def interior_point(self) -> Fraction:
        return (self.lo + self.hi) / 2


def cylinder(w: Sequence[int]) -> CylinderInterval:
    w = as_word(w)
    if not w:
        raise ValidationError("cylinder needs a word of length >= 1")
    st = convergent_state(w)
    a = Fraction(st.p_cur, st.q_cur)
    b = Fraction(st.p_cur + st.p_prev, st.q_cur + st.q_prev)
    lo, hi = (a, b) if len(w) % 2 == 0 else (b, a)
    assert lo < hi
    return CylinderInterval(w, lo, hi)


@dataclass(frozen=True)
class FundamentalInterval:
    """Closed union of the cylinders ``base + (a,)`` for ``next_lo <= a <= next_hi``."""

    base: Word
    next_lo: int
    next_hi: int
    lo: Fraction
    hi: Fraction

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo


def fundamental_interval(w: Sequence[int], lo: int, hi: int) -> FundamentalInterval:
    w = as_word(w)
    if not (isinstance(lo, int) and isinstance(hi, int)) or lo < 1:
        raise ValidationError(f"digit range must be integers >= 1, got [{lo!r}, {hi!r}]")
    if hi < lo:
        raise ValidationError(f"empty digit range [{lo}, {hi}]")
    st = convergent_state(w)
    # the two outer endpoints of the union: a = lo side and a = hi + 1 side
    e1 = Fraction(lo * st.p_cur + st.p_prev, lo * st.q_cur + st.q_prev)
    e2 = Fraction((hi + 1) * st.p_cur + st.p_prev, (hi + 1) * st.q_cur + st.q_prev)
    left, right = min(e1, e2), max(e1, e2)
    return FundamentalInterval(w, lo, hi, left, right)


def fundamental_length(w: Sequence[int], lo: int, hi: int) -> Fraction:
    """Closed-form length ``(hi-lo+1) / (((hi+1)q_n + q_{n-1}) (lo q_n + q_{n-1}))``."""
    st = convergent_state(w)
    q, qp = st.q_cur, st.q_prev
    return Fraction(hi - lo + 1, ((hi + 1) * q + qp) * (lo * q + qp))


@dataclass(frozen=True)
class LinearIndex:
    """The gap function ``f(n) = d*n + t``."""

    d: int = 1
    t: int = 0

    def __post_init__(self):
        if isinstance(self.d, bool) or not isinstance(self.d, int) or self.d < 1:
            raise ValidationError(f"d must be an integer >= 1, got {self.d!r}")
        if isinstance(self.t, bool) or not isinstance(self.t, int) or self.t < 0:
            raise ValidationError(f"t must be an integer >= 0, got {self.t!r}")

    def __call__(self, n: int) -> int:
        return self.d * n + self.t


# -- expansion ---------------------------------------------------------------


class Enclosure(NamedTuple):
    """A closed rational interval known to contain some real x."""

    lo: Fraction
    hi: Fraction


def gauss_digits(lo_num: int, lo_den: int, hi_num: int, hi_den: int, n: int) -> list[int]:
    """Certified digits shared by every point of ``[lo_num/lo_den, hi_num/hi_den]``.

    Integer-only Gauss map on both endpoints. Stops early (returning fewer than
    ``n`` digits) only when the interval is a single rational whose expansion
    has terminated. Raises :class:`PrecisionExhausted` as soon as the interval
    straddles a cylinder boundary.
    """
    digits: list[int] = []
    while len(digits) < n:
        if lo_num == 0:
            if hi_num == 0:
                return digits
            raise PrecisionExhausted(
                f"enclosure exhausted after {len(digits)} digits", digits)
        a = hi_den // hi_num
        if lo_den // lo_num != a:
            raise PrecisionExhausted(
                f"enclosure exhausted after {len(digits)} digits", digits)
        # T reverses orientation: new lo comes from old hi
        lo_num, lo_den, hi_num, hi_den = hi_den - a * hi_num, hi_num, lo_den - a * lo_num, lo_num
        digits.append(a)
    return digits


def expand(x, n: int) -> Word:
    """First ``n`` partial quotients of ``x``.

    ``x`` is either an exact rational (``Fraction``, ``int`` pair semantics via
    ``Fraction``, or a float taken at its exact binary value) or an
    :class:`Enclosure` of a real. Terminating rationals return their full
    canonical expansion when it is shorter than ``n``; note that
    ``[a_1, ..., a_k] == [a_1, ..., a_k - 1, 1]`` and the form with final digit
    >= 2 is the one returned.
    """
    if n < 0:
        raise ValidationError("n must be >= 0")
    if isinstance(x, Enclosure):
        lo, hi = Fraction(x.lo), Fraction(x.hi)
    else:
        lo = hi = Fraction(x)
    if not (0 < lo <= hi < 1):
        raise ValidationError(f"expand needs 0 < x < 1, got [{lo}, {hi}]")
    return tuple(gauss_digits(lo.numerator, lo.denominator, hi.numerator, hi.denominator, n))


def golden_enclosure(bits: int = 256) -> Enclosure:
    """Certified enclosure of (sqrt(5) - 1)/2 of width 2**-bits."""
    scale = 1 << bits
    r = math.isqrt(5 * scale * scale)  # floor(sqrt(5) * 2**bits)
    return Enclosure(Fraction(r - scale, 2 * scale), Fraction(r + 1 - scale, 2 * scale))


def pi_minus_3_enclosure(bits: int = 256) -> Enclosure:
    """Certified enclosure of pi - 3 from mpmath's interval arithmetic."""
    from mpmath import iv
    from mpmath.libmp import to_rational

    saved = iv.prec
    iv.prec = bits
    try:
        lo_mpf, hi_mpf = iv.pi._mpi_
    finally:
        iv.prec = saved
    lo = Fraction(*map(int, to_rational(lo_mpf)))
    hi = Fraction(*map(int, to_rational(hi_mpf)))
    return Enclosure(lo - 3, hi - 3)
