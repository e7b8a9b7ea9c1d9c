from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cfdim import cf
from cfdim.errors import PrecisionExhausted, ValidationError

words = st.lists(st.integers(1, 40), min_size=1, max_size=10).map(tuple)


def test_expand_examples():
    assert cf.expand(cf.golden_enclosure(), 6) == (1,) * 6
    assert cf.expand(Fraction(2, 5), 3) == (2, 2)
    assert cf.expand(cf.pi_minus_3_enclosure(), 8) == (7, 15, 1, 292, 1, 1, 1, 2)


def test_expand_precision_exhausted():
    enc = cf.golden_enclosure(16)
    with pytest.raises(PrecisionExhausted) as err:
        cf.expand(enc, 100)
    assert all(a == 1 for a in err.value.digits)
    assert 0 < len(err.value.digits) < 100


@pytest.mark.parametrize("x", [Fraction(0), Fraction(1), Fraction(3, 2), Fraction(-1, 3)])
def test_expand_rejects_outside_unit_interval(x):
    with pytest.raises(ValidationError):
        cf.expand(x, 3)


def test_convergent_examples():
    assert cf.convergents((1, 1, 1, 1, 1))[-1].q_cur == 8
    assert cf.convergents((2, 2))[-1].value == Fraction(2, 5)
    assert [s.q_cur for s in cf.convergents((7, 15, 1))[1:]] == [7, 106, 113]


def test_cylinder_examples():
    c1 = cf.cylinder((1,))
    assert (c1.lo, c1.hi, c1.length) == (Fraction(1, 2), Fraction(1), Fraction(1, 2))
    assert Fraction(1) in c1 and Fraction(1, 2) not in c1
    c2 = cf.cylinder((2,))
    assert (c2.lo, c2.hi) == (Fraction(1, 3), Fraction(1, 2))
    assert c2.length == Fraction(1, 6)
    # orientation agrees with direct preimage: x in (1/3, 1/2] has a_1 = 2
    assert cf.expand(Fraction(1, 2), 1) == (2,)
    assert cf.expand(Fraction(2, 5), 1) == (2,)
    with pytest.raises(ValidationError):
        cf.cylinder(())


def test_fundamental_interval_examples():
    J = cf.fundamental_interval((), 1, 5)
    assert J.length == Fraction(5, 6)
    J = cf.fundamental_interval((1,), 2, 4)
    union = [cf.cylinder((1, a)) for a in (2, 3, 4)]
    assert J.lo == min(c.lo for c in union) and J.hi == max(c.hi for c in union)
    assert J.length == sum(c.length for c in union) == cf.fundamental_length((1,), 2, 4)
    with pytest.raises(ValidationError):
        cf.fundamental_interval((1,), 3, 2)
    with pytest.raises(ValidationError):
        cf.fundamental_interval((1,), 0, 2)


def test_linear_index():
    f = cf.LinearIndex(2, 3)
    assert f(5) == 13
    for bad in [(0, 0), (1, -1), (1.5, 0)]:
        with pytest.raises(ValidationError):
            cf.LinearIndex(*bad)


def test_word_validation():
    with pytest.raises(ValidationError):
        cf.as_word((1, 0, 2))
    assert cf.continuant(()) == 1


@given(words)
def test_determinant_alternates(w):
    states = cf.convergents(w)
    for n, s in enumerate(states[1:], start=1):
        assert s.determinant() == (-1) ** (n + 1)
        assert s.q_cur >= s.q_prev >= 1


@given(words)
def test_cylinder_length_identity(w):
    s = cf.convergent_state(w)
    c = cf.cylinder(w)
    assert c.length * s.q_cur * (s.q_cur + s.q_prev) == 1
    assert c.closed_lo == (len(w) % 2 == 0)


@given(words, st.integers(1, 40))
def test_cylinder_nesting_closure(w, a):
    parent, child = cf.cylinder(w), cf.cylinder(w + (a,))
    assert parent.lo <= child.lo < child.hi <= parent.hi


@given(words)
def test_interior_point_roundtrip(w):
    x = cf.cylinder(w).interior_point()
    assert cf.expand(x, len(w)) == w
    assert x in cf.cylinder(w)


@given(words, st.integers(1, 30), st.integers(0, 30))
def test_fundamental_length_two_ways(w, lo, extra):
    hi = lo + extra
    J = cf.fundamental_interval(w, lo, hi)
    union = sum(cf.cylinder(w + (a,)).length for a in range(lo, hi + 1))
    assert J.length == union == cf.fundamental_length(w, lo, hi)


@given(words, st.integers(1, 10**6))
def test_large_digit_sandwich(w, A):
    q = cf.convergent_state(w).q_cur
    L = cf.fundamental_length(w, A, 2 * A)
    assert Fraction(1, 32 * A * q * q) <= L <= Fraction(1, A * q * q)


@given(words, st.integers(1, 50))
def test_ordinary_sandwich(w, M):
    q = cf.convergent_state(w).q_cur
    L = cf.fundamental_length(w, 1, M)
    assert Fraction(1, 6 * q * q) <= L <= Fraction(1, q * q)


@settings(max_examples=50)
@given(st.integers(1, 2**64), st.integers(8, 200))
def test_enclosure_digits_shared(k, bits):
    k %= 1 << bits
    if k == 0:
        k = 1
    den = 1 << bits
    try:
        digits = cf.gauss_digits(k, den, k + 1, den, 20)
    except PrecisionExhausted as exc:
        digits = list(exc.digits)
    # certified digits agree with each endpoint's own expansion
    for x in (Fraction(k, den), Fraction(k + 1, den)):
        if x < 1:
            e = list(cf.expand(x, len(digits)))
            assert e[: len(digits)] == digits[: len(e)]
