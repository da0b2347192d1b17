import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from matchdisc.errors import PartsSumMismatch
from matchdisc.numerics import (
    Interval,
    binomial,
    enclose_constant,
    interval_exp,
    interval_sqrt,
    multinomial,
    round_half_up,
)


def test_binomial_edges():
    assert binomial(5, 2) == 10
    assert binomial(3, 5) == 0
    assert binomial(0, 0) == 1


@given(st.lists(st.integers(0, 6), min_size=1, max_size=5))
def test_multinomial_matches_factorials(parts):
    m = sum(parts)
    expected = math.factorial(m)
    for p in parts:
        expected //= math.factorial(p)
    assert multinomial(m, parts) == expected


def test_multinomial_rejects_bad_sum():
    with pytest.raises(PartsSumMismatch):
        multinomial(5, [2, 2])


def test_multinomial_example():
    assert multinomial(4, [1, 1, 2]) == 12


PI50 = "3.14159265358979323846264338327950288419716939937510"
E50 = "2.71828182845904523536028747135266249775724709369995"
SQRT2PI50 = "2.50662827463100050241576528481104525300698674060993"


@pytest.mark.parametrize("name,digits", [("e", E50), ("pi", PI50), ("sqrt2pi", SQRT2PI50)])
def test_constants_enclose_reference_digits(name, digits):
    iv = enclose_constant(name, 30)
    ref = Fraction(digits)
    slack = Fraction(1, 10**50)
    assert iv.lo <= ref + slack and ref - slack <= iv.hi
    assert iv.width <= Fraction(1, 10**30)


@given(st.fractions(min_value=-8, max_value=8, max_denominator=50))
def test_exp_contains_float(x):
    iv = interval_exp(x, 20)
    assert iv.lo <= iv.hi
    assert iv.width <= Fraction(1, 10**20) * max(1, abs(iv.hi))
    assert abs(float(iv.lo) - math.exp(x)) <= 1e-12 * math.exp(x)


def test_exp_of_zero_and_one():
    assert interval_exp(0).contains(1)
    e = enclose_constant("e")
    one = interval_exp(1)
    assert one.lo <= e.hi and e.lo <= one.hi


@given(st.fractions(min_value=0, max_value=1000, max_denominator=30))
def test_sqrt_squares_back(x):
    iv = interval_sqrt(x, 20)
    assert (iv.lo * iv.lo) <= x <= (iv.hi * iv.hi)


def test_sqrt_of_perfect_square_is_tight():
    assert interval_sqrt(49).contains(7)


@given(st.fractions(max_denominator=40), st.fractions(max_denominator=40),
       st.fractions(max_denominator=40), st.fractions(max_denominator=40))
def test_interval_ops_contain_point_results(a, b, c, d):
    x = Interval(min(a, b), max(a, b))
    y = Interval(min(c, d), max(c, d))
    for p in (x.lo, x.hi):
        for q in (y.lo, y.hi):
            assert (x + y).contains(p + q)
            assert (x - y).contains(p - q)
            assert (x * y).contains(p * q)


def test_interval_reciprocal_and_power():
    x = Interval(Fraction(1, 2), Fraction(2))
    assert x.reciprocal() == Interval(Fraction(1, 2), Fraction(2))
    assert Interval(Fraction(-1), Fraction(2)) ** 2 == Interval(Fraction(0), Fraction(4))
    with pytest.raises(ZeroDivisionError):
        Interval(Fraction(-1), Fraction(1)).reciprocal()


def test_interval_comparisons():
    a, b = Interval(Fraction(0), Fraction(1)), Interval(Fraction(2), Fraction(3))
    assert a.certainly_lt(b)
    assert not b.certainly_lt(a)
    assert not a.certainly_lt(Interval(Fraction(1), Fraction(2)))
    assert a.certainly_le(Interval(Fraction(1), Fraction(2)))


@pytest.mark.parametrize("q,decimals,expected", [
    (Fraction(3, 4), 4, "0.7500"),
    (Fraction(1, 8), 2, "0.13"),
    (Fraction(2197, 4096), 4, "0.5364"),
    (Fraction(5, 9), 4, "0.5556"),
    (Fraction(-1, 8), 2, "-0.13"),
])
def test_round_half_up(q, decimals, expected):
    assert round_half_up(q, decimals) == expected
