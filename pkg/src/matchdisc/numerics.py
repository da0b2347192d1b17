"""Exact rational helpers and rational-endpoint interval arithmetic.

Rationals are :class:`fractions.Fraction` (canonical, exact).  Intervals carry
Fraction endpoints; every operation rounds outward so the true real result is
always enclosed.  Transcendental constants come from truncated series with
explicit remainder bounds, never from floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .errors import PartsSumMismatch

DEFAULT_PRECISION = 30

Number = Union[int, Fraction]


def binomial(m: int, j: int) -> int:
    if j < 0 or j > m:
        return 0
    return math.comb(m, j)


def multinomial(m: int, parts: Iterable[int]) -> int:
    """m! / prod(p!) over ``parts``; the parts must sum to m."""
    parts = list(parts)
    if sum(parts) != m or any(p < 0 for p in parts):
        raise PartsSumMismatch(f"parts {parts} do not sum to {m}")
    out = 1
    left = m
    for p in parts:
        out *= math.comb(left, p)
        left -= p
    return out


def _floor_to(q: Fraction, digits: int) -> Fraction:
    scale = 10**digits
    return Fraction(math.floor(q * scale), scale)


def _ceil_to(q: Fraction, digits: int) -> Fraction:
    scale = 10**digits
    return Fraction(math.ceil(q * scale), scale)


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x: Number) -> "Interval":
        return cls(Fraction(x), Fraction(x))

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, x: Number) -> bool:
        return self.lo <= x <= self.hi

    def certainly_lt(self, other: "Interval | Number") -> bool:
        other = _as_interval(other)
        return self.hi < other.lo

    def certainly_le(self, other: "Interval | Number") -> bool:
        other = _as_interval(other)
        return self.hi <= other.lo

    def round_out(self, digits: int) -> "Interval":
        """Widen to endpoints on the 10**-digits grid (keeps numerators small)."""
        return Interval(_floor_to(self.lo, digits), _ceil_to(self.hi, digits))

    def __add__(self, other):
        other = _as_interval(other)
        return Interval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-_as_interval(other))

    def __rsub__(self, other):
        return _as_interval(other) - self

    def __mul__(self, other):
        other = _as_interval(other)
        p = (self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi)
        return Interval(min(p), max(p))

    __rmul__ = __mul__

    def reciprocal(self) -> "Interval":
        if self.lo <= 0 <= self.hi:
            raise ZeroDivisionError("interval contains zero")
        return Interval(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other):
        return self * _as_interval(other).reciprocal()

    def __rtruediv__(self, other):
        return _as_interval(other) * self.reciprocal()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return (self ** (-n)).reciprocal()
        if n == 0:
            return Interval.point(1)
        if self.lo >= 0:
            return Interval(self.lo**n, self.hi**n)
        if self.hi <= 0:
            a, b = self.lo**n, self.hi**n
            return Interval(min(a, b), max(a, b))
        # straddles zero
        if n % 2 == 0:
            return Interval(Fraction(0), max(self.lo**n, self.hi**n))
        return Interval(self.lo**n, self.hi**n)

    def to_float_pair(self) -> tuple[float, float]:
        return float(self.lo), float(self.hi)

    def __repr__(self) -> str:
        return f"Interval[{float(self.lo):.12g}, {float(self.hi):.12g}]"


def _as_interval(x) -> Interval:
    if isinstance(x, Interval):
        return x
    return Interval.point(Fraction(x))


def _refine(build, precision: int) -> Interval:
    """Re-run ``build(guard_digits)`` with more guard digits until the width fits."""
    target = Fraction(1, 10**precision)
    guard = precision + 5
    while True:
        iv = build(guard)
        if iv.width <= target:
            return iv
        guard += max(5, guard // 2)


def interval_sqrt(x: "Interval | Number", precision: int = DEFAULT_PRECISION) -> Interval:
    """Enclosure of sqrt over a nonnegative interval, endpoints on a 10**-p grid."""
    x = _as_interval(x)
    if x.lo < 0:
        raise ValueError("sqrt of an interval with negative part")
    digits = precision + 2
    scale2 = 10 ** (2 * digits)
    low = math.isqrt(math.floor(x.lo * scale2))
    hi_n = math.ceil(x.hi * scale2)
    high = math.isqrt(hi_n)
    if high * high < hi_n:
        high += 1
    return Interval(Fraction(low, 10**digits), Fraction(high, 10**digits))


def _exp_unit(y: Fraction, digits: int) -> Interval:
    """exp(y) for 0 <= y <= 1: Taylor partial sum plus remainder 3*y^(N+1)/(N+1)!."""
    assert 0 <= y <= 1
    tol = Fraction(1, 10 ** (digits + 1))
    total = Fraction(0)
    term = Fraction(1)
    n = 0
    while True:
        total += term
        n += 1
        term = term * y / n
        # remainder after stopping here is at most e^y * term <= 3 * term
        if 3 * term <= tol:
            break
    return Interval(total, total + 3 * term).round_out(digits)


def interval_exp(x: Number, precision: int = DEFAULT_PRECISION) -> Interval:
    """Interval of width <= 10**-precision containing e**x for rational x."""
    x = Fraction(x)
    if x == 0:
        return Interval.point(1)
    steps = max(1, math.ceil(abs(x)))
    y = abs(x) / steps

    def build(guard: int) -> Interval:
        # each power step multiplies the relative error, so pad by the magnitude
        extra = len(str(steps)) + math.ceil(abs(x) / 2) + 2
        base = _exp_unit(y, guard + extra)
        iv = base**steps
        if x < 0:
            iv = iv.reciprocal()
        return iv.round_out(guard)

    return _refine(build, precision)


def _arctan_inv(q: int, digits: int) -> Interval:
    """arctan(1/q) for integer q >= 2 via its alternating series."""
    x = Fraction(1, q)
    x2 = x * x
    tol = Fraction(1, 10 ** (digits + 1))
    power = x
    s_prev = Fraction(0)
    s = Fraction(0)
    n = 0
    while True:
        s_prev = s
        s = s + (power / (2 * n + 1) if n % 2 == 0 else -power / (2 * n + 1))
        n += 1
        power *= x2
        # consecutive partial sums of an alternating decreasing series bracket the limit
        if power / (2 * n + 1) <= tol and n >= 2:
            break
    nxt = s + (power / (2 * n + 1) if n % 2 == 0 else -power / (2 * n + 1))
    return Interval(min(s, nxt), max(s, nxt)).round_out(digits)


def _pi(guard: int) -> Interval:
    # Machin: pi = 16 atan(1/5) - 4 atan(1/239)
    return (16 * _arctan_inv(5, guard + 2) - 4 * _arctan_inv(239, guard + 2)).round_out(guard)


def enclose_constant(name: str, precision: int = DEFAULT_PRECISION) -> Interval:
    """Certified enclosure of ``e``, ``pi`` or ``sqrt2pi`` of width <= 10**-precision."""
    if name == "e":
        return _refine(lambda g: _exp_unit(Fraction(1), g), precision)
    if name == "pi":
        return _refine(_pi, precision)
    if name == "sqrt2pi":
        return _refine(lambda g: interval_sqrt(2 * _pi(g + 2), g), precision)
    raise ValueError(f"unknown constant {name!r}")


def round_half_up(q: Fraction, decimals: int) -> str:
    """Decimal string of q rounded half-up (away from zero on ties) to ``decimals`` places."""
    scale = 10**decimals
    scaled = abs(q) * scale
    n = math.floor(scaled + Fraction(1, 2))
    sign = "-" if q < 0 and n != 0 else ""
    whole, frac = divmod(n, scale)
    if decimals == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:0{decimals}d}"
