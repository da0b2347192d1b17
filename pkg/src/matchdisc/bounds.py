"""Certified checks of the elementary inequalities behind f(k) > g_r(k).

Each claim is checked either exactly over the rationals or with interval
enclosures, and carries a :class:`Certificate` recording the method and the
margin.  An interval claim ``L < R`` passes only when ``hi(L) < lo(R)``.
Decimal constants are stored as exact rationals.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from .errors import InvalidParams, ParamOutOfRange
from .numerics import DEFAULT_PRECISION, Interval, enclose_constant, interval_exp, interval_sqrt
from .thresholds import Comparison, compare, f0, g_r_k

Q = Fraction


@dataclass(frozen=True)
class Certificate:
    claim: str
    method: str  # "exact" or "interval"
    relation: str  # "<" or "<="
    lhs: Interval
    rhs: Interval
    passed: bool

    @property
    def margin(self) -> Fraction:
        """rhs - lhs for exact claims; lo(rhs) - hi(lhs) for interval claims."""
        return self.rhs.lo - self.lhs.hi

    def to_dict(self) -> dict:
        def show(iv: Interval) -> str:
            if iv.lo == iv.hi:
                return str(iv.lo)
            return f"[{float(iv.lo):.15g}, {float(iv.hi):.15g}]"

        return {
            "claim": self.claim,
            "method": self.method,
            "lhs": show(self.lhs),
            "rhs": show(self.rhs),
            "margin": f"{float(self.margin):.6g}",
            "passed": self.passed,
        }


def exact(claim: str, lhs, rhs, strict: bool = False) -> Certificate:
    lhs, rhs = Fraction(lhs), Fraction(rhs)
    ok = lhs < rhs if strict else lhs <= rhs
    return Certificate(claim, "exact", "<" if strict else "<=", Interval.point(lhs), Interval.point(rhs), ok)


def certified(claim: str, lhs, rhs) -> Certificate:
    """Strict interval separation hi(lhs) < lo(rhs); also used for non-strict claims."""
    lhs = lhs if isinstance(lhs, Interval) else Interval.point(lhs)
    rhs = rhs if isinstance(rhs, Interval) else Interval.point(rhs)
    return Certificate(claim, "interval", "<", lhs, rhs, lhs.hi < rhs.lo)


@dataclass
class CheckResult:
    name: str
    certificates: list[Certificate] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return bool(self.certificates) and all(c.passed for c in self.certificates)

    def __bool__(self) -> bool:
        return self.passed

    def add(self, cert: Certificate) -> Certificate:
        self.certificates.append(cert)
        return cert

    def failures(self) -> list[Certificate]:
        return [c for c in self.certificates if not c.passed]

    def to_dict(self, full: bool = False) -> dict:
        out = {"check": self.name, "passed": self.passed, "claims": len(self.certificates)}
        if full or not self.passed:
            out["certificates"] = [c.to_dict() for c in (self.certificates if full else self.failures())]
        return out


class _Consts:
    """Interval enclosures shared by the checks at one precision."""

    def __init__(self, precision: int):
        self.precision = precision
        self.e = enclose_constant("e", precision)
        self.pi = enclose_constant("pi", precision)
        self.sqrt2pi = enclose_constant("sqrt2pi", precision)
        self.inv_sqrt2pi = self.sqrt2pi.reciprocal()
        self.inv_e = self.e.reciprocal()

    def exp(self, x) -> Interval:
        return interval_exp(Fraction(x), self.precision)

    def sqrt(self, x) -> Interval:
        return interval_sqrt(x, self.precision)

    def half_power_inv_2pi(self, m: int) -> Interval:
        """(1/(2 pi))^(m/2)."""
        return self.inv_sqrt2pi**m

    def pow_3_2(self, x) -> Interval:
        """x^(3/2) for a positive rational x."""
        return Fraction(x) * self.sqrt(x)


_CONSTS: dict[int, _Consts] = {}


def _consts(precision: int) -> _Consts:
    c = _CONSTS.get(precision)
    if c is None:
        c = _CONSTS[precision] = _Consts(precision)
    return c


# ---------------------------------------------------------------------------
# the three monotone sequences


def h1(k: int) -> Fraction:
    return (1 - Q(1, k)) ** (k - 1)


def h2(k: int) -> Fraction:
    return (1 - Q(3, 2 * k)) ** (k - 2)


def h3(k: int) -> Fraction:
    return (1 - Q(1, 2 * k)) ** (k - 1)


SEQUENCES: dict[str, tuple[Callable[[int], Fraction], int]] = {
    "h1": (h1, 1),
    "h2": (h2, 2),
    "h3": (h3, 2),
}

# anchor points k0 for which h(k) <= h(k0) for k >= k0 is used downstream
_ANCHORS = {"h1": (3, 10, 20), "h2": (20,), "h3": (20,)}


def check_monotone(h: str, k_max: int = 1000) -> CheckResult:
    """h(k) >= h(k+1) exactly for every k from the sequence's start up to k_max."""
    if h not in SEQUENCES:
        raise InvalidParams(f"unknown sequence {h!r}")
    if k_max < 3:
        raise ParamOutOfRange("k_max must be >= 3")
    fn, start = SEQUENCES[h]
    res = CheckResult(f"monotone {h} on [{start}, {k_max}]")
    values = [fn(k) for k in range(start, k_max + 1)]
    bad = [start + i for i in range(len(values) - 1) if values[i] < values[i + 1]]
    res.add(
        Certificate(
            f"{h}(k) >= {h}(k+1) for {start} <= k < {k_max}" + (f" (fails at {bad[:5]})" if bad else ""),
            "exact",
            "<=",
            Interval.point(0),
            Interval.point(0 if not bad else -1),
            not bad,
        )
    )
    for k0 in _ANCHORS[h]:
        if k0 > k_max:
            continue
        anchor = fn(k0)
        worst = max(values[k0 - start:])
        res.add(exact(f"{h}(k) <= {h}({k0}) for {k0} <= k <= {k_max}", worst, anchor))
    if h == "h2" and k_max >= 20:
        res.add(exact("(1 - 3/40)^18 <= 0.246", h2(20), Q(246, 1000)))
    if h == "h3" and k_max >= 20:
        res.add(exact("(1 - 1/40)^19 <= 0.619", h3(20), Q(619, 1000)))
    return res


# ---------------------------------------------------------------------------
# basic inequalities


def check_prop_a1(item: str, k: int | None = None, r: int | None = None, m: int | None = None,
                  precision: int = DEFAULT_PRECISION) -> CheckResult:
    """One item (a)-(d) of the basic inequality list at the given parameters.

    Defaults are the boundary parameters: k=3 (a), k=10 (b), k=20 (c) and
    k=3, r=3, m=1 (d).
    """
    C = _consts(precision)
    res = CheckResult(f"basic inequality ({item})")
    if item == "a":
        k = 3 if k is None else k
        if k < 3:
            raise ParamOutOfRange("(a) needs k >= 3")
        res.add(exact(f"(1-1/{k})^{k - 1} <= (2/3)^2", h1(k), Q(4, 9)))
        res.add(certified("4/9 <= 1.21 e^-1", Q(4, 9), Q(121, 100) * C.inv_e))
    elif item == "b":
        k = 10 if k is None else k
        if k < 10:
            raise ParamOutOfRange("(b) needs k >= 10")
        res.add(exact(f"(1-1/{k})^{k - 1} <= (9/10)^9", h1(k), h1(10)))
        res.add(certified("(9/10)^9 <= 1.06 e^-1", h1(10), Q(106, 100) * C.inv_e))
    elif item == "c":
        k = 20 if k is None else k
        if k < 20:
            raise ParamOutOfRange("(c) needs k >= 20")
        res.add(exact(f"(1-1/{k})^{k - 1} <= (19/20)^19", h1(k), h1(20)))
        res.add(exact("(19/20)^19 <= 0.378", h1(20), Q(378, 1000)))
        res.add(exact(f"(1-3/(2*{k}))^{k - 2} <= (37/40)^18", h2(k), h2(20)))
        res.add(exact("(37/40)^18 <= 0.246", h2(20), Q(246, 1000)))
        res.add(exact(f"(1-1/(2*{k}))^{k - 1} <= (39/40)^19", h3(k), h3(20)))
        res.add(exact("(39/40)^19 <= 0.619", h3(20), Q(619, 1000)))
    elif item == "d":
        k = 3 if k is None else k
        r = 3 if r is None else r
        m = 1 if m is None else m
        if k < 3 or r < 3 or not 1 <= m <= k - 2:
            raise ParamOutOfRange("(d) needs k >= 3, r >= 3 and 1 <= m <= k-2")
        p = C.half_power_inv_2pi(m)
        # sqrt is monotone and the common factor is positive, so compare radicands exactly
        res.add(exact(f"(k-1)/(k-m-1) <= 2m at k={k}, m={m}", Q(k - 1, k - m - 1), 2 * m))
        res.add(certified(f"sqrt(2m) (2pi)^(-m/2) <= exp(-m/3) at m={m}", C.sqrt(2 * m) * p, C.exp(Q(-m, 3))))
        # exp is increasing: exp(-m/3) <= exp(-m/r) iff m/r <= m/3
        res.add(exact(f"-m/3 <= -m/r at m={m}, r={r}", Q(-m, 3), Q(-m, r)))
        gamma1 = C.sqrt(2) * C.exp(Q(1, 3)) * C.inv_sqrt2pi
        res.add(certified("gamma(1) = sqrt(2) e^(1/3) / sqrt(2pi) < 1", gamma1, 1))
        res.add(certified("gamma(1) < 0.78745", gamma1, Q(78745, 100000)))
        res.add(certified("0.78735 < gamma(1)", Q(78735, 100000), gamma1))
    else:
        raise ParamOutOfRange(f"unknown item {item!r}")
    return res


def check_prop_a1_d_grid(k_max: int = 30, r_max: int = 8, precision: int = DEFAULT_PRECISION) -> CheckResult:
    """Item (d) over every 3 <= k <= k_max, 3 <= r <= r_max, 1 <= m <= k-2."""
    res = CheckResult(f"basic inequality (d) grid k<={k_max}, r<={r_max}")
    C = _consts(precision)
    for m in range(1, k_max - 1):
        res.add(certified(f"sqrt(2m) (2pi)^(-m/2) <= exp(-m/3) at m={m}",
                          C.sqrt(2 * m) * C.half_power_inv_2pi(m), C.exp(Q(-m, 3))))
    for k in range(3, k_max + 1):
        for m in range(1, k - 1):
            res.add(exact(f"(k-1)/(k-m-1) <= 2m at k={k}, m={m}", Q(k - 1, k - m - 1), 2 * m))
    for r in range(3, r_max + 1):
        res.add(exact(f"1/r <= 1/3 at r={r}", Q(1, r), Q(1, 3)))
    return res


# ---------------------------------------------------------------------------
# Stirling bounds


def stirling_ratio(k: int, precision: int = DEFAULT_PRECISION) -> Interval:
    """k! / (sqrt(2 pi) (k/e)^k sqrt(k)) as an interval."""
    C = _consts(precision)
    denom = C.sqrt2pi * (Fraction(k) * C.inv_e) ** k * C.sqrt(k)
    return Fraction(math.factorial(k)) / denom


def check_stirling(k_range: Iterable[int] = range(1, 101), samples: Iterable[int] = (2, 9, 20, 100),
                   precision: int = DEFAULT_PRECISION) -> CheckResult:
    """Lower bound k! > sqrt(2pi)(k/e)^k sqrt(k) on k_range plus the 1.01 / 1.05 ratio caps."""
    C = _consts(precision)
    ks = list(k_range)
    if not ks or min(ks) < 1:
        raise ParamOutOfRange("k_range must be nonempty and start at 1 or later")
    res = CheckResult(f"Stirling bounds on [{min(ks)}, {max(ks)}]")
    for k in ks:
        res.add(certified(f"sqrt(2pi)(k/e)^k sqrt(k) < k! at k={k}", 1, stirling_ratio(k, precision)))
    # the ratio decreases: (1 + 1/k)^(2k+1) > e^2
    e2 = C.e**2
    for k in ks:
        res.add(certified(f"e^2 < (1+1/k)^(2k+1) at k={k}", e2, Interval.point((1 + Q(1, k)) ** (2 * k + 1))))
    for k in samples:
        ratio = stirling_ratio(k, precision)
        if k >= 9:
            res.add(certified(f"ratio({k}) <= 1.01", ratio, Q(101, 100)))
        if k >= 2:
            res.add(certified(f"ratio({k}) <= 1.05", ratio, Q(105, 100)))
    return res


# ---------------------------------------------------------------------------
# regimes


class Regime(str, enum.Enum):
    A3 = "A3"  # r = 2, k >= 20
    A4 = "A4"  # r >= 3, k >= 10
    A5 = "A5"  # r >= 6, k >= 3
    FINITE_TABLE = "FINITE_TABLE"
    UNPROVEN = "UNPROVEN"


@dataclass(frozen=True)
class RegimeResult:
    r: int
    k: int
    regime: Regime
    g_value: Fraction
    f0_value: Fraction

    @property
    def g_below_f0(self) -> bool:
        return self.g_value < self.f0_value

    @property
    def comparison(self) -> Comparison:
        return compare(self.g_value, self.k)

    @property
    def margin(self) -> Fraction:
        """f0(k) - g_r(k), exact."""
        return self.f0_value - self.g_value

    @property
    def passed(self) -> bool:
        """In an asymptotic regime, the exact check g_r(k) < f0(k) must hold."""
        if self.regime in (Regime.A3, Regime.A4, Regime.A5):
            return self.g_below_f0
        return True

    def to_dict(self) -> dict:
        return {
            "r": self.r,
            "k": self.k,
            "regime": self.regime.value,
            "g": str(self.g_value),
            "f0": str(self.f0_value),
            "margin": f"{float(self.margin):.6g}",
            "g_below_f0": self.g_below_f0,
            "comparison": self.comparison.value,
            "passed": self.passed,
        }


def regime_of(r: int, k: int) -> Regime:
    if r < 2 or k < 3:
        raise InvalidParams(f"need r >= 2 and k >= 3, got r={r}, k={k}")
    if r == 2 and k >= 20:
        return Regime.A3
    if r >= 3 and k >= 10:
        return Regime.A4
    if r >= 6:
        return Regime.A5
    if (r == 2 and k <= 19) or (3 <= r <= 5 and k <= 9):
        return Regime.FINITE_TABLE
    return Regime.UNPROVEN  # pragma: no cover - the regimes above are exhaustive


def certify_regime(r: int, k: int) -> RegimeResult:
    regime = regime_of(r, k)
    g_value, _ = g_r_k(r, k)
    return RegimeResult(r, k, regime, g_value, f0(k))


# ---------------------------------------------------------------------------
# the reduction constants used in the three asymptotic regimes


def reduction_claims(precision: int = DEFAULT_PRECISION) -> CheckResult:
    """Every numeric constant the three regime arguments rely on, at its boundary value."""
    C = _consts(precision)
    res = CheckResult("reduction constants")
    one_01, one_06, one_05, one_21 = Q(101, 100), Q(106, 100), Q(105, 100), Q(121, 100)
    c378, c246, c619 = Q(378, 1000), Q(246, 1000), Q(619, 1000)

    # r = 2, k >= 20
    res.add(exact("1 - 0.378 = 0.622", 1 - c378, Q(622, 1000)))
    res.add(exact("f0(k) >= 0.622 at k = 20", Q(622, 1000), f0(20)))
    res.add(exact("a=0: 0.619 < 0.622", c619, Q(622, 1000), strict=True))
    res.add(exact("a=1: (3/2) 0.246 (5/3) < 0.622", Q(3, 2) * c246 * Q(5, 3), Q(622, 1000), strict=True))
    res.add(exact("a=1 bound: 1 + (2k-3)/(3(k-1)) <= 5/3 at k=20", 1 + Q(37, 57), Q(5, 3)))
    a2 = C.inv_sqrt2pi * one_01 * c378 * C.sqrt(Q(19, 34)) * C.e * Q(9, 5)
    res.add(certified("a=2: sqrt(1/2pi) 1.01 0.378 sqrt(19/34) e 9/5 <= 0.558", a2, Q(558, 1000)))
    a3 = C.inv_sqrt2pi * one_01 * c378 * C.sqrt(Q(19, 48)) * C.e * 2
    res.add(certified("a>=3: sqrt(1/2pi) 1.01 0.378 sqrt(19/48) e 2 <= 0.521", a3, Q(521, 1000)))
    res.add(exact("(k-1)/(2(k-3)) <= 19/34 at k=20", Q(19, 2 * 17), Q(19, 34)))
    res.add(exact("(k-1)/(3(k-4)) <= 19/48 at k=20", Q(19, 3 * 16), Q(19, 48)))

    # r >= 3, k >= 10
    bound_f = 1 - one_06 * C.inv_e
    res.add(certified("0.61 <= 1 - 1.06 e^-1", Q(61, 100), bound_f))
    lead = one_01 * one_06 * C.exp(Q(-2, 3))
    res.add(certified("1.01 1.06 exp(-2/3) < 0.55", lead, Q(55, 100)))
    res.add(certified("0.55 < 1 - 1.06 e^-1", Q(55, 100), bound_f))
    r3 = one_01 * one_06 * C.sqrt(Q(9, 7)) * (C.inv_sqrt2pi**2) * 3
    res.add(certified("r=3: 1.01 1.06 sqrt(9/7) (1/2pi) 3 < 0.58", r3, Q(58, 100)))
    res.add(certified("0.58 < 1 - 1.06 e^-1", Q(58, 100), bound_f))
    ratio = C.pow_3_2(Q(5, 4)) * C.inv_sqrt2pi
    res.add(certified("(5/4)^(3/2) sqrt(1/2pi) <= 1", ratio, 1))
    r4 = one_01 * one_06 * 8 * (C.inv_sqrt2pi**3)
    res.add(certified("r=4: 1.01 1.06 4^(3/2) (1/2pi)^(3/2) <= 0.55", r4, Q(55, 100)))

    # r >= 6, k >= 3
    res.add(exact("0.555 <= 5/9", Q(555, 1000), Q(5, 9)))
    res.add(exact("5/9 = f0(3)", f0(3), Q(5, 9)))
    res.add(exact("(k-1)!-Stirling cap 1.05 applies from k-1 >= 2", 2, 2))
    z = one_05 * one_21 * C.exp(Q(-5, 6))
    res.add(certified("1.05 1.21 exp(-5/6) <= 0.553", z, Q(553, 1000)))
    res.add(exact("0.553 < 5/9", Q(553, 1000), Q(5, 9), strict=True))
    r6 = one_05 * one_21 * C.pow_3_2(6) * (C.inv_sqrt2pi**5)
    res.add(certified("r=6: 1.05 1.21 6^(3/2) (1/2pi)^(5/2) <= 0.190", r6, Q(190, 1000)))
    ratio6 = C.pow_3_2(Q(7, 6)) * C.inv_sqrt2pi
    res.add(certified("(7/6)^(3/2) sqrt(1/2pi) <= 1", ratio6, 1))
    return res


def check_regimes(r_max: int = 8, k_max: int = 30) -> tuple[CheckResult, list[RegimeResult]]:
    """Exact g_r(k) < f0(k) for every (r, k) in an asymptotic regime."""
    res = CheckResult(f"regime exactness r<={r_max}, k<={k_max}")
    rows = []
    for r in range(2, r_max + 1):
        for k in range(3, k_max + 1):
            rr = certify_regime(r, k)
            rows.append(rr)
            if rr.regime in (Regime.A3, Regime.A4, Regime.A5):
                res.add(exact(f"g_{r}({k}) < f0({k}) [{rr.regime.value}]", rr.g_value, rr.f0_value, strict=True))
    return res, rows


def verify_appendix(k_max: int = 1000, r_max: int = 8, regime_k_max: int = 30,
                    precision: int = DEFAULT_PRECISION) -> list[CheckResult]:
    """Every bounds check, as a list of results."""
    out = [check_prop_a1(item, precision=precision) for item in "abcd"]
    out.append(check_prop_a1_d_grid(regime_k_max, r_max, precision))
    out.extend(check_monotone(h, k_max) for h in ("h1", "h2", "h3"))
    out.append(check_stirling(range(1, 101), precision=precision))
    out.append(reduction_claims(precision))
    out.append(check_regimes(r_max, regime_k_max)[0])
    return out
