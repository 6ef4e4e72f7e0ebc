"""Two-sided enclosures with exact rational endpoints.

Every certified numeric quantity in this package is an ``Enclosure``: a pair
of rationals ``lower <= upper`` guaranteed to bracket the true value.  Exact
values are enclosures of zero width.  Endpoints coming from floating-point
computations are produced with directed rounding (gmpy2/MPFR), so the
bracketing survives the float-to-rational conversion.
"""

from __future__ import annotations

import decimal
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

import gmpy2
from gmpy2 import mpfr, mpq

from .errors import BadInputError

_DEFAULT_PREC = 120


def _to_fraction(x) -> Fraction:
    """Exact conversion of an mpfr/mpq/int/Fraction to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    q = mpq(x)  # exact for mpfr (dyadic) and mpq
    return Fraction(int(q.numerator), int(q.denominator))


def _ctx(prec: int, rounding) -> gmpy2.context:
    return gmpy2.context(precision=prec, round=rounding)


def _down(fn, *args, prec: int = _DEFAULT_PREC) -> Fraction:
    with _ctx(prec, gmpy2.RoundDown):
        return _to_fraction(fn(*args))


def _up(fn, *args, prec: int = _DEFAULT_PREC) -> Fraction:
    with _ctx(prec, gmpy2.RoundUp):
        return _to_fraction(fn(*args))


def _as_mpq(x: Fraction):
    return mpq(x.numerator, x.denominator)


@dataclass(frozen=True)
class Enclosure:
    """A certified interval ``[lower, upper]`` containing the true value."""

    lower: Fraction
    upper: Fraction

    def __post_init__(self):
        if self.lower > self.upper:
            raise BadInputError("enclosure endpoints out of order", code="bad-enclosure")

    @classmethod
    def exact(cls, v) -> "Enclosure":
        f = Fraction(v)
        return cls(f, f)

    @property
    def is_exact(self) -> bool:
        return self.lower == self.upper

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower

    @property
    def midpoint(self) -> Fraction:
        return (self.lower + self.upper) / 2

    def relative_width(self) -> Fraction:
        scale = min(abs(self.lower), abs(self.upper))
        if scale == 0:
            return Fraction(0) if self.width == 0 else Fraction(10**30)
        return self.width / scale

    def contains(self, v) -> bool:
        f = Fraction(v)
        return self.lower <= f <= self.upper

    def hull(self, other: "Enclosure") -> "Enclosure":
        return Enclosure(min(self.lower, other.lower), max(self.upper, other.upper))

    def __neg__(self) -> "Enclosure":
        return Enclosure(-self.upper, -self.lower)

    def __add__(self, other) -> "Enclosure":
        o = other if isinstance(other, Enclosure) else Enclosure.exact(other)
        return Enclosure(self.lower + o.lower, self.upper + o.upper)

    def __sub__(self, other) -> "Enclosure":
        o = other if isinstance(other, Enclosure) else Enclosure.exact(other)
        return Enclosure(self.lower - o.upper, self.upper - o.lower)

    def __mul__(self, other) -> "Enclosure":
        o = other if isinstance(other, Enclosure) else Enclosure.exact(other)
        prods = [self.lower * o.lower, self.lower * o.upper,
                 self.upper * o.lower, self.upper * o.upper]
        return Enclosure(min(prods), max(prods))

    __radd__ = __add__
    __rmul__ = __mul__

    def scale(self, f) -> "Enclosure":
        f = Fraction(f)
        if f >= 0:
            return Enclosure(self.lower * f, self.upper * f)
        return Enclosure(self.upper * f, self.lower * f)

    def certainly_lt(self, v) -> bool:
        return self.upper < Fraction(v)

    def certainly_gt(self, v) -> bool:
        return self.lower > Fraction(v)

    def certainly_le(self, v) -> bool:
        return self.upper <= Fraction(v)

    def certainly_ge(self, v) -> bool:
        return self.lower >= Fraction(v)

    def __float__(self) -> float:
        return float(self.midpoint)


def _exact_sqrt(f: Fraction) -> Fraction | None:
    """Rational square root if ``f`` is a perfect square of a rational."""
    if f < 0:
        return None
    n, d = f.numerator, f.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def sqrt_enclosure(f, prec: int = _DEFAULT_PREC) -> Enclosure:
    f = Fraction(f)
    if f < 0:
        raise BadInputError("sqrt of negative value")
    ex = _exact_sqrt(f)
    if ex is not None:
        return Enclosure.exact(ex)
    q = _as_mpq(f)
    return Enclosure(_down(gmpy2.sqrt, q, prec=prec), _up(gmpy2.sqrt, q, prec=prec))


def log_enclosure(f, prec: int = _DEFAULT_PREC) -> Enclosure:
    f = Fraction(f)
    if f <= 0:
        raise BadInputError("log of non-positive value")
    if f == 1:
        return Enclosure.exact(0)
    q = _as_mpq(f)
    return Enclosure(_down(gmpy2.log, q, prec=prec), _up(gmpy2.log, q, prec=prec))


def exp_enclosure(e: Enclosure, prec: int = _DEFAULT_PREC) -> Enclosure:
    return Enclosure(_down(gmpy2.exp, _as_mpq(e.lower), prec=prec),
                     _up(gmpy2.exp, _as_mpq(e.upper), prec=prec))


def log_of_enclosure(e: Enclosure, prec: int = _DEFAULT_PREC) -> Enclosure:
    if e.lower <= 0:
        raise BadInputError("log of enclosure touching zero")
    return Enclosure(_down(gmpy2.log, _as_mpq(e.lower), prec=prec),
                     _up(gmpy2.log, _as_mpq(e.upper), prec=prec))


def nth_root_enclosure(e: Enclosure, n: int, prec: int = _DEFAULT_PREC) -> Enclosure:
    """Enclosure of e^(1/n) for a nonnegative enclosure and n >= 1."""
    if n < 1:
        raise BadInputError("nth root needs n >= 1")
    if e.lower < 0:
        raise BadInputError("nth root of negative enclosure")
    if n == 1:
        return e
    lo = _down(lambda q: gmpy2.root(mpfr(q), n), _as_mpq(e.lower), prec=prec)
    hi = _up(lambda q: gmpy2.root(mpfr(q), n), _as_mpq(e.upper), prec=prec)
    # gmpy2.root rounds once from an already-rounded mpfr; widen by one ulp each way
    pad = Fraction(1, 2 ** (prec - 4))
    return Enclosure(max(Fraction(0), lo - abs(lo) * pad), hi + abs(hi) * pad)


def inv_nth_root_enclosure(e: Enclosure, n: int, prec: int = _DEFAULT_PREC) -> Enclosure:
    """Enclosure of e^(-1/n) for a strictly positive enclosure."""
    if e.lower <= 0:
        raise BadInputError("inverse root of enclosure touching zero")
    r = nth_root_enclosure(e, n, prec=prec)
    return Enclosure(1 / r.upper, 1 / r.lower)


def pow_int_enclosure(e: Enclosure, k: int) -> Enclosure:
    """Enclosure of e^k for integer k >= 0 (monotone on nonnegative enclosures)."""
    if k == 0:
        return Enclosure.exact(1)
    if e.lower < 0:
        raise BadInputError("integer power expects nonnegative enclosure")
    return Enclosure(e.lower ** k, e.upper ** k)


def _round_frac(f: Fraction, bits: int, up: bool) -> Fraction:
    if f.denominator.bit_length() <= bits:
        return f
    scaled = f * (1 << bits)
    n = scaled.numerator // scaled.denominator
    if up and n * scaled.denominator != scaled.numerator:
        n += 1
    return Fraction(n, 1 << bits)


def outward_round(e: Enclosure, bits: int = 192) -> Enclosure:
    """Compact enclosure endpoints to dyadics of bounded size, rounding outward."""
    return Enclosure(_round_frac(e.lower, bits, up=False),
                     _round_frac(e.upper, bits, up=True))


def decimal_str(f: Fraction, digits: int = 24) -> str:
    """Deterministic decimal rendering of a rational.

    Exact when the fraction terminates within ``digits`` significant digits,
    otherwise correctly rounded to that many digits.
    """
    if f == 0:
        return "0"
    with decimal.localcontext() as ctx:
        ctx.prec = digits
        d = decimal.Decimal(f.numerator) / decimal.Decimal(f.denominator)
        s = str(d.normalize())
    return s
