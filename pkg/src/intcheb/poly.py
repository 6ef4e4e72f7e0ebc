"""Core polynomial types and exact constructions.

Polynomials are dense coefficient sequences stored low-to-high; the zero
polynomial is the empty tuple and every other polynomial has a nonzero
highest-index coefficient.  ``IntPoly`` holds arbitrary-precision integers,
``RatPoly`` holds ``fractions.Fraction`` values (always in lowest terms).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence, Union

from .errors import BadInputError, BadIntervalError, ZeroPolynomialError


def _trim(coeffs: Sequence) -> tuple:
    end = len(coeffs)
    while end > 0 and coeffs[end - 1] == 0:
        end -= 1
    return tuple(coeffs[:end])


@dataclass(frozen=True)
class IntPoly:
    """Dense integer-coefficient polynomial, coefficient k multiplies x^k."""

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = _trim([int(c) for c in coeffs])
        object.__setattr__(self, "coeffs", cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> int:
        if self.is_zero:
            raise ZeroPolynomialError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __call__(self, x):
        """Horner evaluation; exact for int/Fraction arguments."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "IntPoly") -> "IntPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPoly(out)

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return self + (-other)

    def __neg__(self) -> "IntPoly":
        return IntPoly([-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPoly([c * other for c in self.coeffs])
        if self.is_zero or other.is_zero:
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "IntPoly":
        if n < 0:
            raise BadInputError("negative polynomial power")
        result = IntPoly([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def derivative(self) -> "IntPoly":
        return IntPoly([k * c for k, c in enumerate(self.coeffs)][1:])

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g if g else 1

    def primitive(self) -> "IntPoly":
        """Content removed, leading coefficient made positive."""
        if self.is_zero:
            return self
        g = self.content()
        if self.coeffs[-1] < 0:
            g = -g
        return IntPoly([c // g for c in self.coeffs])

    def shift_up(self, k: int) -> "IntPoly":
        """Multiply by x^k."""
        if self.is_zero:
            return self
        return IntPoly([0] * k + list(self.coeffs))

    def to_rat(self) -> "RatPoly":
        return RatPoly([Fraction(c) for c in self.coeffs])

    def compose(self, inner: "IntPoly") -> "IntPoly":
        acc = IntPoly()
        for c in reversed(self.coeffs):
            acc = acc * inner + IntPoly([c])
        return acc

    def __str__(self) -> str:
        return _format_poly(self.coeffs)


@dataclass(frozen=True)
class RatPoly:
    """Dense rational-coefficient polynomial, same normalization as IntPoly."""

    coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs: Iterable = ()):
        cs = _trim([Fraction(c) for c in coeffs])
        object.__setattr__(self, "coeffs", cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> Fraction:
        if self.is_zero:
            raise ZeroPolynomialError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "RatPoly") -> "RatPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return RatPoly(out)

    def __sub__(self, other: "RatPoly") -> "RatPoly":
        return self + (-other)

    def __neg__(self) -> "RatPoly":
        return RatPoly([-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RatPoly([c * other for c in self.coeffs])
        if self.is_zero or other.is_zero:
            return RatPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return RatPoly(out)

    __rmul__ = __mul__

    def derivative(self) -> "RatPoly":
        return RatPoly([k * c for k, c in enumerate(self.coeffs)][1:])

    def compose(self, inner: "RatPoly") -> "RatPoly":
        acc = RatPoly()
        for c in reversed(self.coeffs):
            acc = acc * inner + RatPoly([c])
        return acc

    def clear_denominators(self) -> tuple[IntPoly, int]:
        """Smallest positive integer L with L*self integral; returns (L*self, L)."""
        if self.is_zero:
            return IntPoly(), 1
        L = 1
        for c in self.coeffs:
            L = lcm(L, c.denominator)
        return IntPoly([int(c * L) for c in self.coeffs]), L

    def __str__(self) -> str:
        return _format_poly(self.coeffs)


Poly = Union[IntPoly, RatPoly]


def _format_poly(coeffs) -> str:
    if not coeffs:
        return "0"
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        sign = "-" if c < 0 else ("+" if parts else "")
        mag = abs(c)
        if k == 0:
            term = f"{mag}"
        else:
            xs = "x" if k == 1 else f"x^{k}"
            term = xs if mag == 1 else f"{mag}*{xs}"
        parts.append(f"{sign} {term}" if parts else f"{sign}{term}")
    return " ".join(parts)


def as_rat(P: Poly) -> RatPoly:
    return P if isinstance(P, RatPoly) else P.to_rat()


@dataclass(frozen=True)
class Interval:
    """Closed segment [a, b] with rational endpoints, a < b."""

    a: Fraction
    b: Fraction

    def __init__(self, a, b):
        a, b = Fraction(a), Fraction(b)
        if not a < b:
            raise BadIntervalError(f"need a < b, got [{a}, {b}]")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @classmethod
    def centered(cls, c, halfwidth=2) -> "Interval":
        c = Fraction(c)
        return cls(c - halfwidth, c + halfwidth)

    @property
    def length(self) -> Fraction:
        return self.b - self.a

    @property
    def midpoint(self) -> Fraction:
        return (self.a + self.b) / 2

    def contains(self, x) -> bool:
        return self.a <= Fraction(x) <= self.b

    def __str__(self) -> str:
        return f"[{self.a}, {self.b}]"


def monic_chebyshev(n: int, I: Interval) -> RatPoly:
    """Monic polynomial of degree n with minimal sup-norm on I.

    Built by the three-term recurrence u_{k+1} = (x - c) u_k - (h^2/4) u_{k-1}
    with u_0 = 2, u_1 = x - c, where c is the midpoint and h the half-length
    of I.  Its sup-norm on I is exactly 2 (h/2)^n = 2 ((b-a)/4)^n.
    """
    if n < 1:
        raise BadInputError("degree must be >= 1")
    c = I.midpoint
    q = (I.length / 2) ** 2 / 4  # h^2 / 4
    prev = RatPoly([2])
    cur = RatPoly([-c, 1])
    for _ in range(n - 1):
        nxt = RatPoly([0] + list(cur.coeffs)) - cur * c - prev * q
        prev, cur = cur, nxt
    return cur


def monic_chebyshev_norm(n: int, I: Interval) -> Fraction:
    """Exact sup-norm of monic_chebyshev(n, I): 2 ((b-a)/4)^n."""
    return 2 * (I.length / 4) ** n


def chebyshev_04(n: int) -> IntPoly:
    """Degree-n monic integer polynomial 2 cos(n arccos((x-2)/2)) on [0, 4].

    Recurrence t_{k+1} = (x-2) t_k - t_{k-1} with t_0 = 2, t_1 = x - 2.
    All roots are simple, lie in (0, 4), and are symmetric about 2.
    """
    if n < 1:
        raise BadInputError("degree must be >= 1")
    prev = IntPoly([2])
    cur = IntPoly([-2, 1])
    for _ in range(n - 1):
        nxt = cur.shift_up(1) - cur * 2 - prev
        prev, cur = cur, nxt
    return cur


def first_primes(k: int) -> list[int]:
    ps: list[int] = []
    q = 2
    while len(ps) < k:
        if all(q % p for p in ps):
            ps.append(q)
        q += 1
    return ps


def prime_cyclotomic_product(k: int) -> IntPoly:
    """Product over the first k primes p of (z^p - 1)/(z - 1).

    Monic of degree sum(p) - k with all roots simple on the unit circle;
    the coefficient of z^(degree-1) equals k.
    """
    if k < 1:
        raise BadInputError("need k >= 1")
    out = IntPoly([1])
    for p in first_primes(k):
        out = out * IntPoly([1] * p)
    return out


def change_variable(P: Poly, kind: str, src: Interval | None = None,
                    dst: Interval | None = None) -> Poly:
    """Exact coefficient transform under a change of variable.

    kind="affine" composes P with the increasing affine bijection dst -> src,
    so the result, restricted to dst, traces the same values P takes on src.
    kind="square" maps P(t) to P(x^2); the sup-norm of P on [0, 1] equals the
    sup-norm of P(x^2) on [-1, 1].
    """
    if kind == "square":
        if isinstance(P, IntPoly):
            return P.compose(IntPoly([0, 0, 1]))
        return P.compose(RatPoly([0, 0, 1]))
    if kind == "affine":
        if src is None or dst is None:
            raise BadInputError("affine change of variable needs src and dst intervals")
        # phi(y) = a + (b-a)(y-c)/(d-c) maps [c,d] onto [a,b]
        scale = src.length / dst.length
        shift = src.a - dst.a * scale
        inner = RatPoly([shift, scale])
        return as_rat(P).compose(inner)
    raise BadInputError(f"unknown change of variable kind: {kind!r}")
