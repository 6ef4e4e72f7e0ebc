"""Elementary symmetric functions and power sums of polynomial roots.

Both families are exact rationals read off the coefficients: the m-th
elementary symmetric function of the roots of P = sum a_k x^k of degree n is
(-1)^m a_{n-m}/a_n, and the power sums s_m are linked to the sigma_m through
the classical recurrence

    m * sigma_m = sum_{j=1..m} (-1)^(j-1) s_j sigma_{m-j}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import BadInputError
from .poly import IntPoly, Poly


@dataclass(frozen=True)
class SymmetricData:
    """sigma_1..sigma_m and s_1..s_m for the roots of a degree-n polynomial."""

    sigma: tuple[Fraction, ...]
    powersums: tuple[Fraction, ...]
    n: int

    def __init__(self, sigma: Sequence = (), powersums: Sequence = (), n: int = 0):
        object.__setattr__(self, "sigma", tuple(Fraction(v) for v in sigma))
        object.__setattr__(self, "powersums", tuple(Fraction(v) for v in powersums))
        object.__setattr__(self, "n", int(n))


def sigma_from_poly(P: Poly, m_max: int) -> SymmetricData:
    """sigma_m = (-1)^m a_{n-m}/a_n for m = 1..m_max (requires m_max <= deg P)."""
    n = P.degree
    if n < 1:
        raise BadInputError("need a nonconstant polynomial")
    if m_max > n:
        raise BadInputError(f"order {m_max} exceeds degree {n}")
    an = Fraction(P.lead)
    sig = []
    for m in range(1, m_max + 1):
        sig.append((-1) ** m * Fraction(P.coeff(n - m)) / an)
    return SymmetricData(sigma=sig, n=n)


def newton_convert(data: SymmetricData, direction: str) -> SymmetricData:
    """Fill the missing side of a SymmetricData exactly.

    direction="sigma-to-powersums" computes s_1..s_m from sigma_1..sigma_m;
    direction="powersums-to-sigma" goes the other way.  Conventionally
    sigma_0 = 1.
    """
    if direction == "sigma-to-powersums":
        sigma = data.sigma
        m_max = len(sigma)
        sig = [Fraction(1), *sigma]
        s: list[Fraction] = []
        for m in range(1, m_max + 1):
            # m*sigma_m = sum_{j<m} (-1)^(j-1) s_j sigma_{m-j} + (-1)^(m-1) s_m
            acc = m * sig[m]
            for j in range(1, m):
                acc -= (-1) ** (j - 1) * s[j - 1] * sig[m - j]
            s.append(acc * (-1) ** (m - 1))
        return SymmetricData(sigma=sigma, powersums=s, n=data.n)
    if direction == "powersums-to-sigma":
        s = list(data.powersums)
        m_max = len(s)
        sig = [Fraction(1)]
        for m in range(1, m_max + 1):
            acc = Fraction(0)
            for j in range(1, m + 1):
                acc += (-1) ** (j - 1) * s[j - 1] * sig[m - j]
            sig.append(acc / m)
        return SymmetricData(sigma=sig[1:], powersums=data.powersums, n=data.n)
    raise BadInputError(f"unknown direction {direction!r}")


def power_sums_from_poly(P: Poly, m_max: int) -> list[Fraction]:
    """Exact s_1..s_m_max of the roots of P, via coefficients and Newton.

    Unlike sigma_from_poly this works for any m_max: once m exceeds the
    degree the recurrence continues with sigma_m = 0.
    """
    n = P.degree
    if n < 1:
        raise BadInputError("need a nonconstant polynomial")
    an = Fraction(P.lead)
    sig = [Fraction(1)]
    for m in range(1, m_max + 1):
        sig.append((-1) ** m * Fraction(P.coeff(n - m)) / an if m <= n else Fraction(0))
    s: list[Fraction] = []
    for m in range(1, m_max + 1):
        acc = m * sig[m]
        for j in range(1, m):
            acc -= (-1) ** (j - 1) * s[j - 1] * sig[m - j]
        s.append(acc * (-1) ** (m - 1))
    return s


def symmetric_from_poly(P: IntPoly, m_max: int) -> SymmetricData:
    """Both sides populated from a polynomial's coefficients."""
    data = sigma_from_poly(P, m_max)
    return newton_convert(data, "sigma-to-powersums")
