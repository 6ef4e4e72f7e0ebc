"""Certified sup-norms, Mahler measures and zero-distribution statistics.

Sup-norms on a segment are enclosed by combining exact rational evaluation at
the endpoints and at certified critical points (roots of the squarefree part
of the derivative) with an exact derivative bound: if x* is a true maximizer,
it lies within a certified disc, and |P| at the disc's evaluation point is
off by at most (derivative bound) * (disc radius).  Shrinking the disc radii
drives the enclosure width to the requested tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

import gmpy2
from gmpy2 import mpc, mpfr

from .enclosure import (Enclosure, exp_enclosure, log_enclosure, outward_round,
                        sqrt_enclosure, _to_fraction)
from .errors import BadInputError, IntChebError, PrecisionExhaustedError
from .poly import IntPoly, Interval, Poly, RatPoly
from .resultants import discriminant, squarefree_part
from .roots import RootSet, find_roots
from .symmetric import power_sums_from_poly

_EPS_DEFAULT = Fraction(1, 10**12)


def _abs_frac(P: IntPoly, x: Fraction) -> Fraction:
    return abs(Fraction(P(x)))


def _derivative_bound(P: IntPoly, I: Interval) -> Fraction:
    """Exact bound for |P'| on I from coefficients: sum k|c_k| M^(k-1)."""
    M = max(abs(I.a), abs(I.b), Fraction(1))
    total = Fraction(0)
    power = Fraction(1)
    for k in range(1, P.degree + 1):
        total += k * abs(P.coeffs[k]) * power
        power *= M
    return total


def _clamp(x: Fraction, I: Interval) -> Fraction:
    return min(max(x, I.a), I.b)


def sup_norm(P: Poly, I: Interval, eps=_EPS_DEFAULT, max_rounds: int = 12) -> Enclosure:
    """Two-sided enclosure of max over I of |P|, relative width at most eps.

    Exact (zero-width) whenever the maximum is certified to occur at one of
    the exact evaluation points (endpoints, rational critical points).
    """
    eps = Fraction(eps)
    if eps <= 0:
        raise BadInputError("eps must be positive")
    if isinstance(P, RatPoly):
        W, L = P.clear_denominators()
        scale = Fraction(1, L)
    else:
        W, scale = P, Fraction(1)
    if W.is_zero:
        return Enclosure.exact(0)
    endpoint_max = max(_abs_frac(W, I.a), _abs_frac(W, I.b))
    if W.degree <= 1:
        return Enclosure.exact(endpoint_max * scale)
    S = squarefree_part(W.derivative())
    lip = _derivative_bound(W, I)
    eps_root = I.length / 16
    hints = None
    for _ in range(max_rounds):
        rs = find_roots(S, eps_root, initial=hints)
        hints = [r.as_complex() for r in rs.roots]
        lower = endpoint_max
        upper = endpoint_max
        for r in rs.roots:
            if abs(r.im) > r.radius:
                continue  # certified non-real: no real critical point in this disc
            if r.re + r.radius < I.a or r.re - r.radius > I.b:
                continue
            x = _clamp(r.re, I)
            v = _abs_frac(W, x)
            lower = max(lower, v)
            upper = max(upper, v + lip * r.radius)
        if upper == lower:
            return Enclosure.exact(lower * scale)
        if lower > 0 and (upper - lower) <= eps * lower:
            return outward_round(Enclosure(lower * scale, upper * scale))
        target = max(lower, upper / 4)
        if target > 0 and lip > 0:
            eps_root = min(eps_root / 16, eps * target / (4 * lip))
        else:
            eps_root /= 16
    raise PrecisionExhaustedError("sup_norm enclosure did not reach requested width")


def mahler_measure(P: IntPoly, eps=Fraction(1, 10**10), initial=None) -> Enclosure:
    """|lead| times the product of root moduli exceeding 1, within relative eps."""
    if P.degree < 1:
        raise BadInputError("Mahler measure needs degree >= 1")
    eps = Fraction(eps)
    eps_root = Fraction(1, 10**12)
    hints = initial
    for _ in range(8):
        rs = find_roots(P, eps_root, initial=hints)
        hints = [r.as_complex() for r in rs.roots]
        lo, hi = Fraction(1), Fraction(1)
        for r in rs.roots:
            m = r.modulus_enclosure()
            lo *= max(Fraction(1), m.lower)
            hi *= max(Fraction(1), m.upper)
        enc = Enclosure(lo, hi).scale(abs(P.lead))
        if enc.relative_width() <= eps:
            return outward_round(enc)
        eps_root /= 2**12
    raise PrecisionExhaustedError("Mahler measure enclosure did not converge")


@dataclass(frozen=True)
class GeneralizedMahler:
    """Mahler-type measure relative to a segment [c-2, c+2]."""

    value: Enclosure
    inside: int
    outside: int
    boundary: int


def _phi_modulus_at(re: Fraction, im: Fraction, c: Fraction, prec: int = 160) -> Enclosure:
    """|Phi(z)| at an exact rational point z, Phi the exterior conformal map.

    Phi(z) = (w + sqrt(w-2) sqrt(w+2)) / 2 with w = z - c; the split square
    root selects the branch with |Phi| > 1 off the segment and Phi(inf)=inf.
    """
    with gmpy2.context(precision=prec, allow_complex=True):
        w = mpc(mpfr(re.numerator) / mpfr(re.denominator),
                mpfr(im.numerator) / mpfr(im.denominator)) - mpfr(c.numerator) / mpfr(c.denominator)
        val = abs((w + gmpy2.sqrt(w - 2) * gmpy2.sqrt(w + 2)) / 2)
        v = _to_fraction(val)
    pad = Fraction(1, 2 ** (prec - 24))
    return Enclosure(max(Fraction(1), v * (1 - pad)), v * (1 + pad))


def generalized_mahler(P: IntPoly, c, eps=Fraction(1, 10**10), initial=None,
                       max_rounds: int = 8) -> GeneralizedMahler:
    """Generalized Mahler measure for the segment [c-2, c+2].

    Roots certified inside the closed segment contribute factor 1; roots
    certified outside contribute |Phi(root)| enclosed over their disc; roots
    whose disc straddles the segment at the final radius are conservative:
    they contribute [1, sup over the disc of |Phi|], and the widened output
    is reported through the ``boundary`` count.
    """
    if P.degree < 1:
        raise BadInputError("generalized Mahler measure needs degree >= 1")
    c = Fraction(c)
    seg = Interval(c - 2, c + 2)
    eps = Fraction(eps)
    eps_root = Fraction(1, 10**12)
    hints = initial
    for attempt in range(max_rounds):
        rs = find_roots(P, eps_root, initial=hints)
        hints = [r.as_complex() for r in rs.roots]
        kinds = rs.classify_segment(seg)
        lo, hi = Fraction(1), Fraction(1)
        counts = {"in": 0, "out": 0, "boundary": 0}
        for r, kind in zip(rs.roots, kinds):
            counts[kind] += 1
            if kind == "in":
                continue
            if kind == "out":
                phi = _phi_modulus_at(r.re, r.im, c)
                if r.radius > 0:
                    d1 = sqrt_enclosure((r.re - (c + 2)) ** 2 + r.im ** 2).lower - r.radius
                    d2 = sqrt_enclosure((r.re - (c - 2)) ** 2 + r.im ** 2).lower - r.radius
                    kappa = r.radius / sqrt_enclosure(d1 * d2).lower
                    swing = exp_enclosure(Enclosure(-kappa, kappa))
                    lo *= max(Fraction(1), phi.lower * swing.lower)
                    hi *= phi.upper * swing.upper
                else:
                    lo *= phi.lower
                    hi *= phi.upper
            else:
                # boundary: true factor is in [1, sup |Phi| over the disc]
                aw = sqrt_enclosure((r.re - c) ** 2 + r.im ** 2).upper + r.radius
                a1 = sqrt_enclosure((r.re - (c + 2)) ** 2 + r.im ** 2).upper + r.radius
                a2 = sqrt_enclosure((r.re - (c - 2)) ** 2 + r.im ** 2).upper + r.radius
                hi *= (aw + sqrt_enclosure(a1 * a2).upper) / 2
        enc = Enclosure(lo, hi).scale(abs(P.lead))
        done = enc.relative_width() <= eps and counts["boundary"] == 0
        if done or (attempt == max_rounds - 1 and counts["boundary"] > 0):
            if counts["boundary"] == 0 and not done:
                break
            value = enc if enc.is_exact else outward_round(enc)
            return GeneralizedMahler(value=value, inside=counts["in"],
                                     outside=counts["out"], boundary=counts["boundary"])
        eps_root /= 2**12
    raise PrecisionExhaustedError("generalized Mahler enclosure did not converge")


@dataclass(frozen=True)
class ZeroStats:
    """Root statistics of one polynomial.

    ``mean`` and ``powersum_means`` are exact rationals straight from the
    coefficients (so their propagated error is zero); ``log_energy`` is exact
    up to the logarithm's rounding; ``max_modulus`` carries the root radii.
    """

    degree: int
    mean: Fraction
    powersum_means: tuple[Fraction, ...]
    log_energy: Enclosure
    max_modulus: Enclosure


def zero_stats(P: IntPoly, m_max: int, eps=Fraction(1, 10**10)) -> ZeroStats:
    """Mean of roots, power-sum means, discrete log-energy, max root modulus.

    The log-energy uses the exact integer discriminant identity
    (1/n^2) log(|lead|^(2n-2) / |disc|); a vanishing discriminant is an error.
    Power sums from certified roots are cross-checked against the exact
    coefficient values as an internal consistency guard.
    """
    n = P.degree
    if n < 1:
        raise BadInputError("zero statistics need degree >= 1")
    s = power_sums_from_poly(P, max(m_max, 1))
    mean = s[0] / n
    disc = discriminant(P)
    if disc == 0:
        raise BadInputError("repeated roots: log-energy undefined", code="zero-discriminant")
    ratio = Fraction(abs(P.lead) ** (2 * n - 2), abs(disc))
    log_energy = log_enclosure(ratio).scale(Fraction(1, n * n))
    rs = find_roots(P, eps)
    _cross_check_power_sums(rs, s, n)
    return ZeroStats(degree=n, mean=mean,
                     powersum_means=tuple(v / n for v in s[:m_max]),
                     log_energy=log_energy,
                     max_modulus=outward_round(rs.max_modulus_enclosure()))


def _cross_check_power_sums(rs: RootSet, s_exact, n: int) -> None:
    for m in (1, min(2, len(s_exact))):
        num = sum(complex(r.as_complex()) ** m for r in rs.roots)
        budget = sum(m * (abs(r.as_complex()) + float(r.radius)) ** (m - 1) * float(r.radius)
                     for r in rs.roots) + 1e-9 * n
        if abs(num.real - float(s_exact[m - 1])) > budget + 1e-6 * max(1.0, abs(num.real)):
            raise IntChebError("numeric power sums disagree with exact coefficients",
                               code="cross-check-failed")


@dataclass(frozen=True)
class EquilibriumMeasure:
    """Arcsine distribution on [c-2, c+2]: density 1/(pi sqrt(4-(x-c)^2))."""

    c: Fraction

    def __init__(self, c):
        object.__setattr__(self, "c", Fraction(c))

    @property
    def support(self) -> Interval:
        return Interval(self.c - 2, self.c + 2)

    def moment(self, m: int) -> Fraction:
        return arcsine_moment(self, m)


def arcsine_moment(mu: EquilibriumMeasure, m: int) -> Fraction:
    """Exact m-th moment of the arcsine measure on [c-2, c+2].

    Substituting x = c + 2 cos(theta) turns the integral into cosine-power
    moments: the even powers contribute binomial(j, j/2), odd powers vanish,
    giving  sum over even j of binom(m, j) binom(j, j/2) c^(m-j).
    """
    if m < 0:
        raise BadInputError("moment order must be >= 0")
    c = mu.c
    total = Fraction(0)
    for j in range(0, m + 1, 2):
        total += comb(m, j) * comb(j, j // 2) * c ** (m - j)
    return total


def weighted_log_max(factors: list[IntPoly], weights: list[Fraction], I: Interval,
                     eps_abs=Fraction(1, 10**9), max_rounds: int = 12
                     ) -> tuple[Enclosure, Fraction]:
    """Enclosure of max over I of sum_i w_i log|Q_i(x)|, plus an argmax point.

    The maximum of the weighted log-potential is attained away from the roots
    of the factors (the potential drops to -inf there), at an endpoint or at a
    zero of the derivative  sum_i w_i Q_i' prod_{j != i} Q_j.  Exact rational
    evaluation of every |Q_i| at the candidate points plus a per-disc bound on
    the potential's derivative give the two-sided enclosure.
    """
    active = [(Q, w) for Q, w in zip(factors, weights) if w > 0]
    if not active:
        raise BadInputError("need at least one positive weight")
    for Q, _ in active:
        if Q.degree < 1:
            raise BadInputError("constant factors are not allowed")
    eps_abs = Fraction(eps_abs)

    # derivative of the potential, cleared of denominators
    G = RatPoly()
    for i, (Qi, wi) in enumerate(active):
        term = Qi.derivative().to_rat() * wi
        for j, (Qj, _) in enumerate(active):
            if j != i:
                term = term * Qj.to_rat()
        G = G + term
    Gz, _ = G.clear_denominators()
    S = squarefree_part(Gz) if Gz.degree >= 1 else Gz

    lip_Q = {id(Q): _derivative_bound(Q, I) for Q, _ in active}

    def phi_at(x: Fraction) -> Enclosure | None:
        total = Enclosure.exact(0)
        for Q, w in active:
            v = _abs_frac(Q, x)
            if v == 0:
                return None
            total = total + log_enclosure(v).scale(w)
        return total

    endpoints = []
    for x in (I.a, I.b):
        val = phi_at(x)
        if val is not None:
            endpoints.append((x, val))

    eps_root = I.length / 16
    hints = None
    for _ in range(max_rounds):
        cands: list[tuple[Fraction, Enclosure, Fraction]] = \
            [(x, v, Fraction(0)) for x, v in endpoints]
        ok = True
        if S.degree >= 1:
            rs = find_roots(S, eps_root, initial=hints)
            hints = [r.as_complex() for r in rs.roots]
            for r in rs.roots:
                if abs(r.im) > r.radius:
                    continue
                if r.re + r.radius < I.a or r.re - r.radius > I.b:
                    continue
                x = _clamp(r.re, I)
                val = phi_at(x)
                if val is None:
                    ok = False  # evaluation point hit a factor root: shrink discs
                    break
                lam = Fraction(0)
                for Q, w in active:
                    m_low = _abs_frac(Q, x) - lip_Q[id(Q)] * r.radius
                    if m_low <= 0:
                        ok = False
                        break
                    lam += w * lip_Q[id(Q)] / m_low
                if not ok:
                    break
                cands.append((x, val, lam * r.radius))
        if ok and cands:
            lower = max(v.lower for _, v, _ in cands)
            upper = max(v.upper + pad for _, v, pad in cands)
            if upper - lower <= eps_abs:
                arg = max(cands, key=lambda t: t[1].lower)[0]
                return Enclosure(lower, upper), arg
        eps_root /= 16
    raise PrecisionExhaustedError("weighted log potential enclosure did not converge")
