"""Certified complex root approximation.

The engine is a simultaneous Aberth-Ehrlich iteration in multiprecision
(gmpy2/MPC) with an a posteriori inclusion certificate: with Weierstrass
corrections W_k = P(z_k) / (lc * prod_{j!=k} (z_k - z_j)), the union of discs
D(z_k, n*|W_k|) contains all roots of P, and pairwise disjoint discs each
contain exactly one.  Working precision starts from a coefficient-size
heuristic and doubles on certificate failure up to a cap; failure at the cap
raises instead of returning silently inaccurate output.

All reported centers and radii are exact dyadic rationals; radii are inflated
by the floating-point error budget of the evaluation (see _eval_with_bound),
so the discs remain valid enclosures of the true roots.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import pi, cos, sin

import gmpy2
import numpy as np
from gmpy2 import mpc, mpfr

from .enclosure import Enclosure, sqrt_enclosure, _to_fraction
from .errors import BadInputError, PrecisionExhaustedError
from .poly import IntPoly, Interval, Poly, RatPoly

MAX_PRECISION = 4096
_START_PRECISION = 64


@dataclass(frozen=True)
class CertifiedRoot:
    """Disc (re + i*im, radius) certified to contain exactly one root."""

    re: Fraction
    im: Fraction
    radius: Fraction

    @property
    def is_exact(self) -> bool:
        return self.radius == 0

    def modulus_enclosure(self) -> Enclosure:
        m = sqrt_enclosure(self.re * self.re + self.im * self.im)
        return Enclosure(max(Fraction(0), m.lower - self.radius), m.upper + self.radius)

    def certainly_real(self) -> bool:
        # sufficient only for exact roots; RootSet.real_flags covers the rest
        return self.im == 0 and self.radius == 0

    def as_complex(self) -> complex:
        return complex(float(self.re), float(self.im))


@dataclass(frozen=True)
class RootSet:
    """All roots of a polynomial, one certified disc per root."""

    roots: tuple[CertifiedRoot, ...]
    degree: int
    precision: int

    def __post_init__(self):
        if len(self.roots) != self.degree:
            raise BadInputError("root count must equal degree")

    def max_radius(self) -> Fraction:
        return max((r.radius for r in self.roots), default=Fraction(0))

    def real_flags(self) -> tuple[bool, ...]:
        """Per root: certified real.

        A disc that meets the real axis holds a real root provided its mirror
        image meets no *other* disc: a non-real root would force its conjugate
        (also a root) into the same disc, contradicting the one-root
        certificate.
        """
        rs = self.roots
        flags = []
        for j, rj in enumerate(rs):
            if rj.is_exact:
                flags.append(rj.im == 0)
                continue
            if abs(rj.im) > rj.radius:
                flags.append(False)
                continue
            ok = True
            for k, rk in enumerate(rs):
                if k == j:
                    continue
                d2 = (rj.re - rk.re) ** 2 + (-rj.im - rk.im) ** 2
                if d2 <= (rj.radius + rk.radius) ** 2:
                    ok = False
                    break
            flags.append(ok)
        return tuple(flags)

    def classify_segment(self, I: Interval) -> tuple[str, ...]:
        """Per root: 'in' / 'out' / 'boundary' relative to the real segment I.

        'in' means the root is certified real with range inside the closed
        segment; 'out' means the disc is disjoint from the segment; anything
        unresolved at this radius is 'boundary'.
        """
        real = self.real_flags()
        out = []
        for flag, r in zip(real, self.roots):
            if flag and I.a <= r.re - r.radius and r.re + r.radius <= I.b:
                out.append("in")
                continue
            dx = max(I.a - r.re, r.re - I.b, Fraction(0))
            if dx * dx + r.im * r.im > r.radius * r.radius:
                out.append("out")
            else:
                out.append("boundary")
        return tuple(out)

    def classify_unit_disk(self) -> tuple[str, ...]:
        """Per root: 'in' (closed disk), 'out', or 'boundary'."""
        out = []
        for r in self.roots:
            m2 = r.re * r.re + r.im * r.im
            if r.radius <= 1 and m2 <= (1 - r.radius) ** 2:
                out.append("in")
            elif m2 > (1 + r.radius) ** 2:
                out.append("out")
            else:
                out.append("boundary")
        return tuple(out)

    def max_modulus_enclosure(self) -> Enclosure:
        enc = self.roots[0].modulus_enclosure()
        for r in self.roots[1:]:
            m = r.modulus_enclosure()
            enc = Enclosure(max(enc.lower, m.lower), max(enc.upper, m.upper))
        return enc


def _strip_zero_roots(coeffs: list[int]) -> tuple[list[int], int]:
    k = 0
    while k < len(coeffs) - 1 and coeffs[k] == 0:
        k += 1
    return coeffs[k:], k


def _circle_seeds(coeffs: list[int], n: int) -> list[complex]:
    # Fujiwara-style bound from coefficient bit lengths (robust to huge ints)
    an_bits = abs(coeffs[-1]).bit_length()
    R = 1.0
    for k in range(1, n + 1):
        c = coeffs[n - k]
        if c:
            est = 2.0 ** ((abs(c).bit_length() - an_bits) / k + 1.0)
            R = max(R, est)
    R = min(R, 1e40)
    return [R * complex(cos(2 * pi * (j + 0.35) / n), sin(2 * pi * (j + 0.35) / n))
            for j in range(n)]


def _numpy_seeds(coeffs: list[int], n: int) -> list[complex] | None:
    try:
        arr = np.array([float(c) for c in reversed(coeffs)], dtype=float)
    except OverflowError:
        return None
    if not np.all(np.isfinite(arr)) or arr[0] == 0.0:
        return None
    try:
        rts = np.roots(arr)
    except Exception:
        return None
    if len(rts) != n or not np.all(np.isfinite(rts)):
        return None
    return [complex(z) for z in sorted(rts, key=lambda z: (z.real, z.imag))]


def _dedupe_seeds(seeds: list[complex]) -> list[complex]:
    out = []
    seen = set()
    for j, z in enumerate(seeds):
        key = (round(z.real, 12), round(z.imag, 12))
        while key in seen:
            z = z + (1e-6 + 1e-6j) * (j + 1) * (1 + abs(z))
            key = (round(z.real, 12), round(z.imag, 12))
        seen.add(key)
        out.append(z)
    return out


def _eval_with_bound(cs, abs_cs, z, az):
    """Horner value of P at z plus a majorant of sum |c_i| |z|^i."""
    p = cs[-1]
    s = abs_cs[-1]
    for c, a in zip(reversed(cs[:-1]), reversed(abs_cs[:-1])):
        p = p * z + c
        s = s * az + a
    return p, s


def _aberth_round(cs, z, maxiter, prec):
    """Aberth-Ehrlich sweep until convergence or stagnation; updates z in place."""
    n = len(z)
    stop_tol = mpfr(2) ** (-prec + 12)
    prev_max = None
    stagnation = 0
    for _ in range(maxiter):
        maxrel = mpfr(0)
        for k in range(n):
            zk = z[k]
            p = cs[-1]
            dp = mpc(0)
            for c in reversed(cs[:-1]):
                dp = dp * zk + p
                p = p * zk + c
            if p == 0:
                continue
            acc = mpc(0)
            for j in range(n):
                if j != k:
                    dz = zk - z[j]
                    if dz == 0:
                        continue
                    acc += 1 / dz
            den = dp - p * acc
            if den == 0:
                continue
            delta = -p / den
            z[k] = zk + delta
            rel = abs(delta) / (1 + abs(z[k]))
            if rel > maxrel:
                maxrel = rel
        if maxrel < stop_tol:
            return True
        if prev_max is not None and maxrel > prev_max / 2:
            stagnation += 1
            if stagnation >= 4:
                return False
        else:
            stagnation = 0
        prev_max = maxrel
    return False


def _certify(coeffs, z, prec):
    """Weierstrass inclusion discs with the rounding budget folded in."""
    n = len(z)
    cs = [mpc(c) for c in coeffs]
    abs_cs = [mpfr(abs(c)) for c in coeffs]
    lead = abs_cs[-1]
    eps_mach = mpfr(2) ** (-prec)
    radii = []
    for k in range(n):
        zk = z[k]
        p, majorant = _eval_with_bound(cs, abs_cs, zk, abs(zk))
        err = 8 * (n + 2) * majorant * eps_mach
        q = lead
        for j in range(n):
            if j != k:
                q *= abs(zk - z[j])
        if q == 0:
            return None
        w = (abs(p) + err) / q
        radii.append(n * w * (1 + mpfr(2) ** (-40)))
    # pairwise disjoint?
    for i in range(n):
        for j in range(i + 1, n):
            if abs(z[i] - z[j]) * (1 - mpfr(2) ** (-40)) <= radii[i] + radii[j]:
                return None
    return radii


def find_roots(P: Poly, eps, initial=None, max_prec: int = MAX_PRECISION) -> RootSet:
    """All complex roots of P with certified error radii at most eps.

    ``initial`` optionally supplies starting approximations (any complex
    sequence of length deg P); good hints only shorten the iteration, the
    certificate is computed regardless.  Raises PrecisionExhaustedError if the
    discs cannot be certified within the precision cap (e.g. repeated roots).
    """
    eps = Fraction(eps)
    if eps <= 0:
        raise BadInputError("eps must be positive")
    if isinstance(P, RatPoly):
        Z, _ = P.clear_denominators()
    else:
        Z = P
    if Z.degree < 1:
        raise BadInputError("root finding needs degree >= 1")
    Z = Z.primitive()
    coeffs, n_zero = _strip_zero_roots(list(Z.coeffs))
    exact_roots = [CertifiedRoot(Fraction(0), Fraction(0), Fraction(0))] * n_zero
    n = len(coeffs) - 1
    if n == 0:
        return RootSet(tuple(exact_roots), Z.degree, _START_PRECISION)
    if n == 1:
        root = Fraction(-coeffs[0], coeffs[1])
        all_roots = exact_roots + [CertifiedRoot(root, Fraction(0), Fraction(0))]
        all_roots.sort(key=lambda r: (r.re, r.im))
        return RootSet(tuple(all_roots), Z.degree, _START_PRECISION)

    bits = max(abs(c).bit_length() for c in coeffs)
    prec = max(_START_PRECISION, bits + 3 * n // 2 + 32)
    prec = min(prec, max_prec)

    if initial is not None:
        seeds = [complex(s) for s in initial]
        if len(seeds) != Z.degree:
            raise BadInputError("initial approximations must match the degree")
        # drop hints for the stripped zero roots (closest to origin)
        seeds = sorted(seeds, key=abs, reverse=True)[:n]
    else:
        seeds = _numpy_seeds(coeffs, n) or _circle_seeds(coeffs, n)
    seeds = _dedupe_seeds(seeds)

    z_carry = seeds
    while True:
        with gmpy2.context(precision=prec, allow_complex=True):
            cs = [mpc(c) for c in coeffs]
            z = [mpc(s) for s in z_carry]
            maxiter = max(120, 2 * n)
            _aberth_round(cs, z, maxiter, prec)
            radii = _certify(coeffs, z, prec)
            if radii is not None and max(radii) <= mpfr(eps.numerator) / mpfr(eps.denominator):
                certified = []
                for zz, rr in zip(z, radii):
                    certified.append(CertifiedRoot(
                        _to_fraction(zz.real), _to_fraction(zz.imag), _to_fraction(rr)))
                all_roots = exact_roots + certified
                all_roots.sort(key=lambda r: (r.re, r.im))
                return RootSet(tuple(all_roots), Z.degree, prec)
            z_carry = z  # gmpy2 values persist outside the context; reuse as seeds
        if prec >= max_prec:
            raise PrecisionExhaustedError(
                f"could not certify roots to eps={float(eps):g} within {max_prec} bits "
                "(repeated or pathologically close roots?)")
        prec = min(2 * prec, max_prec)
