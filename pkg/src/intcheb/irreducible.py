"""Exact irreducibility over Q for small degrees.

Decision procedure: exhaustive factor enumeration in the classical
evaluation-interpolation style.  A degree-d integer factor g of P satisfies
g(x_i) | P(x_i) at any d+1 integer points, so enumerating all divisor tuples
and interpolating yields every candidate factor; each candidate is checked by
exact division.  The search is exact -- never probabilistic -- and refuses to
answer (rather than guessing) above the degree cap or past the combination
budget.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import count, product

from .errors import BadInputError, UndecidedError
from .poly import IntPoly
from .resultants import rat_divmod

DEGREE_CAP = 8
COMBINATION_BUDGET = 2_000_000


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _interpolate(points: list[tuple[int, int]]) -> list[Fraction] | None:
    """Newton-form interpolation; returns low-to-high coefficients."""
    xs = [Fraction(x) for x, _ in points]
    ys = [Fraction(y) for _, y in points]
    n = len(points)
    coef = ys[:]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    # expand newton form to monomial basis
    poly = [Fraction(0)] * n
    poly[0] = coef[n - 1]
    deg = 0
    for j in range(n - 2, -1, -1):
        # poly := poly * (x - xs[j]) + coef[j]
        for i in range(deg + 1, 0, -1):
            poly[i] = poly[i - 1] - xs[j] * poly[i]
        poly[0] = -xs[j] * poly[0] + coef[j]
        deg += 1
    return poly


def irreducible_over_Q(P: IntPoly) -> bool:
    """True iff P has no factorization into lower-degree integer polynomials.

    Constants are not irreducible; degree-1 polynomials always are.  Raises
    UndecidedError (never a wrong answer) above degree 8 or if the exact
    search would exceed its combination budget.
    """
    n = P.degree
    if n < 0 or P.is_zero:
        raise BadInputError("irreducibility of the zero polynomial is undefined")
    if n == 0:
        return False
    if n == 1:
        return True
    if n > DEGREE_CAP:
        raise UndecidedError(f"degree {n} above the exact-search cap {DEGREE_CAP}")
    W = P.primitive()
    if W.coeff(0) == 0:
        return False  # divisible by x
    for d in range(1, n // 2 + 1):
        # collect d+1 integer points with W(x) != 0
        pts: list[tuple[int, int]] = []
        for x in _small_integers():
            v = W(x)
            if v == 0:
                return False  # integer root, hence a linear factor
            pts.append((x, v))
            if len(pts) == d + 1:
                break
        div_sets = [_divisors(v) for _, v in pts]
        total = 1
        for i, ds in enumerate(div_sets):
            total *= len(ds) * (1 if i == 0 else 2)  # signs free except the first
            if total > COMBINATION_BUDGET:
                raise UndecidedError("factor-candidate enumeration exceeds budget")
        sign_choices = [(1,)] + [(1, -1)] * d
        for mags in product(*div_sets):
            for signs in product(*sign_choices):
                vals = [s * m for s, m in zip(signs, mags)]
                g = _interpolate(list(zip((x for x, _ in pts), vals)))
                if any(c.denominator != 1 for c in g):
                    continue
                G = IntPoly([int(c) for c in g])
                if G.degree != d:
                    continue
                q, r = rat_divmod(W.to_rat(), G.to_rat())
                if r.is_zero and all(c.denominator == 1 for c in q.coeffs):
                    return False
    return True


def _small_integers():
    yield 0
    for k in count(1):
        yield k
        yield -k
