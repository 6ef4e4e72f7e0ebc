"""Exact resultants, discriminants, gcds and squarefree parts over Z[x].

The resultant follows the root-product normalization

    Res(P, Q) = lc(P)^deg(Q) * prod_{P(z)=0} Q(z),

which coincides with the determinant of the Sylvester matrix in its standard
layout.  The production route is a fraction-free subresultant remainder
sequence; ``sylvester_resultant`` evaluates the determinant directly (Bareiss
elimination) and serves as the independent cross-check for small degrees.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import BadInputError, ZeroPolynomialError
from .poly import IntPoly, Poly, RatPoly, as_rat


def _pseudo_rem(A: list[int], B: list[int]) -> list[int]:
    """Remainder of lc(B)^(degA-degB+1) * A modulo B, all over Z."""
    dA, dB = len(A) - 1, len(B) - 1
    lB = B[-1]
    R = A[:]
    steps = dA - dB + 1
    for k in range(steps):
        dR = len(R) - 1
        if dR < dB:
            # degree collapsed early; keep the promised scaling
            R = [c * lB ** (steps - k) for c in R]
            break
        top = R[-1]
        R = [c * lB for c in R]
        off = dR - dB
        for i in range(dB + 1):
            R[off + i] -= top * B[i]
        while R and R[-1] == 0:
            R.pop()
    return R


def resultant(P: IntPoly, Q: IntPoly) -> int:
    """Exact integer resultant via a fraction-free subresultant PRS.

    Zero exactly when P and Q share a root.
    """
    if P.is_zero or Q.is_zero:
        raise ZeroPolynomialError("resultant of the zero polynomial")
    A = list(P.coeffs)
    B = list(Q.coeffs)
    dA, dB = len(A) - 1, len(B) - 1
    if dA == 0:
        return A[0] ** dB
    if dB == 0:
        return B[0] ** dA
    s = 1
    if dA < dB:
        A, B = B, A
        if dA % 2 == 1 and dB % 2 == 1:
            s = -1
        dA, dB = dB, dA
    ca = _int_content(A)
    cb = _int_content(B)
    A = [c // ca for c in A]
    B = [c // cb for c in B]
    t = ca ** dB * cb ** dA
    g = 1
    h = 1
    while True:
        dA, dB = len(A) - 1, len(B) - 1
        d = dA - dB
        if dA % 2 == 1 and dB % 2 == 1:
            s = -s
        R = _pseudo_rem(A, B)
        A = B
        denom = g * h ** d
        B = [c // denom for c in R]
        g = A[-1]
        if d == 1:
            h = g
        elif d > 1:
            h = g ** d // h ** (d - 1)
        if not B:
            return 0
        if len(B) == 1:
            break
    dA = len(A) - 1
    if dA >= 1:
        val = B[-1] ** dA // h ** (dA - 1)
    else:
        val = h
    return s * t * val


def _int_content(cs: list[int]) -> int:
    g = 0
    for c in cs:
        g = gcd(g, c)
    return g if g else 1


def sylvester_matrix(P: IntPoly, Q: IntPoly) -> list[list[int]]:
    """Sylvester matrix of (P, Q): deg Q rows of P, then deg P rows of Q."""
    if P.is_zero or Q.is_zero:
        raise ZeroPolynomialError("Sylvester matrix of the zero polynomial")
    dP, dQ = P.degree, Q.degree
    n = dP + dQ
    M = [[0] * n for _ in range(n)]
    Pr = list(reversed(P.coeffs))
    Qr = list(reversed(Q.coeffs))
    for i in range(dQ):
        for j, c in enumerate(Pr):
            M[i][i + j] = c
    for i in range(dP):
        for j, c in enumerate(Qr):
            M[dQ + i][i + j] = c
    return M


def bareiss_determinant(M: list[list[int]]) -> int:
    """Exact determinant of an integer matrix (fraction-free elimination)."""
    M = [row[:] for row in M]
    n = len(M)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = M[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * pivot - M[i][k] * M[k][j]) // prev
            M[i][k] = 0
        prev = pivot
    return sign * M[n - 1][n - 1]


def sylvester_resultant(P: IntPoly, Q: IntPoly) -> int:
    """Resultant as a Sylvester determinant; the independent slow route."""
    if P.is_zero or Q.is_zero:
        raise ZeroPolynomialError("resultant of the zero polynomial")
    if P.degree == 0:
        return P.coeffs[0] ** Q.degree
    if Q.degree == 0:
        return Q.coeffs[0] ** P.degree
    return bareiss_determinant(sylvester_matrix(P, Q))


def discriminant(P: IntPoly) -> int:
    """Exact integer discriminant lc^(2n-2) * prod_{j<k} (z_j - z_k)^2.

    Zero exactly when P has a repeated root.
    """
    n = P.degree
    if n < 1:
        raise BadInputError("discriminant needs degree >= 1")
    if n == 1:
        return 1
    r = resultant(P, P.derivative())
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    q, rem = divmod(sign * r, P.lead)
    if rem != 0:
        raise AssertionError("discriminant division failed; resultant convention broken")
    return q


def rat_divmod(A: RatPoly, B: RatPoly) -> tuple[RatPoly, RatPoly]:
    """Quotient and remainder over Q: A = q*B + r with deg r < deg B."""
    if B.is_zero:
        raise ZeroPolynomialError("division by zero polynomial")
    q = [Fraction(0)] * max(0, A.degree - B.degree + 1)
    r = list(A.coeffs)
    dB = B.degree
    lB = B.lead
    while len(r) - 1 >= dB and any(r):
        while r and r[-1] == 0:
            r.pop()
        if len(r) - 1 < dB:
            break
        k = len(r) - 1 - dB
        c = r[-1] / lB
        q[k] = c
        for i in range(dB + 1):
            r[k + i] -= c * B.coeffs[i]
        r.pop()
    return RatPoly(q), RatPoly(r)


def poly_gcd(P: Poly, Q: Poly) -> IntPoly:
    """Primitive integer gcd of P and Q over Q[x] (Euclid with fractions)."""
    A, B = as_rat(P), as_rat(Q)
    if A.is_zero and B.is_zero:
        return IntPoly()
    while not B.is_zero:
        _, r = rat_divmod(A, B)
        A, B = B, r
    Z, _ = A.clear_denominators()
    return Z.primitive()


def exact_div(A: IntPoly, B: IntPoly) -> IntPoly:
    """Exact quotient A / B in Z[x]; raises if B does not divide A."""
    q, r = rat_divmod(A.to_rat(), B.to_rat())
    if not r.is_zero:
        raise BadInputError("polynomial division is not exact")
    Z, L = q.clear_denominators()
    if L != 1:
        raise BadInputError("quotient is not integral")
    return Z


def squarefree_part(P: IntPoly) -> IntPoly:
    """P divided by gcd(P, P'): same roots, all simple."""
    if P.degree < 1:
        return P.primitive()
    g = poly_gcd(P, P.derivative())
    if g.degree == 0:
        return P.primitive()
    return exact_div(P, g).primitive()
