"""Upper bounds for the integer Chebyshev constant and leading-coefficient
lower bounds.

The three bound producers are: the classical square-root upper bound (capped
at 1 on long segments), exhaustive search over bounded-height integer
polynomials, and weighted factor products optimized by a discretized linear
program with exchange steps.  Each result is a ``BoundReport`` whose
certificate re-verifies the claimed value.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from itertools import product as iter_product

import numpy as np
from scipy.optimize import linprog

from .analysis import sup_norm, weighted_log_max
from .enclosure import (Enclosure, decimal_str, exp_enclosure, inv_nth_root_enclosure,
                        nth_root_enclosure, outward_round, sqrt_enclosure)
from .errors import BadInputError, PreconditionError, PrecisionExhaustedError
from .poly import Interval, IntPoly, Poly
from .serialize import poly_to_obj

_TIE_EPS = Fraction(1, 2**55)


@dataclass(frozen=True)
class BoundReport:
    """A named bound with the certificate that produced it."""

    kind: str
    value: Enclosure
    certificate: dict
    params: dict = field(default_factory=dict)

    def as_obj(self) -> dict:
        return {
            "kind": self.kind,
            "value": {
                "value": decimal_str(self.value.midpoint),
                "lower": decimal_str(self.value.lower),
                "upper": decimal_str(self.value.upper),
            },
            "certificate": self.certificate,
            "params": self.params,
        }


def hilbert_upper_bound(I: Interval) -> BoundReport:
    """Square-root upper bound sqrt((b-a)/4), capped at 1 on segments of
    length >= 4 where the constant polynomial 1 is already optimal."""
    ratio = I.length / 4
    if ratio >= 1:
        value = Enclosure.exact(1)
        cert = {"cap": "interval length >= 4, constant polynomial 1 is extremal"}
    else:
        value = sqrt_enclosure(ratio)
        cert = {"formula": "sqrt((b-a)/4)"}
    return BoundReport(kind="hilbert", value=value, certificate=cert,
                       params={"interval": [str(I.a), str(I.b)]})


def trigub_interval_report(m: int) -> BoundReport:
    """Bounds on the family [1/(m+4), 1/m]: lower 1/(m+2), upper sqrt(|I|/4).

    Their ratio sits in (0, 1] and climbs to 1 along m, which is what makes
    the square-root bound asymptotically sharp on these intervals.
    """
    if m < 1:
        raise BadInputError("need m >= 1")
    I = Interval(Fraction(1, m + 4), Fraction(1, m))
    lower = Fraction(1, m + 2)
    upper = sqrt_enclosure(I.length / 4)
    ratio = Enclosure(lower / upper.upper, lower / upper.lower)
    return BoundReport(
        kind="trigub", value=ratio,
        certificate={
            "interval": [str(I.a), str(I.b)],
            "lower_bound": str(lower),
            "upper_bound": {"lower": decimal_str(upper.lower), "upper": decimal_str(upper.upper)},
        },
        params={"m": m})


# ---------------------------------------------------------------------------
# exhaustive search


@dataclass(frozen=True)
class ExhaustiveRow:
    degree: int
    best_norm: Enclosure
    winner: tuple[int, ...]
    root_value: Enclosure  # min over d <= degree of (norm at degree d)^(1/d)


@dataclass(frozen=True)
class ExhaustiveTable:
    interval: Interval
    n_max: int
    height: int
    rows: tuple[ExhaustiveRow, ...]
    truncated: bool
    candidates: int

    def report(self) -> BoundReport:
        last = self.rows[-1]
        return BoundReport(
            kind="upper_tZ", value=last.root_value,
            certificate={
                "method": "exhaustive",
                "winner": poly_to_obj(IntPoly(last.winner)),
                "winner_norm": {"lower": decimal_str(last.best_norm.lower),
                                "upper": decimal_str(last.best_norm.upper)},
                "truncated": self.truncated,
            },
            params={"interval": [str(self.interval.a), str(self.interval.b)],
                    "n_max": self.n_max, "height": self.height})


def _sample_points(I: Interval, height: int) -> list[Fraction]:
    ts = [Fraction(1, 2), Fraction(1, 4), Fraction(3, 4)]
    for k in range(max(0, height // 2 - 1)):
        ts.append(Fraction(2 * k + 1, 2 * (height + 2)))
    xs = [I.a, I.b] + [I.a + I.length * t for t in ts]
    return sorted(set(xs))


def _candidate_blocks(degree: int, height: int, block: int = 200_000):
    """Deterministic enumeration of exact-degree coefficient vectors.

    Leading coefficient runs over 1..height only: P and -P share a norm, so
    each +/- pair is represented by its positive-leading member.
    """
    if degree == 0:
        yield [(c,) for c in range(1, height + 1)]
        return
    span = 2 * height + 1
    rest = degree  # number of free low coefficients
    total = span ** rest
    for lead in range(1, height + 1):
        for start in range(0, total, block):
            stop = min(start + block, total)
            idx = np.arange(start, stop, dtype=np.int64)
            cols = []
            for _ in range(rest):
                cols.append(idx % span - height)
                idx //= span
            # cols[0] is the constant term; append the leading coefficient
            arr = np.stack(cols + [np.full(stop - start, lead, dtype=np.int64)], axis=1)
            yield arr


def _norm_of_candidate(coeffs, I: Interval, eps) -> Enclosure:
    return sup_norm(IntPoly(list(coeffs)), I, eps=eps)


def _compare_enclosures(a: Enclosure, b: Enclosure) -> int | None:
    """-1/0/+1 if certified; None when overlapping and not identical."""
    if a.upper < b.lower:
        return -1
    if b.upper < a.lower:
        return 1
    if a.is_exact and b.is_exact:
        return 0 if a.lower == b.lower else (-1 if a.lower < b.lower else 1)
    return None


def exhaustive_integer_chebyshev(I: Interval, n_max: int, height: int,
                                 budget: int = 50_000_000, eps=Fraction(1, 2**50),
                                 threads: int = 1) -> ExhaustiveTable:
    """Per-degree minimal sup-norms over nonzero integer polynomials of
    degree <= n and coefficient height <= ``height``.

    Rows are cumulative (the degree-n row minimizes over all degrees <= n).
    ``root_value`` is the best n-th root of a norm over candidates of degree
    <= n, i.e. min over d of (minimal exact-degree-d norm)^(1/d); this is the
    finite-degree quantity that decreases toward the integer Chebyshev
    constant for nested search spaces.  Ties between candidates are broken by
    the lexicographically smallest coefficient vector (low-to-high) among
    positive-leading representatives; norms that still overlap after
    refinement to relative width 2^-55 are treated as equal.
    """
    if n_max < 0 or height < 1:
        raise BadInputError("need n_max >= 0 and height >= 1")
    xs = _sample_points(I, height)
    xs_f = np.array([float(x) for x in xs])
    best_norm: Enclosure | None = None
    best_key: tuple[int, ...] | None = None
    best_root: Enclosure | None = None
    rows: list[ExhaustiveRow] = []
    examined = 0
    truncated = False
    pool = ProcessPoolExecutor(max_workers=threads) if threads > 1 else None
    try:
        for d in range(0, n_max + 1):
            space = height * (2 * height + 1) ** d if d else height
            if examined + space > budget:
                truncated = True
                break
            examined += space
            survivors = _degree_survivors(d, height, xs, xs_f, best_norm)
            if pool is not None and len(survivors) > 1:
                norms = list(pool.map(_norm_worker,
                                      [(tuple(c), I.a, I.b, eps) for c in survivors],
                                      chunksize=max(1, len(survivors) // (8 * threads))))
            else:
                norms = [_norm_of_candidate(c, I, eps) for c in survivors]
            for cand, enc in sorted(zip(survivors, norms), key=lambda t: t[0]):
                if best_norm is None:
                    best_norm, best_key = enc, tuple(cand)
                    continue
                enc_r, best_r = enc, best_norm
                cmp = _compare_enclosures(enc_r, best_r)
                for _ in range(3):
                    if cmp is not None:
                        break
                    enc_r = _refine(enc_r, cand, I)
                    best_r = _refine(best_r, best_key, I)
                    cmp = _compare_enclosures(enc_r, best_r)
                if cmp is None:
                    cmp = 0 if _close(enc_r, best_r) else (-1 if enc_r.midpoint < best_r.midpoint else 1)
                if cmp < 0 or (cmp == 0 and _pad_key(cand, n_max) < _pad_key(best_key, n_max)):
                    best_norm, best_key = enc_r, tuple(cand)
                else:
                    best_norm = best_r
            deg_root = nth_root_enclosure(best_norm, max(len(best_key) - 1, 1))
            best_root = deg_root if best_root is None else \
                Enclosure(min(best_root.lower, deg_root.lower), min(best_root.upper, deg_root.upper))
            rows.append(ExhaustiveRow(degree=d, best_norm=best_norm,
                                      winner=best_key, root_value=best_root))
    finally:
        if pool is not None:
            pool.shutdown()
    if not rows:
        raise PreconditionError("budget too small for degree 0", code="budget-too-small")
    return ExhaustiveTable(interval=I, n_max=n_max, height=height,
                           rows=tuple(rows), truncated=truncated, candidates=examined)


def _degree_survivors(d, height, xs, xs_f, best_norm):
    thr_f = float("inf") if best_norm is None else float(best_norm.upper) * (1 + 1e-9) + 1e-12
    survivors = []
    for block in _candidate_blocks(d, height):
        arr = np.asarray(block, dtype=np.int64)
        vals = np.abs(arr.astype(float) @ np.vander(xs_f, d + 1, increasing=True).T)
        keep = vals.max(axis=1) <= thr_f + 1e-9
        for cand in arr[keep]:
            cand_t = [int(v) for v in cand]
            if best_norm is not None:
                P = IntPoly(cand_t)
                if any(abs(Fraction(P(x))) > best_norm.upper for x in xs):
                    continue
            survivors.append(cand_t)
    return survivors


def _norm_worker(args):
    coeffs, a, b, eps = args
    return sup_norm(IntPoly(list(coeffs)), Interval(a, b), eps=eps)


def _refine(enc: Enclosure, coeffs, I: Interval) -> Enclosure:
    if enc.is_exact:
        return enc
    try:
        return sup_norm(IntPoly(list(coeffs)), I, eps=Fraction(1, 2**80))
    except PrecisionExhaustedError:
        return enc


def _close(a: Enclosure, b: Enclosure) -> bool:
    scale = max(abs(a.midpoint), abs(b.midpoint), Fraction(1, 10**30))
    return abs(a.midpoint - b.midpoint) <= _TIE_EPS * scale


def _pad_key(coeffs, n_max) -> tuple:
    return tuple(coeffs) + (0,) * (n_max + 1 - len(coeffs))


# ---------------------------------------------------------------------------
# weighted factor products


@dataclass(frozen=True)
class FactorBasis:
    """Integer polynomial factors for weighted product bounds."""

    factors: tuple[IntPoly, ...]
    roots_in_interval: tuple[bool, ...] | None = None

    def __post_init__(self):
        if not self.factors:
            raise PreconditionError("factor basis is empty", code="empty-basis")
        prims = []
        for Q in self.factors:
            if Q.degree < 1:
                raise PreconditionError("constant factors are not allowed",
                                        code="constant-factor")
            if Q.content() != 1:
                raise PreconditionError("factors must have content 1",
                                        code="imprimitive-factor")
            prims.append(Q.primitive().coeffs)
        if len(set(prims)) != len(prims):
            raise PreconditionError("factors must be pairwise non-associate",
                                    code="associate-factors")

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(Q.degree for Q in self.factors)


def annotate_basis(B: FactorBasis, I: Interval, eps=Fraction(1, 10**10)) -> FactorBasis:
    """Recreate the basis with per-factor all-roots-in-I flags filled in."""
    from .roots import find_roots
    flags = []
    for Q in B.factors:
        rs = find_roots(Q, eps)
        flags.append(all(k == "in" for k in rs.classify_segment(I)))
    return FactorBasis(factors=B.factors, roots_in_interval=tuple(flags))


def default_basis_01() -> FactorBasis:
    """The factor basis for [0, 1] shipped with the package."""
    with resources.files("intcheb.data").joinpath("basis_01.json").open() as fh:
        data = json.load(fh)
    return FactorBasis(factors=tuple(IntPoly([int(c) for c in entry])
                                     for entry in data["factors"]))


@dataclass(frozen=True)
class Weights:
    """Nonnegative exponent densities, one per factor; sum s_i deg_i = 1."""

    s: tuple[Fraction, ...]
    degrees: tuple[int, ...]

    def __post_init__(self):
        if any(w < 0 for w in self.s):
            raise BadInputError("weights must be nonnegative")
        if sum(w * m for w, m in zip(self.s, self.degrees)) != 1:
            raise BadInputError("weights must satisfy sum s_i m_i = 1")


def factor_exponent_optimize(B: FactorBasis, I: Interval,
                             grid_eps=Fraction(1, 2048), lp_eps=Fraction(1, 10**6),
                             max_exchange: int = 50,
                             realization_degree: int = 10**6
                             ) -> tuple[Weights, BoundReport]:
    """Minimize the max over I of sum_i s_i log|Q_i(x)| over admissible weights.

    Discretized linear programming on a Chebyshev-node grid, refined by up to
    ``max_exchange`` exchange rounds that insert the certified maximizer of
    the current weighted potential.  Returns the weights and exp(max) as an
    upper bound for the integer Chebyshev constant of I, together with an
    integer-exponent product realization whose certified norm root stays
    within lp_eps of the claimed value.
    """
    lp_eps = Fraction(lp_eps)
    K = len(B.factors)
    degrees = B.degrees
    n_nodes = max(64, int(round(1 / float(grid_eps))))
    mid, half = float(I.midpoint), float(I.length) / 2
    grid = [mid + half * np.cos(np.pi * j / (n_nodes - 1)) for j in range(n_nodes)]
    rounds = 0
    weights = None
    max_enc = None
    for rounds in range(1, max_exchange + 1):
        rows, rhs = [], []
        for x in grid:
            logs = []
            bad = False
            for Q in B.factors:
                v = abs(Q(float(x)))
                if v == 0.0 or not np.isfinite(v):
                    bad = True  # exact root node: the -inf constraint is vacuous
                    break
                logs.append(np.log(v))
            if bad:
                continue
            rows.append(logs + [-1.0])
            rhs.append(0.0)
        res = linprog(c=[0.0] * K + [1.0], A_ub=rows, b_ub=rhs,
                      A_eq=[list(map(float, degrees)) + [0.0]], b_eq=[1.0],
                      bounds=[(0, None)] * K + [(None, None)], method="highs")
        if not res.success:
            raise PreconditionError(f"degenerate factor LP: {res.message}",
                                    code="lp-degenerate")
        u = res.x[-1]
        s = _rationalize_weights(res.x[:K], degrees)
        weights = Weights(s=tuple(s), degrees=degrees)
        max_enc, argmax = weighted_log_max(list(B.factors), list(s), I,
                                           eps_abs=lp_eps / 8)
        if float(max_enc.upper) <= u + float(lp_eps):
            break
        fx = float(argmax)
        if any(abs(fx - g) < 1e-13 for g in grid):
            break
        grid.append(fx)
    value = exp_enclosure(max_enc)
    exponents, real_deg, realized = _integer_realization(
        B, weights, I, value, lp_eps, realization_degree)
    report = BoundReport(
        kind="upper_tZ", value=value,
        certificate={
            "method": "factor-exponents",
            "weights": [str(w) for w in weights.s],
            "factors": [poly_to_obj(Q) for Q in B.factors],
            "exponents": exponents,
            "realization_degree": real_deg,
            "realized_norm_root": {"lower": decimal_str(realized.lower),
                                   "upper": decimal_str(realized.upper)},
            "exchange_rounds": rounds,
            "grid_nodes": len(grid),
        },
        params={"interval": [str(I.a), str(I.b)], "grid_eps": str(Fraction(grid_eps)),
                "lp_eps": str(lp_eps)})
    return weights, report


def _rationalize_weights(x, degrees) -> list[Fraction]:
    s = [max(Fraction(0), Fraction(float(v)).limit_denominator(10**9)) for v in x]
    total = sum(w * m for w, m in zip(s, degrees))
    if total == 0:
        raise PreconditionError("LP produced all-zero weights", code="lp-degenerate")
    return [w / total for w in s]


def _integer_realization(B, weights, I, value, lp_eps, m0):
    m = m0
    for _ in range(4):
        exps = [int(round(w * m)) for w in weights.s]
        if all(e == 0 for e in exps):
            m *= 8
            continue
        mprime = sum(e * d for e, d in zip(exps, B.degrees))
        enc, _ = weighted_log_max(list(B.factors),
                                  [Fraction(e) for e in exps], I,
                                  eps_abs=Fraction(lp_eps) * mprime / 8)
        realized = exp_enclosure(enc.scale(Fraction(1, mprime)))
        if realized.upper <= value.upper + lp_eps:
            return exps, mprime, realized
        m *= 8
    return exps, mprime, realized


def leading_coeff_lower_bound(R: IntPoly, I: Interval, eps=Fraction(1, 10**12)) -> BoundReport:
    """sup-norm based lower bound ||R||^(-1/deg R) for leading-coefficient
    growth of integer polynomial sequences with zeros in I avoiding R's zeros.

    The finite-degree engine is the integrality of the resultant:
    |lead(P)|^m ||R||^n >= |Res(P, R)| >= 1 whenever P and R are coprime and
    P's zeros stay in I.  A norm at least 1 yields a vacuous bound (flagged).
    The generic 2/sqrt(b-a) value is reported alongside.
    """
    if R.is_zero:
        raise BadInputError("R must be nonzero")
    generic = sqrt_enclosure(I.length)
    generic_value = Enclosure(2 / generic.upper, 2 / generic.lower)
    if R.degree == 0:
        return BoundReport(kind="lower_L", value=Enclosure.exact(1),
                           certificate={"vacuous": True, "norm": "1",
                                        "generic_theorem_value": decimal_str(generic_value.midpoint)},
                           params={"interval": [str(I.a), str(I.b)]})
    norm = sup_norm(R, I, eps=eps)
    if norm.lower <= 0:
        raise PreconditionError("R vanishes on I within tolerance", code="norm-zero")
    value = inv_nth_root_enclosure(norm, R.degree)
    vacuous = not value.certainly_gt(1)
    return BoundReport(
        kind="lower_L", value=value,
        certificate={
            "vacuous": vacuous,
            "norm": {"lower": decimal_str(norm.lower), "upper": decimal_str(norm.upper)},
            "generic_theorem_value": {"lower": decimal_str(generic_value.lower),
                                      "upper": decimal_str(generic_value.upper)},
            "polynomial": poly_to_obj(R),
        },
        params={"interval": [str(I.a), str(I.b)], "eps": str(Fraction(eps))})
