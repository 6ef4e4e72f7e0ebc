"""Interchange formats shared by the library and the CLI.

Polynomials travel as JSON arrays of decimal integer strings, low-to-high
(rationals as "p/q" strings).  Enclosures serialize as {value, lower, upper}
decimal strings.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction

from .enclosure import Enclosure, decimal_str
from .errors import BadInputError, BadIntervalError
from .poly import Interval, IntPoly, Poly, RatPoly


def poly_to_obj(P: Poly) -> list[str]:
    return [str(c) for c in P.coeffs]


def poly_from_obj(obj) -> Poly:
    if not isinstance(obj, (list, tuple)):
        raise BadInputError("polynomial must be a JSON array of coefficient strings",
                            code="bad-poly-json")
    vals = []
    for c in obj:
        try:
            vals.append(Fraction(str(c)))
        except (ValueError, ZeroDivisionError) as exc:
            raise BadInputError(f"bad coefficient {c!r}", code="bad-poly-json") from exc
    if all(v.denominator == 1 for v in vals):
        return IntPoly([int(v) for v in vals])
    return RatPoly(vals)


def poly_from_json(text: str) -> Poly:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise BadInputError(f"malformed polynomial JSON: {exc}", code="bad-poly-json") from exc
    return poly_from_obj(obj)


def parse_rational(tok: str) -> Fraction:
    try:
        return Fraction(tok.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise BadInputError(f"bad rational token {tok!r}", code="bad-rational") from exc


def parse_interval(text: str) -> Interval:
    parts = text.split(",")
    if len(parts) != 2:
        raise BadIntervalError(f"interval must be 'a,b', got {text!r}")
    a, b = parse_rational(parts[0]), parse_rational(parts[1])
    if not a < b:
        raise BadIntervalError(f"need a < b, got [{a}, {b}]")
    return Interval(a, b)


def enclosure_to_obj(e: Enclosure) -> dict:
    return {"value": decimal_str(e.midpoint),
            "lower": decimal_str(e.lower),
            "upper": decimal_str(e.upper)}


def fraction_to_obj(f: Fraction) -> str:
    return str(f)


def dumps_deterministic(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def _flatten(prefix: str, value, out: dict) -> None:
    if isinstance(value, dict):
        for k in sorted(value):
            _flatten(f"{prefix}.{k}" if prefix else str(k), value[k], out)
    elif isinstance(value, (list, tuple)):
        out[prefix] = json.dumps(value, sort_keys=True)
    else:
        out[prefix] = value


def rows_to_csv(rows: list[dict]) -> str:
    """Flatten a list of JSON-ready row dicts into deterministic CSV."""
    flat_rows = []
    keys: list[str] = []
    for row in rows:
        flat: dict = {}
        _flatten("", row, flat)
        flat_rows.append(flat)
        for k in flat:
            if k not in keys:
                keys.append(k)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=sorted(keys), lineterminator="\n")
    writer.writeheader()
    for flat in flat_rows:
        writer.writerow(flat)
    return buf.getvalue()
