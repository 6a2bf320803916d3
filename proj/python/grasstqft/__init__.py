"""Exact Verlinde numbers, Quot scheme integrals and the Grassmannian TQFT."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Sequence

from . import _core
from ._core import CobordismTypeError, GrassError, ParseError, boundary_type, normalize_cobordism

Labels = Sequence[Sequence[int]]

__all__ = [
    "CobordismTypeError",
    "GrassError",
    "ParseError",
    "boundary_type",
    "evaluate_cobordism",
    "fusion_table",
    "matrix_element",
    "normalize_cobordism",
    "open_intersection",
    "parabolic_verlinde",
    "suites",
    "verify",
    "verlinde",
    "verlinde_float",
    "verlinde_via_quot",
    "vi_integral",
]

suites = tuple(_core.suites)


def _labels(parts: Labels) -> list:
    return [list(p) for p in parts]


def verlinde(g: int, r: int, k: int, workers: int = 1) -> int:
    """Closed Verlinde number V_g for rank r and level k."""
    return int(_core.verlinde(g, r, k, workers))


def verlinde_via_quot(g: int, r: int, k: int, d: int, workers: int = 1) -> int:
    """V_g computed as a top intersection on the Quot scheme of degree d (r | d)."""
    return int(_core.verlinde_via_quot(g, r, k, d, workers))


def verlinde_float(g: int, r: int, k: int, precision: int = 128) -> str:
    """Decimal approximation of V_g from the floating backend."""
    return _core.verlinde_float(g, r, k, precision)


def vi_integral(r: int, n: int, g: int, d: int, poly: str, workers: int = 1) -> Fraction:
    """Integral of a polynomial in the Chern roots (x1.., e1.., a1.., s[..]) over Quot_d."""
    return Fraction(_core.vi_integral(r, n, g, d, poly, workers))


def open_intersection(g: int, r: int, k: int, d: int, parts: Labels, t: int) -> Fraction:
    return Fraction(_core.open_intersection(g, r, k, d, _labels(parts), t))


def parabolic_verlinde(g: int, r: int, k: int, d: int, parts: Labels) -> int:
    return int(_core.parabolic_verlinde(g, r, k, d, _labels(parts)))


def matrix_element(g: int, r: int, k: int, inputs: Labels = (), outputs: Labels = (), *, explain: bool = False,
                   workers: int = 1):
    """F(g) with input and output labels; with explain=True, also the degree d and power t."""
    out = _core.matrix_element(g, r, k, _labels(inputs), _labels(outputs), workers)
    value = int(out["value"])
    if not explain:
        return value
    return {"value": value, "d": out["d"], "t": out["t"], "reason": out["reason"]}


def fusion_table(r: int, k: int, workers: int = 1) -> dict:
    """Genus-0 metric and structure constants in the JSON layout of the cache files."""
    return json.loads(_core.fusion_table_json(r, k, workers))


def evaluate_cobordism(expr: str, r: int, k: int, workers: int = 1) -> list:
    """Matrix of a cobordism expression, rows indexed by outputs."""
    return [[Fraction(x) for x in row] for row in _core.evaluate_cobordism(expr, r, k, workers)]


def verify(suite: str, r: int, k: int, gmax: int = 2, workers: int = 1) -> list:
    """Run a verification suite; returns its report entries."""
    return json.loads(_core.verify_json(suite, r, k, gmax, workers))
