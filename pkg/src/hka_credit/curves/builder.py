#!/usr/bin/env python3
"""Term-structure sweeps and shape diagnostics."""

from __future__ import annotations

import logging
from typing import Optional, Sequence

from ..config import Config
from ..errors import ModelDomainError
from ..models import Curve, QuadraticModelParams, ShapeReport
from ..pricing import (
    credit_spread,
    forward_rate_default_free,
    price_default_free,
    price_defaultable,
    yield_default_free,
)


LOGGER = logging.getLogger(__name__)


def _maturities(maturities: Sequence[float]) -> tuple:
    grid = tuple(float(m) for m in maturities)
    if not grid:
        raise ModelDomainError("grid", "maturity grid is empty")
    if grid[0] <= 0.0:
        raise ModelDomainError("grid", f"maturities must be positive, got {grid[0]!r}")
    return grid


def yield_curve(
    maturities: Sequence[float], params: QuadraticModelParams, label: str = "base"
) -> Curve:
    """Default-free yields -log P_f(0, T) / T over the grid."""
    grid = _maturities(maturities)
    points = tuple((T, yield_default_free(T, params)) for T in grid)
    LOGGER.debug("Yield curve %s over %d maturities", label, len(grid))
    return Curve(label=label, points=points, kind="yield")


def spread_curve(
    maturities: Sequence[float],
    params: QuadraticModelParams,
    h: Optional[float] = None,
    label: str = "base",
) -> Curve:
    """Credit spreads at t = 0 over the grid."""
    grid = _maturities(maturities)
    points = tuple((T, credit_spread(0.0, T, params, h).spread) for T in grid)
    LOGGER.debug("Spread curve %s over %d maturities", label, len(grid))
    return Curve(label=label, points=points, kind="spread")


def price_curve(
    maturities: Sequence[float],
    params: QuadraticModelParams,
    defaultable: bool = False,
    label: str = "base",
) -> Curve:
    """Bond prices at t = 0 over the grid (defaultable prices assume survival)."""
    grid = _maturities(maturities)
    if defaultable:
        points = tuple((T, price_defaultable(0.0, T, True, params).price) for T in grid)
    else:
        points = tuple((T, price_default_free(0.0, T, params).price) for T in grid)
    return Curve(label=label, points=points, kind="price")


def forward_curve(
    maturities: Sequence[float],
    params: QuadraticModelParams,
    h: Optional[float] = None,
    label: str = "base",
) -> Curve:
    """Default-free instantaneous forward rates over the grid."""
    grid = _maturities(maturities)
    points = tuple((T, forward_rate_default_free(T, params, h)) for T in grid)
    return Curve(label=label, points=points, kind="forward")


def shape_report(curve: Curve, tolerance: float = Config.TIE_TOLERANCE) -> ShapeReport:
    """
    Monotonicity, hump and turning-point diagnostics.

    Successive differences within ``tolerance`` count as ties. A hump is an
    interior point strictly above both neighbours; when several exist the
    highest one is reported.
    """
    values = curve.values
    if len(values) < 3:
        raise ModelDomainError("curve.points", "shape report needs at least 3 points")

    diffs = [b - a for a, b in zip(values, values[1:])]
    nondecreasing = all(d >= -tolerance for d in diffs)
    nonincreasing = all(d <= tolerance for d in diffs)

    hump_at = None
    best = None
    for i in range(1, len(values) - 1):
        if diffs[i - 1] > tolerance and -diffs[i] > tolerance:
            if best is None or values[i] > best:
                best = values[i]
                hump_at = curve.maturities[i]

    signs = [1 if d > tolerance else -1 for d in diffs if abs(d) > tolerance]
    crossings = sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    return ShapeReport(
        monotone_nondecreasing=nondecreasing,
        monotone_nonincreasing=nonincreasing,
        hump_at=hump_at,
        crossings=crossings,
    )
