"""Central differences and Richardson extrapolation for maturity derivatives."""

from __future__ import annotations

from typing import Callable, List, Sequence

from ..config import Config
from ..errors import ModelDomainError

__all__ = [
    "central_difference",
    "richardson_derivative",
    "richardson_extrapolate",
]


def central_difference(fn: Callable[[float], float], x: float, h: float) -> float:
    """Second-order central difference (fn(x + h) - fn(x - h)) / 2h."""
    return (fn(x + h) - fn(x - h)) / (2.0 * h)


def richardson_extrapolate(estimates: Sequence[float], p: int, r: float = 2.0) -> float:
    """
    Collapse estimates taken at steps h, h/r, h/r^2, ... into one value.

    Each sweep of the tableau cancels the next error term, starting from
    order ``p`` and climbing by ``p`` per sweep (even-order series for the
    central stencil).

    Raises:
        ModelDomainError: with fewer than two estimates.
    """
    if len(estimates) < 2:
        raise ModelDomainError("estimates", f"need at least two, got {len(estimates)}")
    row: List[float] = [float(value) for value in estimates]
    order = p
    while len(row) > 1:
        gain = r ** order
        row = [(gain * finer - coarser) / (gain - 1.0) for coarser, finer in zip(row, row[1:])]
        order += p
    return row[0]


def richardson_derivative(fn: Callable[[float], float], x: float, h: float) -> float:
    """Central difference at steps h and h/2 combined by one Richardson step."""
    coarse = central_difference(fn, x, h)
    fine = central_difference(fn, x, 0.5 * h)
    return richardson_extrapolate([coarse, fine], p=Config.RICHARDSON_ORDER, r=2.0)
