"""
Curve generation module.

Contains:
- Yield, credit spread, price and forward curve sweeps over maturity grids
- Shape diagnostics (monotonicity, hump detection, turning points)
- CSV export with a stable row order and round-trip float formatting
"""

from .builder import forward_curve, price_curve, shape_report, spread_curve, yield_curve
from .export import CSV_HEADER, CURVE_WRITERS, write_curves_csv

__all__ = [
    'CSV_HEADER',
    'CURVE_WRITERS',
    'forward_curve',
    'price_curve',
    'shape_report',
    'spread_curve',
    'write_curves_csv',
    'yield_curve',
]
