"""
Bond pricing module for the killed HKA defaultable market.

Contains:
- Defaultable and default-free zero coupon bond prices
- Default-free yields, forward rates and survival probabilities
- Credit spreads by Richardson-extrapolated numeric differentiation
"""

from .bonds import (
    credit_spread,
    default_step,
    forward_rate_default_free,
    log_price_default_free,
    log_price_defaultable,
    log_spread_ratio,
    price_default_free,
    price_defaultable,
    survival_probability,
    yield_default_free,
)
from .numerics import central_difference, richardson_derivative, richardson_extrapolate

__all__ = [
    'central_difference',
    'credit_spread',
    'default_step',
    'forward_rate_default_free',
    'log_price_default_free',
    'log_price_defaultable',
    'log_spread_ratio',
    'price_default_free',
    'price_defaultable',
    'richardson_derivative',
    'richardson_extrapolate',
    'survival_probability',
    'yield_default_free',
]
