#!/usr/bin/env python3
"""
HKA Credit - killed heat-kernel pricing of a defaultable bond

Prices one defaultable zero coupon bond and its default-free counterpart
under the killed-HKA framework with a quadratic Gaussian potential on a
d-dimensional Wiener state, and cross-checks every closed form against a
brute-force Monte Carlo oracle.

Key Features:
- Closed-form propagators q and q_hat evaluated in log space
- Defaultable and default-free bond prices, yields and forward rates
- Credit spreads by Richardson-extrapolated numeric differentiation
- Seeded, thread-count independent Monte Carlo with Cox default times
- Yield and spread curve sweeps with CSV export
"""

# Version info
__version__ = "1.0.0"
__author__ = "HKA Credit Development Team"
__license__ = "Private"

# Configuration
from .config import Config

# Shared utilities
from .errors import ConfigError, HKAError, McResourceError, ModelDomainError
from .io import ConsoleIO, IOInterface
from .logging_utils import setup_logging
from .models import (
    BondQuote,
    Curve,
    DefaultScenario,
    McConfig,
    McEstimate,
    PropagatorValue,
    QuadraticModelParams,
    ShapeReport,
    SpreadPoint,
)
from .timechange import Affine, PowerLaw, ScaledExponential, TimeChange, time_change_from_parameters

# Closed forms
from .propagators import laplace_quadratic, potential_v, propagator_q, propagator_qhat

# Pricing
from .pricing import (
    credit_spread,
    forward_rate_default_free,
    price_default_free,
    price_defaultable,
    survival_probability,
    yield_default_free,
)

# Monte Carlo oracle
from .montecarlo import (
    MonteCarloOracle,
    mc_laplace,
    mc_price_default_free,
    mc_price_defaultable,
    mc_propagation_check,
    mc_q,
    mc_qhat,
    mc_step_refinement,
    mc_survival_fraction,
    simulate_paths,
)

# Curves
from .curves import shape_report, spread_curve, write_curves_csv, yield_curve

# Public API
__all__ = [
    # Configuration
    'Config',

    # Errors
    'ConfigError',
    'HKAError',
    'McResourceError',
    'ModelDomainError',

    # Model
    'Affine',
    'PowerLaw',
    'QuadraticModelParams',
    'ScaledExponential',
    'TimeChange',
    'time_change_from_parameters',

    # Closed forms
    'laplace_quadratic',
    'potential_v',
    'propagator_q',
    'propagator_qhat',

    # Pricing
    'BondQuote',
    'SpreadPoint',
    'credit_spread',
    'forward_rate_default_free',
    'price_default_free',
    'price_defaultable',
    'survival_probability',
    'yield_default_free',

    # Monte Carlo
    'DefaultScenario',
    'McConfig',
    'McEstimate',
    'MonteCarloOracle',
    'mc_laplace',
    'mc_price_default_free',
    'mc_price_defaultable',
    'mc_propagation_check',
    'mc_q',
    'mc_qhat',
    'mc_step_refinement',
    'mc_survival_fraction',
    'simulate_paths',

    # Curves
    'Curve',
    'ShapeReport',
    'shape_report',
    'spread_curve',
    'write_curves_csv',
    'yield_curve',

    # Utilities
    'ConsoleIO',
    'IOInterface',
    'PropagatorValue',
    'setup_logging',
]


def get_version():
    """Return the current version of HKA Credit."""
    return __version__
