"""
Monte Carlo oracle for the quadratic Gaussian killed-HKA model.

Contains:
- Exact Wiener path simulation with Cox default times on seeded block substreams
- Streaming estimators of q, q_hat, the Laplace functional and bond prices
- The propagation-property check used to validate the pricing closed forms
- Step-doubling runs that share increments between the two grids
"""

from .estimators import (
    MonteCarloOracle,
    mc_laplace,
    mc_price_default_free,
    mc_price_defaultable,
    mc_propagation_check,
    mc_q,
    mc_qhat,
    mc_step_refinement,
    mc_survival_fraction,
)
from .paths import block_generator, block_layout, resolve_workers, simulate_block, simulate_paths

__all__ = [
    'MonteCarloOracle',
    'block_generator',
    'block_layout',
    'mc_laplace',
    'mc_price_default_free',
    'mc_price_defaultable',
    'mc_propagation_check',
    'mc_q',
    'mc_qhat',
    'mc_step_refinement',
    'mc_survival_fraction',
    'resolve_workers',
    'simulate_block',
    'simulate_paths',
]
