"""
Closed-form propagators for the quadratic Gaussian killed-HKA model.

Contains:
- The Laplace functional of |X|^2 and its time integral (both beta branches)
- The killed propagator q(t, x) and the windowed propagator q_hat(t, s, x)
- The quadratic killing potential V
"""

from .quadratic import (
    laplace_quadratic,
    laplace_quadratic_printed,
    log_laplace_values,
    log_q_values,
    log_qhat_values,
    potential_v,
    propagator_q,
    propagator_qhat,
)

__all__ = [
    'laplace_quadratic',
    'laplace_quadratic_printed',
    'log_laplace_values',
    'log_q_values',
    'log_qhat_values',
    'potential_v',
    'propagator_q',
    'propagator_qhat',
]
