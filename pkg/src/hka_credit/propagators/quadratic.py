#!/usr/bin/env python3
"""
Closed-form propagators of the quadratic Gaussian killed-HKA model.

The state is a d-dimensional Wiener process started at x and the killing
potential is V(x) = beta^2 |x|^2 / 2. Everything is evaluated in log space:

    log(cosh u + k sinh u)

is computed with a log1p form for small u and an exponent-shifted form for
large u, so beta*t in the thousands never overflows.

SIGN OF THE LEMMA NUMERATOR:
The Laplace functional E[exp(-alpha|X_t|^2 - beta^2/2 int_0^t |X_s|^2 ds)]
has exponent

    -(beta |x|^2 / 2) (beta sinh(beta t) + 2 alpha cosh(beta t))
                      / (beta cosh(beta t) + 2 alpha sinh(beta t))

Only the "+" numerator recovers exp(-alpha|x|^2) as t -> 0 and the beta = 0
branch as beta -> 0. The "-" variant is kept as ``laplace_quadratic_printed``
so the Monte Carlo validation suite can reject it explicitly.
"""

from __future__ import annotations

import logging
import math

import numpy as np

from ..errors import ModelDomainError
from ..models import PropagatorValue, QuadraticModelParams


LOGGER = logging.getLogger(__name__)

_LOG2 = math.log(2.0)
_SMALL_ARGUMENT = 1.0


def _check_argument(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise ModelDomainError(name, f"must be finite, got {value!r}")
    if value < 0.0:
        raise ModelDomainError(name, f"must be non-negative, got {value!r}")
    return value


def _check_dim(dim: int) -> int:
    if isinstance(dim, bool) or int(dim) != dim or dim < 1:
        raise ModelDomainError("dim", f"must be a positive integer, got {dim!r}")
    return int(dim)


def _as_scalar_or_array(values: np.ndarray, shape):
    values = values.reshape(shape)
    return float(values) if values.ndim == 0 else values


def log_cosh_plus_k_sinh(u, k):
    """log(cosh u + k sinh u) for u >= 0, k >= 0, stable for tiny and huge u."""
    u_arr, k_arr = np.broadcast_arrays(np.asarray(u, dtype=float), np.asarray(k, dtype=float))
    shape = u_arr.shape
    u_flat = np.atleast_1d(u_arr).ravel()
    k_flat = np.atleast_1d(k_arr).ravel()
    out = np.empty(u_flat.shape)

    small = u_flat < _SMALL_ARGUMENT
    us, ks = u_flat[small], k_flat[small]
    # cosh u - 1 = 2 sinh^2(u/2) keeps the u -> 0 limit exact
    out[small] = np.log1p(2.0 * np.sinh(0.5 * us) ** 2 + ks * np.sinh(us))

    large = ~small
    ub, kb = u_flat[large], k_flat[large]
    out[large] = ub - _LOG2 + np.log((1.0 + kb) + (1.0 - kb) * np.exp(-2.0 * ub))
    return _as_scalar_or_array(out, shape)


def log_laplace_values(alpha, beta, t, x_norm_sq, dim, printed_sign=False):
    """Vectorised log E[exp(-alpha|X_t|^2 - beta^2/2 int_0^t |X_s|^2 ds)].

    ``x_norm_sq`` may be an array (one entry per start point); the other
    arguments are scalars. Arguments are assumed already validated.
    """
    x_norm_sq = np.asarray(x_norm_sq, dtype=float)
    half_dim = 0.5 * dim
    if beta == 0.0:
        scale = 2.0 * alpha * t
        return -half_dim * math.log1p(scale) - alpha * x_norm_sq / (1.0 + scale)

    u = beta * t
    prefactor = -half_dim * log_cosh_plus_k_sinh(u, 2.0 * alpha / beta)
    tanh_u = math.tanh(u)
    numerator = beta * tanh_u - 2.0 * alpha if printed_sign else beta * tanh_u + 2.0 * alpha
    ratio = beta * numerator / (beta + 2.0 * alpha * tanh_u)
    return prefactor - 0.5 * x_norm_sq * ratio


def log_q_values(t, x_norm_sq, beta, dim):
    """Vectorised log q(t, x) over an array of squared norms."""
    return log_laplace_values(0.0, beta, t, x_norm_sq, dim)


def log_qhat_values(t, s, x_norm_sq, beta, dim):
    """Vectorised log q_hat(t, s, x) = log E[exp(-int_s^t V(X_u) du)]."""
    x_norm_sq = np.asarray(x_norm_sq, dtype=float)
    if beta == 0.0 or t == s:
        return np.zeros_like(x_norm_sq) if x_norm_sq.ndim else 0.0
    u = beta * (t - s)
    w = beta * s
    tanh_u = math.tanh(u)
    prefactor = -0.5 * dim * log_cosh_plus_k_sinh(u, w)
    return prefactor - 0.5 * beta * x_norm_sq * tanh_u / (1.0 + w * tanh_u)


def laplace_quadratic(
    alpha: float, beta: float, t: float, x_norm_sq: float, dim: int
) -> PropagatorValue:
    """
    Laplace functional of the squared Wiener norm and its time integral.

    Returns E[exp(-alpha|X_t^x|^2 - (beta^2/2) int_0^t |X_s^x|^2 ds)] for a
    ``dim``-dimensional Wiener process started at any x with |x|^2 = x_norm_sq,
    using the sign-corrected branch for beta > 0 and
    (2 alpha t + 1)^(-d/2) exp(-alpha |x|^2 / (2 alpha t + 1)) for beta = 0.

    Raises:
        ModelDomainError: if any argument is negative or non-finite.
    """
    alpha = _check_argument("alpha", alpha)
    beta = _check_argument("beta", beta)
    t = _check_argument("t", t)
    x_norm_sq = _check_argument("x_norm_sq", x_norm_sq)
    dim = _check_dim(dim)
    log_value = float(log_laplace_values(alpha, beta, t, x_norm_sq, dim))
    return PropagatorValue(log_value=log_value)


def laplace_quadratic_printed(
    alpha: float, beta: float, t: float, x_norm_sq: float, dim: int
) -> PropagatorValue:
    """The Laplace functional with the minus-sign numerator; diagnostic only."""
    alpha = _check_argument("alpha", alpha)
    beta = _check_argument("beta", beta)
    t = _check_argument("t", t)
    x_norm_sq = _check_argument("x_norm_sq", x_norm_sq)
    dim = _check_dim(dim)
    log_value = float(log_laplace_values(alpha, beta, t, x_norm_sq, dim, printed_sign=True))
    return PropagatorValue(log_value=log_value)


def propagator_q(t: float, params: QuadraticModelParams) -> PropagatorValue:
    """q(t, x) = E[exp(-int_0^t V(X_s^x) ds)] = (cosh bt)^(-d/2) exp(-(b|x|^2/2) tanh bt)."""
    return laplace_quadratic(0.0, params.beta, t, params.x_norm_sq, params.dim)


def propagator_qhat(t: float, s: float, params: QuadraticModelParams) -> PropagatorValue:
    """
    q_hat(t, s, x) = E[exp(-int_s^t V(X_u^x) du)] for 0 <= s <= t.

    Closed form:
        (cosh b(t-s) + b s sinh b(t-s))^(-d/2)
        * exp(-(b|x|^2/2) tanh b(t-s) / (1 + b s tanh b(t-s)))

    Raises:
        ModelDomainError: if s < 0, s > t, or an argument is non-finite.
    """
    t = _check_argument("t", t)
    s = _check_argument("s", s)
    if s > t:
        raise ModelDomainError("s", f"window start {s!r} exceeds window end {t!r}")
    if params.beta == 0.0:
        LOGGER.debug("q_hat(%s, %s) with zero potential is identically 1", t, s)
    log_value = float(log_qhat_values(t, s, params.x_norm_sq, params.beta, params.dim))
    return PropagatorValue(log_value=log_value)


def potential_v(x, beta: float) -> float:
    """Killing potential V(x) = beta^2 |x|^2 / 2 (also the default intensity)."""
    beta = float(beta)
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if not math.isfinite(beta) or not np.all(np.isfinite(x)):
        raise ModelDomainError("x", "potential needs finite inputs")
    return 0.5 * beta * beta * float(np.dot(x, x))
