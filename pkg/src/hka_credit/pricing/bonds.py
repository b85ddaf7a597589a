#!/usr/bin/env python3
"""
Defaultable and default-free zero coupon bonds under the killed HKA.

With state price density pi_t = q(lambda_t, X_t) and default intensity V(X_t):

    P_d(t, T) = 1{tau > t} q(lambda_T + T - t, X_t) / q(lambda_t, X_t)
    P_f(t, T) = q_hat(lambda_T + T - t, T - t, X_t) / q(lambda_t, X_t)

and the credit spread is d/dT log[q_hat(lambda_T + T - t, T - t, X_t)
/ q(lambda_T + T - t, X_t)], which equals -d/dT log(P_d / P_f).

VALUATION AT t > 0: prices depend on the observed state X_t. Callers pass it
through ``params.x0`` (see ``QuadraticModelParams.with_state``); nothing here
simulates the state.
"""

from __future__ import annotations

import logging
import math
from typing import Optional

from ..config import Config
from ..errors import ModelDomainError
from ..models import BondQuote, QuadraticModelParams, SpreadPoint
from ..propagators import log_q_values, log_qhat_values
from .numerics import richardson_derivative


LOGGER = logging.getLogger(__name__)


def _check_window(t: float, T: float, params: QuadraticModelParams) -> tuple:
    t, T = float(t), float(T)
    if not math.isfinite(t) or t < 0.0:
        raise ModelDomainError("t", f"valuation time must be finite and non-negative, got {t!r}")
    if not math.isfinite(T):
        raise ModelDomainError("T", f"maturity must be finite, got {T!r}")
    if T <= t:
        raise ModelDomainError("T", f"maturity {T!r} must exceed valuation time {t!r}")
    if T > params.horizon:
        raise ModelDomainError("T", f"maturity {T!r} is beyond the model horizon {params.horizon!r}")
    return t, T


def _log_q(t: float, params: QuadraticModelParams) -> float:
    return float(log_q_values(t, params.x_norm_sq, params.beta, params.dim))


def _log_qhat(t: float, s: float, params: QuadraticModelParams) -> float:
    return float(log_qhat_values(t, s, params.x_norm_sq, params.beta, params.dim))


def _shifted_time(t: float, T: float, params: QuadraticModelParams) -> float:
    """lambda_T + T - t, the propagator time argument of a T-maturity bond."""
    return params.lam(T) + T - t


def log_price_defaultable(t: float, T: float, params: QuadraticModelParams) -> float:
    """log P_d(t, T) on survival, without domain checks."""
    return _log_q(_shifted_time(t, T, params), params) - _log_q(params.lam(t), params)


def log_price_default_free(t: float, T: float, params: QuadraticModelParams) -> float:
    """log P_f(t, T), without domain checks."""
    tau = _shifted_time(t, T, params)
    return _log_qhat(tau, T - t, params) - _log_q(params.lam(t), params)


def price_default_free(t: float, T: float, params: QuadraticModelParams) -> BondQuote:
    """
    Default-free zero coupon bond P_f(t, T).

    The price is not clamped to 1; on the time-change families shipped with
    the library it stays below 1 for non-decreasing lambda.

    Raises:
        ModelDomainError: if T <= t, t < 0 or T is beyond params.horizon.
    """
    t, T = _check_window(t, T, params)
    price = math.exp(log_price_default_free(t, T, params))
    LOGGER.debug("P_f(%s, %s) = %r", t, T, price)
    return BondQuote(t=t, maturity=T, price=price, survived=True, defaultable=False)


def price_defaultable(
    t: float, T: float, survived: bool, params: QuadraticModelParams
) -> BondQuote:
    """
    Defaultable zero coupon bond P_d(t, T) with zero recovery.

    Args:
        survived: indicator 1{tau > t} observed at the valuation time.

    Raises:
        ModelDomainError: if T <= t, t < 0 or T is beyond params.horizon.
    """
    t, T = _check_window(t, T, params)
    if not survived:
        return BondQuote(t=t, maturity=T, price=0.0, survived=False, defaultable=True)
    price = math.exp(log_price_defaultable(t, T, params))
    LOGGER.debug("P_d(%s, %s) = %r", t, T, price)
    return BondQuote(t=t, maturity=T, price=price, survived=True, defaultable=True)


def yield_default_free(T: float, params: QuadraticModelParams) -> float:
    """Continuously compounded yield -log P_f(0, T) / T."""
    _, T = _check_window(0.0, T, params)
    return 0.0 - log_price_default_free(0.0, T, params) / T


def survival_probability(T: float, params: QuadraticModelParams) -> float:
    """P(tau > T) = E[exp(-int_0^T V(X_u) du)] = q(T, x)."""
    T = float(T)
    if not math.isfinite(T) or T < 0.0:
        raise ModelDomainError("T", f"horizon must be finite and non-negative, got {T!r}")
    return math.exp(_log_q(T, params))


def default_step(T: float) -> float:
    """Default differentiation step h = 1e-4 * max(1, T)."""
    return Config.SPREAD_STEP_SCALE * max(1.0, abs(T))


def _resolve_step(T: float, h: Optional[float]) -> float:
    h = default_step(T) if h is None else float(h)
    if not math.isfinite(h) or h <= 0.0:
        raise ModelDomainError("h", f"step must be positive, got {h!r}")
    return h


def log_spread_ratio(t: float, T: float, params: QuadraticModelParams) -> float:
    """g(T) = log[q_hat(lambda_T + T - t, T - t, x) / q(lambda_T + T - t, x)]."""
    tau = _shifted_time(t, T, params)
    return _log_qhat(tau, T - t, params) - _log_q(tau, params)


def credit_spread(
    t: float, T: float, params: QuadraticModelParams, h: Optional[float] = None
) -> SpreadPoint:
    """
    Instantaneous credit spread dg/dT by a Richardson-extrapolated central difference.

    Raises:
        ModelDomainError: if the stencil [T - h, T + h] reaches the valuation time.
    """
    t, T = _check_window(t, T, params)
    h = _resolve_step(T, h)
    if T - h <= t:
        raise ModelDomainError("h", f"stencil T - h = {T - h!r} must stay above t = {t!r}")
    spread = richardson_derivative(lambda m: log_spread_ratio(t, m, params), T, h)
    return SpreadPoint(maturity=T, spread=spread)


def forward_rate_default_free(
    T: float, params: QuadraticModelParams, h: Optional[float] = None
) -> float:
    """Instantaneous default-free forward rate -d/dT log P_f(0, T)."""
    _, T = _check_window(0.0, T, params)
    h = _resolve_step(T, h)
    if T - h <= 0.0:
        raise ModelDomainError("h", f"stencil T - h = {T - h!r} must stay above 0")
    return -richardson_derivative(lambda m: log_price_default_free(0.0, m, params), T, h)
