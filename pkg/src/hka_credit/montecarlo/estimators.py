#!/usr/bin/env python3
"""
Brute-force Monte Carlo estimators for every closed form of the model.

Each estimator streams blocks of paths through ``simulate_block``, reduces a
block to per-path payoffs (or per-pair averages for antithetic runs) and only
then aggregates, so memory stays proportional to one block and the standard
error comes from the sample variance of i.i.d. samples.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from ..errors import ModelDomainError
from ..models import McConfig, McEstimate, QuadraticModelParams
from ..propagators import log_q_values
from .paths import PathBlock, run_blocks, simulate_block, simulate_paths


LOGGER = logging.getLogger(__name__)

Payoff = Callable[[PathBlock], np.ndarray]


def _positive(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value) or value <= 0.0:
        raise ModelDomainError(name, f"must be positive and finite, got {value!r}")
    return value


def _non_negative(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value) or value < 0.0:
        raise ModelDomainError(name, f"must be non-negative and finite, got {value!r}")
    return value


@dataclass(frozen=True)
class MonteCarloOracle:
    """Immutable estimator bound to one model and one Monte Carlo configuration."""

    params: QuadraticModelParams
    cfg: McConfig
    workers: Optional[int] = None

    # ------------------------------------------------------------------
    # Engine
    # ------------------------------------------------------------------
    def _estimate(
        self,
        label: str,
        payoff: Payoff,
        window_start: float,
        window_end: float,
        beta: Optional[float] = None,
        refine: bool = False,
    ) -> McEstimate:
        cfg = self.cfg

        def work(index: int, size: int) -> np.ndarray:
            block = simulate_block(
                index, size, self.params, cfg, window_start, window_end, beta, refine=refine
            )
            values = payoff(block)
            if cfg.antithetic:
                half = size // 2
                values = 0.5 * (values[:half] + values[half:])
            return values

        samples = np.concatenate(run_blocks(work, cfg, self.workers))
        n = samples.size
        mean = float(np.mean(samples))
        std_error = float(np.std(samples, ddof=1) / math.sqrt(n))
        LOGGER.debug("%s: mean=%r se=%r n=%d", label, mean, std_error, n)
        return McEstimate(mean=mean, std_error=std_error, n_effective=n)

    def _log_q_at(self, t: float, norm_sq) -> np.ndarray:
        return log_q_values(t, norm_sq, self.params.beta, self.params.dim)

    def _maturity(self, T: float) -> float:
        T = _positive("T", T)
        if T > self.params.horizon:
            raise ModelDomainError(
                "T", f"maturity {T!r} is beyond the model horizon {self.params.horizon!r}"
            )
        return T

    # ------------------------------------------------------------------
    # Estimators
    # ------------------------------------------------------------------
    def q(self, t: float) -> McEstimate:
        """E[exp(-int_0^t V(X_s) ds)]."""
        t = _positive("t", t)
        return self._estimate("q", lambda b: np.exp(-b.hazard), 0.0, t)

    def qhat(self, t: float, s: float) -> McEstimate:
        """E[exp(-int_s^t V(X_u) du)]; X_s is drawn exactly, [s, t] is discretised."""
        t = _positive("t", t)
        s = _non_negative("s", s)
        if s > t:
            raise ModelDomainError("s", f"window start {s!r} exceeds window end {t!r}")
        return self._estimate("q_hat", lambda b: np.exp(-b.hazard), s, t)

    def laplace(self, alpha: float, beta: float, t: float) -> McEstimate:
        """E[exp(-alpha|X_t|^2 - (beta^2/2) int_0^t |X_s|^2 ds)]."""
        alpha = _non_negative("alpha", alpha)
        beta = _non_negative("beta", beta)
        t = _positive("t", t)
        return self._estimate(
            "laplace",
            lambda b: np.exp(-alpha * b.x_end_norm_sq - b.hazard),
            0.0,
            t,
            beta=beta,
        )

    def propagation_check(self, s: float, t: float) -> McEstimate:
        """E[q(s, X_t) exp(-int_0^t V)], which should reproduce q(t + s, x)."""
        s = _positive("s", s)
        t = _positive("t", t)
        return self._estimate(
            "propagation",
            lambda b: np.exp(self._log_q_at(s, b.x_end_norm_sq) - b.hazard),
            0.0,
            t,
        )

    def price_defaultable(self, T: float) -> McEstimate:
        """E[1{tau > T} q(lambda_T, X_T)] / q(lambda_0, x0) with Cox default times."""
        T = self._maturity(T)
        lam_T = self.params.lam(T)
        log_denominator = float(self._log_q_at(self.params.lam(0.0), self.params.x_norm_sq))

        def payoff(b: PathBlock) -> np.ndarray:
            survived = b.default_time > T
            return survived * np.exp(self._log_q_at(lam_T, b.x_end_norm_sq) - log_denominator)

        return self._estimate("P_d", payoff, 0.0, T)

    def price_default_free(self, T: float) -> McEstimate:
        """E[q(lambda_T, X_T)] / q(lambda_0, x0)."""
        T = self._maturity(T)
        lam_T = self.params.lam(T)
        log_denominator = float(self._log_q_at(self.params.lam(0.0), self.params.x_norm_sq))
        return self._estimate(
            "P_f",
            lambda b: np.exp(self._log_q_at(lam_T, b.x_end_norm_sq) - log_denominator),
            0.0,
            T,
        )

    def survival_fraction(self, T: float) -> McEstimate:
        """Fraction of Cox default times beyond T."""
        T = _positive("T", T)
        return self._estimate(
            "survival", lambda b: (b.default_time > T).astype(float), 0.0, T
        )

    def step_refinement(self, t: float) -> McEstimate:
        """
        Change in the q estimate when n_steps doubles, on shared increments.

        The mean is E[exp(-H_n) - exp(-H_2n)] for the n- and 2n-interval
        trapezoid hazards of the same paths.
        """
        t = _positive("t", t)
        return self._estimate(
            "step_refinement",
            lambda b: np.exp(-b.coarse_hazard) - np.exp(-b.hazard),
            0.0,
            t,
            refine=True,
        )

    def simulate_paths(self, horizon: float):
        return simulate_paths(horizon, self.params, self.cfg, self.workers)


def mc_q(t: float, params: QuadraticModelParams, cfg: McConfig) -> McEstimate:
    return MonteCarloOracle(params, cfg).q(t)


def mc_qhat(t: float, s: float, params: QuadraticModelParams, cfg: McConfig) -> McEstimate:
    return MonteCarloOracle(params, cfg).qhat(t, s)


def mc_laplace(
    alpha: float, beta: float, t: float, params: QuadraticModelParams, cfg: McConfig
) -> McEstimate:
    return MonteCarloOracle(params, cfg).laplace(alpha, beta, t)


def mc_propagation_check(
    s: float, t: float, params: QuadraticModelParams, cfg: McConfig
) -> McEstimate:
    return MonteCarloOracle(params, cfg).propagation_check(s, t)


def mc_price_defaultable(T: float, params: QuadraticModelParams, cfg: McConfig) -> McEstimate:
    return MonteCarloOracle(params, cfg).price_defaultable(T)


def mc_price_default_free(T: float, params: QuadraticModelParams, cfg: McConfig) -> McEstimate:
    return MonteCarloOracle(params, cfg).price_default_free(T)


def mc_survival_fraction(T: float, params: QuadraticModelParams, cfg: McConfig) -> McEstimate:
    return MonteCarloOracle(params, cfg).survival_fraction(T)


def mc_step_refinement(t: float, params: QuadraticModelParams, cfg: McConfig) -> McEstimate:
    return MonteCarloOracle(params, cfg).step_refinement(t)
