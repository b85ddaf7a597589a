#!/usr/bin/env python3
"""
Closed form versus Monte Carlo validation suite.

Every check pairs a closed-form value with a brute-force estimate of the same
quantity. Ordinary checks pass when the z-score stays within
``Config.VALIDATION_Z_LIMIT``; the sign-discrimination check passes only when
the estimate rejects the printed minus-sign Laplace formula by at least
``Config.SIGN_REJECTION_Z`` standard errors.
"""

from __future__ import annotations

import csv
import logging
import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, TextIO, Tuple

from ..config import Config
from ..models import McConfig, McEstimate, QuadraticModelParams
from ..models import _MappingMixin
from ..montecarlo import MonteCarloOracle
from ..pricing import price_default_free, price_defaultable, survival_probability
from ..propagators import (
    laplace_quadratic,
    laplace_quadratic_printed,
    propagator_q,
    propagator_qhat,
)
from ..timechange import PowerLaw, ScaledExponential


LOGGER = logging.getLogger(__name__)

REPORT_HEADER = ("quantity", "closed_form", "mc_mean", "std_error", "z_score", "passed", "expect")

MATCH = "match"
REJECT = "reject"


@dataclass(frozen=True)
class ValidationCheck:
    """One closed-form quantity and the estimator that should reproduce it."""

    quantity: str
    params: QuadraticModelParams
    closed_form: Callable[[QuadraticModelParams], float]
    estimate: Callable[[MonteCarloOracle], McEstimate]
    expect: str = MATCH
    printed_sign: Optional[Callable[[QuadraticModelParams], float]] = None


@dataclass(frozen=True)
class ValidationRow(_MappingMixin):
    quantity: str
    closed_form: float
    mc_mean: float
    std_error: float
    z_score: float
    passed: bool
    expect: str = MATCH


@dataclass(frozen=True)
class ValidationReport(_MappingMixin):
    rows: Tuple[ValidationRow, ...]

    @property
    def passed(self) -> bool:
        return all(row.passed for row in self.rows)

    @property
    def failures(self) -> Tuple[ValidationRow, ...]:
        return tuple(row for row in self.rows if not row.passed)


def _model(beta: float, x0: Sequence[float], time_change=None) -> QuadraticModelParams:
    return QuadraticModelParams(
        beta=beta,
        dim=len(x0),
        x0=tuple(x0),
        time_change=time_change or PowerLaw(c=1.0, p=0.5),
    )


def _laplace_check(alpha: float, beta: float, t: float, x0: Sequence[float], expect: str = MATCH):
    params = _model(beta, x0)
    label = f"laplace(alpha={alpha:g},beta={beta:g},t={t:g},|x|^2={params.x_norm_sq:g},d={params.dim})"
    if expect == REJECT:
        label = f"{label}:printed_sign"

    def corrected(p: QuadraticModelParams) -> float:
        return laplace_quadratic(alpha, beta, t, p.x_norm_sq, p.dim).value

    def printed(p: QuadraticModelParams) -> float:
        return laplace_quadratic_printed(alpha, beta, t, p.x_norm_sq, p.dim).value

    if expect == REJECT:
        return ValidationCheck(label, params, printed, lambda o: o.laplace(alpha, beta, t), REJECT, corrected)
    return ValidationCheck(label, params, corrected, lambda o: o.laplace(alpha, beta, t), MATCH, printed)


def default_checks() -> List[ValidationCheck]:
    """
    The standard suite: dimensions 1 and 2, beta in {0.1, 0.5, 1}, |x| in
    {0, 1, 10} and horizons 1 and 5, plus the sign-discrimination point.
    """
    unit_diagonal = (math.sqrt(0.5), math.sqrt(0.5))
    exponential = ScaledExponential(c=0.1)

    checks = [
        ValidationCheck(
            "q(t=1,beta=1,x=0,d=1)",
            _model(1.0, (0.0,)),
            lambda p: propagator_q(1.0, p).value,
            lambda o: o.q(1.0),
        ),
        ValidationCheck(
            "q(t=1,beta=0.5,x=(0.6,0.8),d=2)",
            _model(0.5, (0.6, 0.8)),
            lambda p: propagator_q(1.0, p).value,
            lambda o: o.q(1.0),
        ),
        ValidationCheck(
            "q(t=5,beta=0.1,x=10,d=1)",
            _model(0.1, (10.0,)),
            lambda p: propagator_q(5.0, p).value,
            lambda o: o.q(5.0),
        ),
        ValidationCheck(
            "q(t=5,beta=0.5,x=0,d=2)",
            _model(0.5, (0.0, 0.0)),
            lambda p: propagator_q(5.0, p).value,
            lambda o: o.q(5.0),
        ),
        ValidationCheck(
            "q_hat(t=2,s=1,beta=0.5,x=1,d=1)",
            _model(0.5, (1.0,)),
            lambda p: propagator_qhat(2.0, 1.0, p).value,
            lambda o: o.qhat(2.0, 1.0),
        ),
        ValidationCheck(
            "q_hat(t=5,s=1,beta=1,x=0,d=2)",
            _model(1.0, (0.0, 0.0)),
            lambda p: propagator_qhat(5.0, 1.0, p).value,
            lambda o: o.qhat(5.0, 1.0),
        ),
        _laplace_check(0.3, 0.0, 1.0, (0.0,)),
        _laplace_check(0.2, 0.5, 1.0, unit_diagonal),
        _laplace_check(0.1, 1.0, 5.0, (1.0,)),
        ValidationCheck(
            "propagation(s=1,t=1,beta=0.5,x=0,d=1)",
            _model(0.5, (0.0,)),
            lambda p: propagator_q(2.0, p).value,
            lambda o: o.propagation_check(1.0, 1.0),
        ),
        ValidationCheck(
            "propagation(s=0.5,t=2,beta=1,x=(0.6,0.8),d=2)",
            _model(1.0, (0.6, 0.8)),
            lambda p: propagator_q(2.5, p).value,
            lambda o: o.propagation_check(0.5, 2.0),
        ),
        ValidationCheck(
            "P_d(T=1,beta=0.5,x=1,d=1,lambda=sqrt)",
            _model(0.5, (1.0,)),
            lambda p: price_defaultable(0.0, 1.0, True, p).price,
            lambda o: o.price_defaultable(1.0),
        ),
        ValidationCheck(
            "P_d(T=5,beta=0.1,x=10,d=1,lambda=exp)",
            _model(0.1, (10.0,), exponential),
            lambda p: price_defaultable(0.0, 5.0, True, p).price,
            lambda o: o.price_defaultable(5.0),
        ),
        ValidationCheck(
            "P_f(T=1,beta=0.1,x=10,d=1,lambda=exp)",
            _model(0.1, (10.0,), exponential),
            lambda p: price_default_free(0.0, 1.0, p).price,
            lambda o: o.price_default_free(1.0),
        ),
        ValidationCheck(
            "survival(T=1,beta=0.5,x=1,d=1)",
            _model(0.5, (1.0,)),
            lambda p: survival_probability(1.0, p),
            lambda o: o.survival_fraction(1.0),
        ),
        _laplace_check(0.2, 0.5, 1.0, unit_diagonal, expect=REJECT),
    ]
    return checks


def _evaluate(check: ValidationCheck, cfg: McConfig, printed_sign: bool, workers: Optional[int]) -> ValidationRow:
    reference_fn = check.closed_form
    if printed_sign and check.printed_sign is not None:
        reference_fn = check.printed_sign
    reference = float(reference_fn(check.params))

    estimate = check.estimate(MonteCarloOracle(check.params, cfg, workers))
    z = estimate.z_score(reference)
    if check.expect == REJECT:
        passed = abs(z) >= Config.SIGN_REJECTION_Z
    else:
        passed = abs(z) <= Config.VALIDATION_Z_LIMIT
    LOGGER.info("%s: closed=%r mc=%r se=%r z=%.2f %s", check.quantity, reference, estimate.mean,
                estimate.std_error, z, "ok" if passed else "FAIL")
    return ValidationRow(
        quantity=check.quantity,
        closed_form=reference,
        mc_mean=estimate.mean,
        std_error=estimate.std_error,
        z_score=z,
        passed=passed,
        expect=check.expect,
    )


def run_validation(
    cfg: McConfig,
    checks: Optional[Sequence[ValidationCheck]] = None,
    printed_sign: bool = False,
    workers: Optional[int] = None,
) -> ValidationReport:
    """Run every check against one Monte Carlo configuration.

    With ``printed_sign`` the printed minus-sign Laplace formula stands in for
    the corrected one wherever a check carries both, so the suite must fail.
    """
    checks = default_checks() if checks is None else list(checks)
    rows = tuple(_evaluate(check, cfg, printed_sign, workers) for check in checks)
    return ValidationReport(rows=rows)


def write_report_csv(report: ValidationReport, stream: TextIO) -> int:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(REPORT_HEADER)
    for row in report.rows:
        writer.writerow((
            row.quantity,
            repr(row.closed_form),
            repr(row.mc_mean),
            repr(row.std_error),
            repr(row.z_score),
            "true" if row.passed else "false",
            row.expect,
        ))
    return len(report.rows)


def verdict_line(report: ValidationReport) -> str:
    if report.passed:
        return f"validation: PASSED ({len(report.rows)} checks)"
    names = ", ".join(row.quantity for row in report.failures)
    return f"validation: FAILED ({len(report.failures)} of {len(report.rows)} checks): {names}"
