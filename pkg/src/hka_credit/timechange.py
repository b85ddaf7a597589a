#!/usr/bin/env python3
"""
Time-change families for the state price density.

The time change enters the propagator's time argument (pi_t = q(lambda_t, X_t))
and is what bends the yield curve. Every family here is non-decreasing and
non-negative by construction of its parameter constraints. ``validate`` also
samples it on a dense grid over the working horizon.
"""

from __future__ import annotations

import logging
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Dict, Mapping, Type

import numpy as np

from .config import Config
from .errors import ModelDomainError


LOGGER = logging.getLogger(__name__)


def _require(condition: bool, key: str, reason: str) -> None:
    if not condition:
        raise ModelDomainError(key, reason)


def _finite_non_negative(value: float, key: str) -> float:
    value = float(value)
    _require(math.isfinite(value), key, f"must be finite, got {value!r}")
    _require(value >= 0.0, key, f"must be non-negative, got {value!r}")
    return value


class TimeChange(ABC):
    """A deterministic non-decreasing map lambda: [0, inf) -> [0, inf)."""

    family: str = ""

    @abstractmethod
    def __call__(self, t):
        """Evaluate lambda at a scalar or an array of times."""

    @abstractmethod
    def parameters(self) -> Dict[str, float]:
        """Return the family parameters keyed by their scenario-file names."""

    def describe(self) -> str:
        params = ", ".join(f"{k}={v!r}" for k, v in self.parameters().items())
        return f"{self.family}({params})"

    def validate(self, horizon: float) -> None:
        """Check finiteness, sign and monotonicity on a dense grid over [0, horizon]."""
        horizon = _finite_non_negative(horizon, "model.horizon")
        grid = np.linspace(0.0, horizon, Config.TIME_CHANGE_GRID_POINTS)
        with np.errstate(over="ignore", invalid="ignore"):
            values = np.asarray(self(grid), dtype=float)
        _require(
            bool(np.all(np.isfinite(values))),
            "model.lambda",
            f"{self.describe()} is not finite on [0, {horizon!r}]",
        )
        _require(
            bool(np.all(values >= 0.0)),
            "model.lambda",
            f"{self.describe()} takes negative values on [0, {horizon!r}]",
        )
        steps = np.diff(values)
        slack = Config.TIE_TOLERANCE * np.maximum(1.0, np.abs(values[1:]))
        _require(
            bool(np.all(steps >= -slack)),
            "model.lambda",
            f"{self.describe()} is decreasing somewhere on [0, {horizon!r}]",
        )
        LOGGER.debug("Validated time change %s on [0, %s]", self.describe(), horizon)


@dataclass(frozen=True)
class ScaledExponential(TimeChange):
    """lambda_t = c * e^t."""

    c: float
    family = "exponential"

    def __post_init__(self) -> None:
        object.__setattr__(self, "c", _finite_non_negative(self.c, "model.lambda.c"))

    def __call__(self, t):
        return self.c * np.exp(t) if isinstance(t, np.ndarray) else self.c * math.exp(t)

    def parameters(self) -> Dict[str, float]:
        return {"c": self.c}


@dataclass(frozen=True)
class PowerLaw(TimeChange):
    """lambda_t = c * t^p with p > 0."""

    c: float
    p: float
    family = "power"

    def __post_init__(self) -> None:
        object.__setattr__(self, "c", _finite_non_negative(self.c, "model.lambda.c"))
        p = float(self.p)
        _require(math.isfinite(p) and p > 0.0, "model.lambda.p", f"must be positive, got {p!r}")
        object.__setattr__(self, "p", p)

    def __call__(self, t):
        if isinstance(t, np.ndarray):
            return self.c * np.power(t, self.p)
        return self.c * float(t) ** self.p

    def parameters(self) -> Dict[str, float]:
        return {"c": self.c, "p": self.p}


@dataclass(frozen=True)
class Affine(TimeChange):
    """lambda_t = a + b * t."""

    a: float
    b: float
    family = "affine"

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", _finite_non_negative(self.a, "model.lambda.a"))
        object.__setattr__(self, "b", _finite_non_negative(self.b, "model.lambda.b"))

    def __call__(self, t):
        return self.a + self.b * t

    def parameters(self) -> Dict[str, float]:
        return {"a": self.a, "b": self.b}


TIME_CHANGE_FAMILIES: Mapping[str, Type[TimeChange]] = {
    ScaledExponential.family: ScaledExponential,
    PowerLaw.family: PowerLaw,
    Affine.family: Affine,
}


def time_change_from_parameters(family: str, parameters: Mapping[str, float]) -> TimeChange:
    """Build a family member from its name and scenario-file parameters."""
    try:
        cls = TIME_CHANGE_FAMILIES[family]
    except KeyError:
        known = ", ".join(sorted(TIME_CHANGE_FAMILIES))
        raise ModelDomainError(
            "model.lambda.family", f"unknown family {family!r} (expected one of {known})"
        ) from None
    if cls is ScaledExponential:
        return ScaledExponential(c=parameters.get("c", 1.0))
    if cls is PowerLaw:
        return PowerLaw(c=parameters.get("c", 1.0), p=parameters.get("p", 1.0))
    return Affine(a=parameters.get("a", 0.0), b=parameters.get("b", 1.0))
