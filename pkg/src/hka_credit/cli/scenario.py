#!/usr/bin/env python3
"""
Scenario files for the command line.

Grammar: one ``section.key = value`` per line, ``#`` starts a comment, blank
lines are ignored. Example::

    model.beta = 0.1
    model.dim = 1
    model.x0 = 0.01
    model.lambda.family = exponential
    model.lambda.c = 0.1
    grid.min = 1
    grid.max = 10
    grid.count = 10
    curve.sweep = x0
    curve.values = 0.01, 10, 20, 30

Every problem is reported as a ConfigError naming the offending key.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..config import Config
from ..curves import CURVE_WRITERS
from ..errors import ConfigError, ModelDomainError
from ..models import McConfig, QuadraticModelParams
from ..timechange import time_change_from_parameters


LOGGER = logging.getLogger(__name__)

KNOWN_KEYS = frozenset({
    "model.beta",
    "model.dim",
    "model.x0",
    "model.horizon",
    "model.lambda.family",
    "model.lambda.c",
    "model.lambda.p",
    "model.lambda.a",
    "model.lambda.b",
    "grid.min",
    "grid.max",
    "grid.count",
    "curve.sweep",
    "curve.values",
    "spread.h",
    "mc.n_paths",
    "mc.n_steps",
    "mc.seed",
    "mc.antithetic",
    "output.path",
    "output.format",
})

SWEEPS = ("none", "beta", "x0")
_LIST_SPLIT = re.compile(r"[,\s]+")


@dataclass(frozen=True)
class GridSpec:
    """Equispaced maturity grid [minimum, maximum] with ``count`` points."""

    minimum: float
    maximum: float
    count: int

    def maturities(self) -> Tuple[float, ...]:
        if self.count == 1:
            return (self.minimum,)
        return tuple(float(m) for m in np.linspace(self.minimum, self.maximum, self.count))


@dataclass(frozen=True)
class ScenarioConfig:
    """A parsed scenario: model, maturity grid, sweep, Monte Carlo and output settings."""

    model: QuadraticModelParams
    grid: Optional[GridSpec]
    mc: McConfig
    sweep: str = "none"
    sweep_values: Tuple[float, ...] = ()
    spread_h: Optional[float] = None
    output_path: Optional[str] = None
    output_format: str = "csv"

    def scenarios(self) -> List[Tuple[str, QuadraticModelParams]]:
        """(label, params) per curve, in sweep order."""
        if self.sweep == "beta":
            return [(f"beta={v:g}", _rebuild(self.model.with_beta, v, "curve.values")) for v in self.sweep_values]
        if self.sweep == "x0":
            return [
                (f"x={v:g}", _rebuild(self.model.with_state, _pad(v, self.model.dim), "curve.values"))
                for v in self.sweep_values
            ]
        return [("base", self.model)]

    def require_grid(self) -> GridSpec:
        if self.grid is None:
            raise ConfigError("grid.count", "curve commands need grid.min, grid.max and grid.count")
        return self.grid


def _rebuild(factory, value, key):
    try:
        return factory(value)
    except ModelDomainError as exc:
        raise ConfigError(key, str(exc)) from exc


def _pad(value: float, dim: int) -> Tuple[float, ...]:
    return (float(value),) + (0.0,) * (dim - 1)


# ---------------------------------------------------------------------------
# Raw parsing
# ---------------------------------------------------------------------------


def parse_key_values(text: str) -> Dict[str, str]:
    """Split scenario text into a key -> raw value mapping."""
    entries: Dict[str, str] = {}
    for number, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {number}", f"expected 'section.key = value', got {line!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        key = key.lower()
        if key not in KNOWN_KEYS:
            raise ConfigError(key, "unknown key")
        if key in entries:
            raise ConfigError(key, "duplicate key")
        if not value:
            raise ConfigError(key, "empty value")
        entries[key] = value
    return entries


def _float(entries: Dict[str, str], key: str, default: Optional[float] = None) -> Optional[float]:
    if key not in entries:
        return default
    try:
        return float(entries[key])
    except ValueError:
        raise ConfigError(key, f"not a number: {entries[key]!r}") from None


def _int(entries: Dict[str, str], key: str, default: Optional[int] = None) -> Optional[int]:
    if key not in entries:
        return default
    try:
        return int(entries[key])
    except ValueError:
        raise ConfigError(key, f"not an integer: {entries[key]!r}") from None


def _bool(entries: Dict[str, str], key: str, default: bool) -> bool:
    if key not in entries:
        return default
    token = entries[key].lower()
    if token in {"true", "yes", "1", "on"}:
        return True
    if token in {"false", "no", "0", "off"}:
        return False
    raise ConfigError(key, f"not a boolean: {entries[key]!r}")


def _floats(entries: Dict[str, str], key: str) -> Tuple[float, ...]:
    if key not in entries:
        return ()
    tokens = [tok for tok in _LIST_SPLIT.split(entries[key]) if tok]
    try:
        return tuple(float(tok) for tok in tokens)
    except ValueError:
        raise ConfigError(key, f"not a list of numbers: {entries[key]!r}") from None


# ---------------------------------------------------------------------------
# Typed construction
# ---------------------------------------------------------------------------


def _build_model(entries: Dict[str, str]) -> QuadraticModelParams:
    if "model.beta" not in entries:
        raise ConfigError("model.beta", "required key missing")
    if "model.lambda.family" not in entries:
        raise ConfigError("model.lambda.family", "required key missing")

    dim = _int(entries, "model.dim", 1)
    x0 = _floats(entries, "model.x0") or (0.0,)
    if len(x0) == 1 and dim is not None and dim > 1:
        x0 = _pad(x0[0], dim)

    lambda_params = {
        name: _float(entries, f"model.lambda.{name}")
        for name in ("c", "p", "a", "b")
        if f"model.lambda.{name}" in entries
    }
    try:
        time_change = time_change_from_parameters(entries["model.lambda.family"].lower(), lambda_params)
        return QuadraticModelParams(
            beta=_float(entries, "model.beta"),
            dim=dim,
            x0=x0,
            time_change=time_change,
            horizon=_float(entries, "model.horizon", Config.DEFAULT_HORIZON),
        )
    except ModelDomainError as exc:
        raise ConfigError(exc.key, exc.reason) from exc


def _build_grid(entries: Dict[str, str]) -> Optional[GridSpec]:
    if not any(key.startswith("grid.") for key in entries):
        return None
    for key in ("grid.min", "grid.max", "grid.count"):
        if key not in entries:
            raise ConfigError(key, "required key missing")
    grid = GridSpec(
        minimum=_float(entries, "grid.min"),
        maximum=_float(entries, "grid.max"),
        count=_int(entries, "grid.count"),
    )
    if grid.count < 1:
        raise ConfigError("grid.count", f"grid is empty (count={grid.count})")
    if not grid.minimum > 0.0:
        raise ConfigError("grid.min", f"maturities must be positive, got {grid.minimum!r}")
    if grid.count > 1 and not grid.maximum > grid.minimum:
        raise ConfigError("grid.max", f"must exceed grid.min ({grid.minimum!r})")
    return grid


def _build_mc(entries: Dict[str, str], seed_override: Optional[int]) -> McConfig:
    seed = seed_override if seed_override is not None else _int(entries, "mc.seed", Config.MC_DEFAULT_SEED)
    try:
        return McConfig(
            n_paths=_int(entries, "mc.n_paths", Config.MC_DEFAULT_PATHS),
            n_steps=_int(entries, "mc.n_steps", Config.MC_DEFAULT_STEPS),
            seed=seed,
            antithetic=_bool(entries, "mc.antithetic", False),
        )
    except ModelDomainError as exc:
        raise ConfigError(exc.key, exc.reason) from exc


def parse_scenario(text: str, seed_override: Optional[int] = None) -> ScenarioConfig:
    """Parse scenario text into validated model objects."""
    entries = parse_key_values(text)

    sweep = entries.get("curve.sweep", "none").lower()
    if sweep not in SWEEPS:
        raise ConfigError("curve.sweep", f"expected one of {', '.join(SWEEPS)}, got {sweep!r}")
    sweep_values = _floats(entries, "curve.values")
    if sweep != "none" and not sweep_values:
        raise ConfigError("curve.values", f"sweep over {sweep} needs at least one value")

    spread_h = _float(entries, "spread.h")
    if spread_h is not None and not spread_h > 0.0:
        raise ConfigError("spread.h", f"must be positive, got {spread_h!r}")

    output_format = entries.get("output.format", "csv").lower()
    if output_format not in CURVE_WRITERS:
        supported = ", ".join(sorted(CURVE_WRITERS))
        raise ConfigError("output.format", f"expected one of {supported}, got {output_format!r}")

    scenario = ScenarioConfig(
        model=_build_model(entries),
        grid=_build_grid(entries),
        mc=_build_mc(entries, seed_override),
        sweep=sweep,
        sweep_values=sweep_values,
        spread_h=spread_h,
        output_path=entries.get("output.path"),
        output_format=output_format,
    )
    LOGGER.debug("Parsed scenario with %d curve(s)", len(scenario.scenarios()))
    return scenario


def load_scenario(path: str, seed_override: Optional[int] = None) -> ScenarioConfig:
    """Read and parse a scenario file."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError("config", f"cannot read {path}: {exc.strerror or exc}") from exc
    except UnicodeDecodeError as exc:
        raise ConfigError("config", f"{path} is not UTF-8 text (byte {exc.start})") from exc
    return parse_scenario(text, seed_override)
