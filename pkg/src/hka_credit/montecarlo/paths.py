#!/usr/bin/env python3
"""
Wiener path simulation with Cox default times.

RANDOM STREAMS: paths are grouped in fixed blocks of ``Config.MC_BLOCK_SIZE``.
Block k draws from its own generator seeded by SeedSequence(seed,
spawn_key=(k,)), so a block's numbers depend only on (seed, k). Blocks may run
on any number of worker threads and are reassembled in block order, which
makes every estimate bit-identical to a sequential run.

Within a block the draw order is fixed:
    1. unit-exponential default thresholds, one per path
    2. the Gaussian jump to the window start, scaled by sqrt(window_start)
    3. one Gaussian increment per grid interval, scaled by sqrt(dt)
Antithetic blocks draw half the Gaussians and append their negation; the
pair of path i is path i + size/2.

A refined block runs on 2 * n_steps intervals and also keeps the trapezoid
hazard over every second grid point. Both hazards then come from the same
increments, which is exactly the n_steps discretisation of the same path.

The state is simulated exactly (Gaussian increments); the only discretisation
error is the trapezoid quadrature of int V(X_s) ds. Default happens when the
integrated hazard first exceeds the path's threshold, located by linear
interpolation between grid points.
"""

from __future__ import annotations

import logging
import math
import os
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from joblib import Parallel, cpu_count, delayed

from ..config import Config
from ..errors import McResourceError, ModelDomainError
from ..models import DefaultScenario, McConfig, QuadraticModelParams


LOGGER = logging.getLogger(__name__)


def block_generator(seed: int, block_index: int) -> np.random.Generator:
    """Independent generator for one block of paths."""
    sequence = np.random.SeedSequence(entropy=seed, spawn_key=(block_index,))
    return np.random.Generator(np.random.PCG64(sequence))


def block_layout(n_paths: int, block_size: int = Config.MC_BLOCK_SIZE) -> List[Tuple[int, int]]:
    """(block index, block size) pairs covering n_paths."""
    return [
        (index, min(block_size, n_paths - start))
        for index, start in enumerate(range(0, n_paths, block_size))
    ]


def resolve_workers() -> int:
    """Worker count from ``HKA_THREADS``, defaulting to the available CPUs."""
    raw = os.getenv(Config.THREADS_ENV)
    if raw:
        try:
            workers = int(raw)
        except ValueError:
            LOGGER.warning("Ignoring non-integer %s=%r", Config.THREADS_ENV, raw)
        else:
            if workers >= 1:
                return workers
            LOGGER.warning("Ignoring non-positive %s=%r", Config.THREADS_ENV, raw)
    return max(1, cpu_count())


@dataclass
class PathBlock:
    """Terminal state, integrated hazard and default times of one block."""

    x_end: np.ndarray
    hazard: np.ndarray
    default_time: np.ndarray
    grid: Optional[np.ndarray] = None
    state_path: Optional[np.ndarray] = None
    hazard_path: Optional[np.ndarray] = None
    coarse_hazard: Optional[np.ndarray] = None

    @property
    def x_end_norm_sq(self) -> np.ndarray:
        return np.einsum("ij,ij->i", self.x_end, self.x_end)


def simulate_block(
    block_index: int,
    size: int,
    params: QuadraticModelParams,
    cfg: McConfig,
    window_start: float,
    window_end: float,
    beta: Optional[float] = None,
    record: bool = False,
    refine: bool = False,
) -> PathBlock:
    """
    Simulate one block of paths over [window_start, window_end].

    With ``refine`` the grid has 2 * cfg.n_steps intervals and
    ``coarse_hazard`` holds the cfg.n_steps trapezoid of the same paths.
    """
    rng = block_generator(cfg.seed, block_index)
    dim = params.dim
    beta = params.beta if beta is None else beta
    half = size // 2 if cfg.antithetic else size
    half_beta_sq = 0.5 * beta * beta

    thresholds = rng.standard_exponential(size)

    def gaussian(scale: float) -> np.ndarray:
        z = rng.standard_normal((half, dim))
        if cfg.antithetic:
            z = np.concatenate((z, -z))
        return scale * z

    n_steps = 2 * cfg.n_steps if refine else cfg.n_steps
    dt = (window_end - window_start) / n_steps
    sqrt_dt = math.sqrt(dt)

    x = np.asarray(params.x0, dtype=float) + gaussian(math.sqrt(window_start))
    v_prev = half_beta_sq * np.einsum("ij,ij->i", x, x)
    hazard = np.zeros(size)
    default_time = np.full(size, math.inf)
    alive = np.ones(size, dtype=bool)
    coarse_hazard = np.zeros(size) if refine else None
    v_coarse = v_prev

    state_path = hazard_path = grid = None
    if record:
        grid = np.linspace(window_start, window_end, n_steps + 1)
        state_path = np.empty((n_steps + 1, size, dim))
        hazard_path = np.empty((n_steps + 1, size))
        state_path[0] = x
        hazard_path[0] = hazard

    for step in range(n_steps):
        x = x + gaussian(sqrt_dt)
        v = half_beta_sq * np.einsum("ij,ij->i", x, x)
        advanced = hazard + 0.5 * dt * (v_prev + v)
        crossed = alive & (advanced >= thresholds) & (advanced > hazard)
        if crossed.any():
            frac = (thresholds[crossed] - hazard[crossed]) / (advanced[crossed] - hazard[crossed])
            default_time[crossed] = window_start + (step + frac) * dt
            alive &= ~crossed
        hazard = advanced
        v_prev = v
        if refine and step % 2 == 1:
            coarse_hazard += dt * (v_coarse + v)
            v_coarse = v
        if record:
            state_path[step + 1] = x
            hazard_path[step + 1] = hazard

    return PathBlock(
        x_end=x,
        hazard=hazard,
        default_time=default_time,
        grid=grid,
        state_path=state_path,
        hazard_path=hazard_path,
        coarse_hazard=coarse_hazard,
    )


def run_blocks(
    work: Callable[[int, int], np.ndarray],
    cfg: McConfig,
    workers: Optional[int] = None,
) -> List[np.ndarray]:
    """Run ``work(block_index, size)`` over every block; results come back in block order."""
    layout = block_layout(cfg.n_paths)
    n_jobs = min(workers or resolve_workers(), len(layout))
    LOGGER.debug("Running %d blocks on %d worker(s)", len(layout), n_jobs)
    return Parallel(n_jobs=n_jobs, backend="threading")(
        delayed(work)(index, size) for index, size in layout
    )


def simulate_paths(
    horizon: float,
    params: QuadraticModelParams,
    cfg: McConfig,
    workers: Optional[int] = None,
    memory_budget_bytes: int = Config.MC_PATH_MEMORY_BUDGET_BYTES,
) -> List[DefaultScenario]:
    """
    Simulate full state paths, integrated hazards and Cox default times on [0, horizon].

    Raises:
        ModelDomainError: if horizon is not positive.
        McResourceError: if storing every path would exceed the memory budget;
            the streaming estimators accumulate per path instead.
    """
    horizon = float(horizon)
    if not math.isfinite(horizon) or horizon <= 0.0:
        raise ModelDomainError("horizon", f"must be positive, got {horizon!r}")
    needed = cfg.n_paths * (cfg.n_steps + 1) * (params.dim + 1) * 8
    if needed > memory_budget_bytes:
        raise McResourceError(
            "mc.n_paths",
            f"storing {cfg.n_paths} paths x {cfg.n_steps + 1} points needs {needed} bytes "
            f"(budget {memory_budget_bytes}); use a streaming estimator",
        )

    def work(index: int, size: int) -> Sequence[DefaultScenario]:
        block = simulate_block(index, size, params, cfg, 0.0, horizon, record=True)
        return [
            DefaultScenario(
                grid=block.grid,
                state_path=block.state_path[:, i, :],
                integrated_hazard=block.hazard_path[:, i],
                default_time=float(block.default_time[i]),
            )
            for i in range(size)
        ]

    scenarios: List[DefaultScenario] = []
    for chunk in run_blocks(work, cfg, workers):
        scenarios.extend(chunk)
    LOGGER.debug("Simulated %d scenarios on [0, %s]", len(scenarios), horizon)
    return scenarios
