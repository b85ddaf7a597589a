#!/usr/bin/env python3
"""
Configuration constants for the killed heat-kernel credit library.

These values control:
- Numerical tolerances for shape diagnostics and limit checks
- Time-change validation and finite-difference step sizing
- Monte Carlo blocking, memory budget and acceptance thresholds
- Environment variables read by the command line front end
"""


class Config:
    """Application configuration constants."""

    # Shape diagnostics
    TIE_TOLERANCE = 1e-12  # Successive differences within this are ties

    # Time-change validation
    TIME_CHANGE_GRID_POINTS = 10001  # Equispaced samples over [0, horizon]
    DEFAULT_HORIZON = 30.0           # Working horizon checked on construction

    # Credit spread / forward rate differentiation
    SPREAD_STEP_SCALE = 1e-4  # Default h = SPREAD_STEP_SCALE * max(1, T)
    RICHARDSON_ORDER = 2      # Leading error order of the central stencil

    # Monte Carlo execution
    MC_BLOCK_SIZE = 4096                           # Paths per random substream
    MC_PATH_MEMORY_BUDGET_BYTES = 512 * 1024 ** 2  # Cap for stored full paths
    MC_DEFAULT_PATHS = 100_000
    MC_DEFAULT_STEPS = 1_000
    MC_DEFAULT_SEED = 20110401

    # Validation verdicts
    VALIDATION_Z_LIMIT = 3.0   # |z| allowed for a closed form to pass
    SIGN_REJECTION_Z = 10.0    # |z| required to reject the printed-sign Lemma

    # Environment
    THREADS_ENV = "HKA_THREADS"
    LOG_ENV = "HKA_LOG"
