"""Logging utilities for hka-credit."""

from __future__ import annotations

import logging
import os
import sys
from typing import Mapping, Optional

from .config import Config

PACKAGE_LOGGER = "hka_credit"

_LEVELS: Mapping[str, int] = {
    "full": logging.DEBUG,
    "info": logging.INFO,
    "critical": logging.WARNING,
    "silent": logging.ERROR,
}


def resolve_log_level(name: Optional[str]) -> Optional[int]:
    """Level for an ``HKA_LOG`` name, or None when the name is unknown."""
    if name is None:
        return logging.WARNING
    return _LEVELS.get(name.strip().lower())


def setup_logging(default_level: Optional[str] = None) -> logging.Logger:
    """
    Configure hka-credit logging from ``HKA_LOG`` (full, info, critical, silent).

    Records go to stderr so CSV results on stdout stay byte-stable. The level
    is applied to the package logger, so repeated calls (one per CLI run) take
    effect even after the root handler exists.
    """
    requested = default_level or os.getenv(Config.LOG_ENV)
    level = resolve_log_level(requested)
    logging.basicConfig(
        level=logging.WARNING,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    logger = logging.getLogger(PACKAGE_LOGGER)
    logger.setLevel(logging.WARNING if level is None else level)
    if level is None:
        logger.warning("Ignoring unknown %s=%r", Config.LOG_ENV, requested)
    return logger
