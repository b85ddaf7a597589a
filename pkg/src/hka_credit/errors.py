"""Exception hierarchy for hka-credit."""

from __future__ import annotations


class HKAError(Exception):
    """Base error carrying the offending key and a human readable reason."""

    def __init__(self, key: str, reason: str) -> None:
        super().__init__(f"{key}: {reason}")
        self.key = key
        self.reason = reason


class ModelDomainError(HKAError, ValueError):
    """An argument lies outside the domain of a closed form or estimator."""


class ConfigError(HKAError):
    """A scenario file could not be turned into valid model objects."""


class McResourceError(HKAError, MemoryError):
    """Stored-path simulation would exceed the configured memory budget."""
