"""Output abstractions for the hka-credit command line."""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from typing import Protocol, TextIO


class IOInterface(Protocol):
    """Protocol for result and diagnostic output channels."""

    def info(self, message: str) -> None:
        """Emit a result line to the user."""

    def warning(self, message: str) -> None:
        """Emit a warning message to the user."""

    def error(self, message: str) -> None:
        """Emit a diagnostic line to the user."""


@dataclass
class ConsoleIO(IOInterface):
    """Console-backed implementation: results on stdout, diagnostics on stderr."""

    stream: TextIO = field(default_factory=lambda: sys.stdout)
    error_stream: TextIO = field(default_factory=lambda: sys.stderr)

    def info(self, message: str) -> None:
        print(message, file=self.stream)

    def warning(self, message: str) -> None:
        print(message, file=self.error_stream)

    def error(self, message: str) -> None:
        print(message, file=self.error_stream)
