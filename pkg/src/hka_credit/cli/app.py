#!/usr/bin/env python3
"""
hka-credit command line.

    hka-credit price        --config FILE --T 5 [--t 0] [--survived true]
    hka-credit yield-curve  --config FILE [--out curves.csv]
    hka-credit spread-curve --config FILE [--out curves.csv]
    hka-credit validate     --config FILE [--seed N] [--out report.csv]

Exit codes: 0 success, 1 validation failure, 2 configuration or usage
error, 3 model-domain error. Failures print one ``error: <key>: <reason>``
line on stderr.
"""

from __future__ import annotations

import argparse
import io
import logging
import sys
from contextlib import contextmanager
from typing import Callable, Dict, Iterator, List, Optional, Sequence, TextIO

from .. import __version__
from ..errors import ConfigError, HKAError, McResourceError, ModelDomainError
from ..io import ConsoleIO, IOInterface
from ..logging_utils import setup_logging
from ..curves import CURVE_WRITERS, spread_curve, yield_curve
from ..models import Curve
from ..pricing import credit_spread, default_step, price_default_free, price_defaultable
from .scenario import ScenarioConfig, load_scenario
from .validation import run_validation, verdict_line, write_report_csv


LOGGER = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VALIDATION_FAILED = 1
EXIT_CONFIG_ERROR = 2
EXIT_DOMAIN_ERROR = 3


class _ArgumentParser(argparse.ArgumentParser):
    """Turns usage errors into ConfigError so they share the one-line diagnostic."""

    def error(self, message: str) -> None:  # type: ignore[override]
        raise ConfigError("argv", message)


def _parse_bool(text: str) -> bool:
    token = text.strip().lower()
    if token in {"true", "yes", "1"}:
        return True
    if token in {"false", "no", "0"}:
        return False
    raise argparse.ArgumentTypeError(f"expected true or false, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="hka-credit", description="Killed-HKA defaultable bond pricing")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", metavar="COMMAND")
    commands.required = True

    def add_command(name: str, help_text: str) -> argparse.ArgumentParser:
        sub = commands.add_parser(name, help=help_text)
        sub.add_argument("--config", required=True, help="scenario file (section.key = value)")
        sub.add_argument("--seed", type=int, default=None, help="override mc.seed")
        return sub

    price = add_command("price", "price one defaultable and default-free bond")
    price.add_argument("--t", type=float, default=0.0, help="valuation time (default 0)")
    price.add_argument("--T", type=float, required=True, help="maturity")
    price.add_argument("--survived", type=_parse_bool, default=True, help="firm alive at t (default true)")

    for name, help_text in (
        ("yield-curve", "default-free yield curves as CSV"),
        ("spread-curve", "credit spread curves as CSV"),
    ):
        sub = add_command(name, help_text)
        sub.add_argument("--out", default=None, help="output CSV path (default: output.path or stdout)")

    validate = add_command("validate", "closed forms against Monte Carlo")
    validate.add_argument("--out", default=None, help="report CSV path (default: stdout)")
    validate.add_argument("--debug-printed-sign", action="store_true", help=argparse.SUPPRESS)
    return parser


@contextmanager
def _output(path: Optional[str], emit: Callable[[str], None]) -> Iterator[TextIO]:
    """Open ``path`` for writing, or buffer and hand the text to ``emit`` when no path is given."""
    if path is None:
        buffer = io.StringIO()
        yield buffer
        text = buffer.getvalue().rstrip("\n")
        if text:
            emit(text)
        return
    try:
        handle = open(path, "w", encoding="utf-8", newline="")
    except OSError as exc:
        raise ConfigError("output.path", f"cannot write {path}: {exc.strerror or exc}") from exc
    with handle:
        yield handle


class CreditCli:
    """Command dispatcher bound to an output channel."""

    def __init__(self, io_interface: Optional[IOInterface] = None) -> None:
        self.io = io_interface or ConsoleIO()

    def _info(self, message: str) -> None:
        self.io.info(message)

    def _warning(self, message: str) -> None:
        self.io.warning(message)

    def _error(self, message: str) -> None:
        self.io.error(message)

    # ------------------------------------------------------------------
    # Commands
    # ------------------------------------------------------------------
    def price(self, args: argparse.Namespace, scenario: ScenarioConfig) -> int:
        params = scenario.model
        t, T = args.t, args.T
        defaultable = price_defaultable(t, T, args.survived, params)
        default_free = price_default_free(t, T, params)
        spread = credit_spread(t, T, params, self._spread_step(t, T, scenario.spread_h))
        self._info(
            f"t={t!r} T={T!r} survived={str(args.survived).lower()} "
            f"defaultable={defaultable.price!r} default_free={default_free.price!r} "
            f"spread={spread.spread!r}"
        )
        return EXIT_OK

    def _spread_step(self, t: float, T: float, h: Optional[float]) -> float:
        """Differentiation step for the price command, halved into (t, T) when it reaches past t."""
        h = default_step(T) if h is None else h
        if T - h > t:
            return h
        shrunk = 0.5 * (T - t)
        self._warning(f"warning: spread.h: step {h!r} reaches past t={t!r}, using {shrunk!r}")
        return shrunk

    def _curves(self, builder: Callable[..., Curve], scenario: ScenarioConfig) -> List[Curve]:
        maturities = scenario.require_grid().maturities()
        kwargs = {"h": scenario.spread_h} if builder is spread_curve else {}
        return [builder(maturities, params, label=label, **kwargs) for label, params in scenario.scenarios()]

    def _write_curves(self, curves: List[Curve], scenario: ScenarioConfig, path: Optional[str]) -> int:
        writer = CURVE_WRITERS[scenario.output_format]
        with _output(path, self._info) as stream:
            rows = writer(curves, stream)
        LOGGER.info("Wrote %d rows for %d curve(s) to %s", rows, len(curves), path or "stdout")
        return EXIT_OK

    def yield_curve(self, args: argparse.Namespace, scenario: ScenarioConfig) -> int:
        curves = self._curves(yield_curve, scenario)
        return self._write_curves(curves, scenario, args.out or scenario.output_path)

    def spread_curve(self, args: argparse.Namespace, scenario: ScenarioConfig) -> int:
        curves = self._curves(spread_curve, scenario)
        return self._write_curves(curves, scenario, args.out or scenario.output_path)

    def validate(self, args: argparse.Namespace, scenario: ScenarioConfig) -> int:
        report = run_validation(scenario.mc, printed_sign=args.debug_printed_sign)
        with _output(args.out, self._info) as stream:
            write_report_csv(report, stream)
        self._info(verdict_line(report))
        if report.passed:
            return EXIT_OK
        self._error(f"error: validate: {len(report.failures)} check(s) outside tolerance")
        return EXIT_VALIDATION_FAILED

    # ------------------------------------------------------------------
    # Dispatch
    # ------------------------------------------------------------------
    def run(self, argv: Optional[Sequence[str]] = None) -> int:
        handlers: Dict[str, Callable[[argparse.Namespace, ScenarioConfig], int]] = {
            "price": self.price,
            "yield-curve": self.yield_curve,
            "spread-curve": self.spread_curve,
            "validate": self.validate,
        }
        try:
            args = build_parser().parse_args(argv)
            scenario = load_scenario(args.config, seed_override=args.seed)
            return handlers[args.command](args, scenario)
        except ConfigError as exc:
            self._error(f"error: {exc.key}: {exc.reason}")
            return EXIT_CONFIG_ERROR
        except (ModelDomainError, McResourceError) as exc:
            self._error(f"error: {exc.key}: {exc.reason}")
            return EXIT_DOMAIN_ERROR
        except HKAError as exc:  # pragma: no cover - every subclass is handled above
            self._error(f"error: {exc.key}: {exc.reason}")
            return EXIT_CONFIG_ERROR


def main(argv: Optional[Sequence[str]] = None, io_interface: Optional[IOInterface] = None) -> int:
    setup_logging()
    return CreditCli(io_interface).run(argv)


if __name__ == "__main__":
    sys.exit(main())
