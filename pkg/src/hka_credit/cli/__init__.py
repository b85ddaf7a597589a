"""
Command line module.

Contains:
- Scenario file parsing into validated model objects
- The closed form versus Monte Carlo validation suite
- The ``hka-credit`` entry point with price, curve and validate commands
"""

from .app import CreditCli, build_parser, main
from .scenario import GridSpec, ScenarioConfig, load_scenario, parse_scenario
from .validation import ValidationReport, ValidationRow, default_checks, run_validation

__all__ = [
    'CreditCli',
    'GridSpec',
    'ScenarioConfig',
    'ValidationReport',
    'ValidationRow',
    'build_parser',
    'default_checks',
    'load_scenario',
    'main',
    'parse_scenario',
    'run_validation',
]
