#!/usr/bin/env python3
"""
Scenario file tests: grammar, typed construction and error keys.
"""

import os
import sys
import tempfile
import textwrap
import unittest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))
from hka_credit import ConfigError, PowerLaw, ScaledExponential
from hka_credit.cli import load_scenario, parse_scenario
from hka_credit.cli.scenario import parse_key_values

CONFIG_DIR = os.path.join(os.path.dirname(__file__), '..', 'configs')

MINIMAL = """
model.beta = 0.5
model.lambda.family = power
"""


def scenario_text(body):
    return textwrap.dedent(body).strip() + "\n"


class TestGrammar(unittest.TestCase):
    """section.key = value lines with # comments"""

    def test_comments_and_blank_lines(self):
        entries = parse_key_values("# header\n\nmodel.beta = 0.5  # trailing\n  model.dim=2\n")
        self.assertEqual(entries, {"model.beta": "0.5", "model.dim": "2"})

    def test_line_without_equals(self):
        with self.assertRaises(ConfigError) as ctx:
            parse_key_values("model.beta 0.5\n")
        self.assertEqual(ctx.exception.key, "line 1")

    def test_unknown_key(self):
        with self.assertRaises(ConfigError) as ctx:
            parse_key_values("model.gamma = 1\n")
        self.assertEqual(ctx.exception.key, "model.gamma")

    def test_duplicate_key(self):
        with self.assertRaises(ConfigError) as ctx:
            parse_key_values("model.beta = 1\nmodel.beta = 2\n")
        self.assertEqual(ctx.exception.key, "model.beta")
        self.assertIn("duplicate", ctx.exception.reason)

    def test_empty_value(self):
        with self.assertRaises(ConfigError) as ctx:
            parse_key_values("model.beta =\n")
        self.assertEqual(ctx.exception.key, "model.beta")


class TestScenarioConstruction(unittest.TestCase):
    """Typed model, grid, sweep and Monte Carlo settings"""

    def test_minimal_defaults(self):
        scenario = parse_scenario(MINIMAL)
        self.assertEqual(scenario.model.beta, 0.5)
        self.assertEqual(scenario.model.dim, 1)
        self.assertEqual(scenario.model.x0, (0.0,))
        self.assertEqual(scenario.model.time_change, PowerLaw(c=1.0, p=1.0))
        self.assertIsNone(scenario.grid)
        self.assertEqual(scenario.mc.n_paths, 100_000)
        self.assertEqual(scenario.scenarios(), [("base", scenario.model)])

    def test_scalar_state_is_padded(self):
        scenario = parse_scenario(MINIMAL + "model.dim = 3\nmodel.x0 = 2\n")
        self.assertEqual(scenario.model.x0, (2.0, 0.0, 0.0))

    def test_vector_state(self):
        scenario = parse_scenario(MINIMAL + "model.dim = 2\nmodel.x0 = 0.6, 0.8\n")
        self.assertAlmostEqual(scenario.model.x_norm_sq, 1.0, places=15)

    def test_state_dimension_mismatch(self):
        with self.assertRaises(ConfigError) as ctx:
            parse_scenario(MINIMAL + "model.dim = 3\nmodel.x0 = 1, 2\n")
        self.assertEqual(ctx.exception.key, "model.x0")

    def test_missing_required_keys(self):
        with self.assertRaises(ConfigError) as ctx:
            parse_scenario("model.lambda.family = power\n")
        self.assertEqual(ctx.exception.key, "model.beta")
        with self.assertRaises(ConfigError) as ctx:
            parse_scenario("model.beta = 0.1\n")
        self.assertEqual(ctx.exception.key, "model.lambda.family")

    def test_bad_numbers(self):
        with self.assertRaises(ConfigError) as ctx:
            parse_scenario(MINIMAL + "model.horizon = soon\n")
        self.assertEqual(ctx.exception.key, "model.horizon")
        with self.assertRaises(ConfigError) as ctx:
            parse_scenario(MINIMAL + "mc.n_paths = 1e5\n")
        self.assertEqual(ctx.exception.key, "mc.n_paths")

    def test_unknown_lambda_family(self):
        with self.assertRaises(ConfigError) as ctx:
            parse_scenario("model.beta = 0.1\nmodel.lambda.family = cubic\n")
        self.assertEqual(ctx.exception.key, "model.lambda.family")

    def test_negative_beta(self):
        with self.assertRaises(ConfigError) as ctx:
            parse_scenario("model.beta = -1\nmodel.lambda.family = power\n")
        self.assertEqual(ctx.exception.key, "model.beta")

    def test_empty_grid(self):
        with self.assertRaises(ConfigError) as ctx:
            parse_scenario(MINIMAL + "grid.min = 1\ngrid.max = 10\ngrid.count = 0\n")
        self.assertEqual(ctx.exception.key, "grid.count")

    def test_partial_grid(self):
        with self.assertRaises(ConfigError) as ctx:
            parse_scenario(MINIMAL + "grid.min = 1\ngrid.count = 5\n")
        self.assertEqual(ctx.exception.key, "grid.max")

    def test_grid_maturities(self):
        scenario = parse_scenario(MINIMAL + "grid.min = 0.5\ngrid.max = 10\ngrid.count = 20\n")
        maturities = scenario.require_grid().maturities()
        self.assertEqual(len(maturities), 20)
        self.assertEqual(maturities[0], 0.5)
        self.assertEqual(maturities[-1], 10.0)

    def test_beta_sweep_labels(self):
        scenario = parse_scenario(MINIMAL + "curve.sweep = beta\ncurve.values = 0.1 0.5, 1.0\n")
        labels = [label for label, _ in scenario.scenarios()]
        self.assertEqual(labels, ["beta=0.1", "beta=0.5", "beta=1"])
        self.assertEqual(scenario.scenarios()[1][1].beta, 0.5)

    def test_state_sweep_needs_values(self):
        with self.assertRaises(ConfigError) as ctx:
            parse_scenario(MINIMAL + "curve.sweep = x0\n")
        self.assertEqual(ctx.exception.key, "curve.values")

    def test_unknown_sweep(self):
        with self.assertRaises(ConfigError) as ctx:
            parse_scenario(MINIMAL + "curve.sweep = dim\n")
        self.assertEqual(ctx.exception.key, "curve.sweep")

    def test_monte_carlo_settings_and_seed_override(self):
        text = MINIMAL + "mc.n_paths = 1000\nmc.n_steps = 50\nmc.seed = 9\nmc.antithetic = yes\n"
        scenario = parse_scenario(text)
        self.assertEqual((scenario.mc.n_paths, scenario.mc.n_steps, scenario.mc.seed), (1000, 50, 9))
        self.assertTrue(scenario.mc.antithetic)
        self.assertEqual(parse_scenario(text, seed_override=42).mc.seed, 42)

    def test_antithetic_odd_paths(self):
        with self.assertRaises(ConfigError) as ctx:
            parse_scenario(MINIMAL + "mc.n_paths = 1001\nmc.antithetic = true\n")
        self.assertEqual(ctx.exception.key, "mc.n_paths")

    def test_output_format(self):
        with self.assertRaises(ConfigError) as ctx:
            parse_scenario(MINIMAL + "output.format = json\n")
        self.assertEqual(ctx.exception.key, "output.format")

    def test_nonpositive_step(self):
        with self.assertRaises(ConfigError) as ctx:
            parse_scenario(MINIMAL + "spread.h = 0\n")
        self.assertEqual(ctx.exception.key, "spread.h")


class TestScenarioFiles(unittest.TestCase):
    """Files on disk, including the shipped configurations"""

    def test_missing_file(self):
        with self.assertRaises(ConfigError) as ctx:
            load_scenario(os.path.join(tempfile.gettempdir(), "no-such-scenario.cfg"))
        self.assertEqual(ctx.exception.key, "config")

    def test_binary_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "binary.cfg")
            with open(path, "wb") as handle:
                handle.write(b"\xff\xfe\x00model.beta = 0.5\n")
            with self.assertRaises(ConfigError) as ctx:
                load_scenario(path)
        self.assertEqual(ctx.exception.key, "config")
        self.assertIn("UTF-8", ctx.exception.reason)

    def test_round_trip_through_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "scenario.cfg")
            with open(path, "w", encoding="utf-8") as handle:
                handle.write(scenario_text("""
                    model.beta = 0.2
                    model.lambda.family = exponential
                    model.lambda.c = 0.1
                """))
            scenario = load_scenario(path)
        self.assertEqual(scenario.model.time_change, ScaledExponential(c=0.1))

    def test_shipped_configurations_parse(self):
        expected_curves = {
            "mild_killing_yield.cfg": 4,
            "strong_killing_yield.cfg": 4,
            "beta_sweep_spread.cfg": 10,
            "validate.cfg": 1,
        }
        for name, count in expected_curves.items():
            with self.subTest(config=name):
                scenario = load_scenario(os.path.join(CONFIG_DIR, name))
                self.assertEqual(len(scenario.scenarios()), count)

    def test_reference_state_sweep(self):
        scenario = load_scenario(os.path.join(CONFIG_DIR, "strong_killing_yield.cfg"))
        self.assertEqual(scenario.model.beta, 1.8)
        self.assertEqual(
            [label for label, _ in scenario.scenarios()],
            ["x=0.01", "x=10", "x=20", "x=30"],
        )


if __name__ == '__main__':
    unittest.main()
