#!/usr/bin/env python3
"""
Monte Carlo oracle tests: reproducibility, thread independence, agreement
with the closed forms, rejection of the printed-sign Laplace formula and the
stored-path simulator.

Agreement checks use a 4 standard error band on small fixed-seed runs; the
acceptance-size run lives in the slow suite.
"""

import math
import os
import sys
import unittest
from unittest.mock import patch

import numpy as np
import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))
from hka_credit import (
    DefaultScenario,
    McConfig,
    McResourceError,
    ModelDomainError,
    MonteCarloOracle,
    PowerLaw,
    QuadraticModelParams,
    ScaledExponential,
    laplace_quadratic,
    mc_laplace,
    mc_price_default_free,
    mc_price_defaultable,
    mc_propagation_check,
    mc_q,
    mc_qhat,
    mc_step_refinement,
    mc_survival_fraction,
    price_default_free,
    price_defaultable,
    propagator_q,
    propagator_qhat,
    simulate_paths,
    survival_probability,
)
from hka_credit.config import Config
from hka_credit.montecarlo import block_layout, resolve_workers, simulate_block
from hka_credit.propagators import laplace_quadratic_printed

BAND = 4.0
SMALL = McConfig(n_paths=20_000, n_steps=200, seed=7)


def make_params(beta, x0=(0.0,), time_change=None):
    return QuadraticModelParams(
        beta=beta,
        dim=len(x0),
        x0=tuple(x0),
        time_change=time_change or PowerLaw(c=1.0, p=0.5),
    )


class TestMcConfig(unittest.TestCase):
    """Run parameter validation"""

    def test_defaults_match_acceptance_configuration(self):
        cfg = McConfig()
        self.assertEqual(cfg.n_paths, 100_000)
        self.assertEqual(cfg.n_steps, 1_000)
        self.assertFalse(cfg.antithetic)

    def test_rejects_tiny_runs(self):
        with self.assertRaises(ModelDomainError) as ctx:
            McConfig(n_paths=1)
        self.assertEqual(ctx.exception.key, "mc.n_paths")
        with self.assertRaises(ModelDomainError):
            McConfig(n_steps=1)
        with self.assertRaises(ModelDomainError):
            McConfig(seed=-1)

    def test_antithetic_needs_even_paths(self):
        with self.assertRaises(ModelDomainError):
            McConfig(n_paths=1001, antithetic=True)
        self.assertTrue(McConfig(n_paths=1000, antithetic=True).antithetic)

    def test_z_score(self):
        estimate_value = mc_q(1.0, make_params(0.0), SMALL)
        self.assertEqual(estimate_value.z_score(1.0), 0.0)
        self.assertEqual(estimate_value.z_score(0.5), math.inf)


class TestReproducibility(unittest.TestCase):
    """Seeded block substreams"""

    def setUp(self):
        self.params = make_params(0.5, (1.0, 0.0))

    def test_block_layout(self):
        self.assertEqual(block_layout(10_000), [(0, 4096), (1, 4096), (2, 1808)])
        self.assertEqual(block_layout(4096), [(0, 4096)])

    def test_same_seed_same_estimate(self):
        first = mc_q(1.0, self.params, SMALL)
        second = mc_q(1.0, self.params, SMALL)
        self.assertEqual(first.mean, second.mean)
        self.assertEqual(first.std_error, second.std_error)

    def test_seed_changes_estimate(self):
        other = McConfig(n_paths=SMALL.n_paths, n_steps=SMALL.n_steps, seed=8)
        self.assertNotEqual(mc_q(1.0, self.params, SMALL).mean, mc_q(1.0, self.params, other).mean)

    def test_worker_count_does_not_change_results(self):
        single = MonteCarloOracle(self.params, SMALL, workers=1).q(1.0)
        several = MonteCarloOracle(self.params, SMALL, workers=3).q(1.0)
        self.assertEqual(single.mean, several.mean)
        self.assertEqual(single.std_error, several.std_error)

    def test_thread_environment_variable(self):
        with patch.dict(os.environ, {Config.THREADS_ENV: "3"}):
            self.assertEqual(resolve_workers(), 3)
        with patch.dict(os.environ, {Config.THREADS_ENV: "zero"}):
            self.assertGreaterEqual(resolve_workers(), 1)
        with patch.dict(os.environ, {Config.THREADS_ENV: "1"}):
            one = mc_q(1.0, self.params, SMALL)
        with patch.dict(os.environ, {Config.THREADS_ENV: "4"}):
            four = mc_q(1.0, self.params, SMALL)
        self.assertEqual(one.mean, four.mean)

    def test_zero_window_start_matches_q(self):
        """q_hat(t, 0) consumes the same draws as q(t)"""
        q_estimate = mc_q(2.0, self.params, SMALL)
        qhat_estimate = mc_qhat(2.0, 0.0, self.params, SMALL)
        self.assertEqual(q_estimate.mean, qhat_estimate.mean)


class TestAgreementWithClosedForms(unittest.TestCase):
    """Estimates land within a few standard errors of the closed forms"""

    def assertWithinBand(self, estimate, reference):
        z = estimate.z_score(reference)
        self.assertLessEqual(abs(z), BAND, f"z={z:.2f} mean={estimate.mean!r} closed={reference!r}")

    def test_zero_potential_is_exact(self):
        estimate = mc_q(3.0, make_params(0.0, (2.0,)), SMALL)
        self.assertEqual(estimate.mean, 1.0)
        self.assertEqual(estimate.std_error, 0.0)

    def test_q(self):
        for beta, x0, t in ((1.0, (0.0,), 1.0), (0.5, (0.6, 0.8), 2.0), (0.1, (10.0,), 5.0)):
            params = make_params(beta, x0)
            with self.subTest(beta=beta, x0=x0, t=t):
                self.assertWithinBand(mc_q(t, params, SMALL), propagator_q(t, params).value)

    def test_qhat(self):
        params = make_params(0.5, (1.0,))
        self.assertWithinBand(mc_qhat(2.0, 1.0, params, SMALL), propagator_qhat(2.0, 1.0, params).value)

    def test_laplace(self):
        x0 = (math.sqrt(0.5), math.sqrt(0.5))
        params = make_params(0.5, x0)
        estimate = mc_laplace(0.2, 0.5, 1.0, params, SMALL)
        self.assertWithinBand(estimate, laplace_quadratic(0.2, 0.5, 1.0, 1.0, 2).value)

    def test_laplace_rejects_printed_sign(self):
        x0 = (math.sqrt(0.5), math.sqrt(0.5))
        estimate = mc_laplace(0.2, 0.5, 1.0, make_params(0.5, x0), SMALL)
        printed = laplace_quadratic_printed(0.2, 0.5, 1.0, 1.0, 2).value
        self.assertGreaterEqual(abs(estimate.z_score(printed)), Config.SIGN_REJECTION_Z)

    def test_laplace_overrides_model_beta(self):
        params = make_params(0.0, (1.0,))
        estimate = mc_laplace(0.1, 1.0, 1.0, params, SMALL)
        self.assertWithinBand(estimate, laplace_quadratic(0.1, 1.0, 1.0, 1.0, 1).value)

    def test_propagation_property(self):
        params = make_params(0.5, (0.0,))
        estimate = mc_propagation_check(1.0, 1.0, params, SMALL)
        self.assertWithinBand(estimate, propagator_q(2.0, params).value)

    def test_bond_prices(self):
        params = make_params(0.5, (1.0,))
        self.assertWithinBand(
            mc_price_defaultable(1.0, params, SMALL),
            price_defaultable(0.0, 1.0, True, params).price,
        )
        exponential = make_params(0.1, (10.0,), ScaledExponential(c=0.1))
        self.assertWithinBand(
            mc_price_default_free(1.0, exponential, SMALL),
            price_default_free(0.0, 1.0, exponential).price,
        )

    def test_survival_fraction(self):
        params = make_params(0.5, (1.0,))
        self.assertWithinBand(mc_survival_fraction(1.0, params, SMALL), survival_probability(1.0, params))


class TestVarianceBehaviour(unittest.TestCase):
    """Standard error scaling and antithetic pairing"""

    def test_standard_error_halves_with_four_times_paths(self):
        params = make_params(1.0, (1.0,))
        small = mc_q(1.0, params, McConfig(n_paths=10_000, n_steps=100, seed=3))
        large = mc_q(1.0, params, McConfig(n_paths=40_000, n_steps=100, seed=3))
        ratio = large.std_error / small.std_error
        self.assertGreater(ratio, 0.4)
        self.assertLess(ratio, 0.6)

    def test_antithetic_reduces_error_away_from_origin(self):
        params = make_params(0.5, (3.0,))
        plain = mc_q(1.0, params, McConfig(n_paths=20_000, n_steps=100, seed=5))
        paired = mc_q(1.0, params, McConfig(n_paths=20_000, n_steps=100, seed=5, antithetic=True))
        self.assertEqual(paired.n_effective, 10_000)
        self.assertLess(paired.std_error, plain.std_error)
        self.assertLessEqual(abs(paired.z_score(propagator_q(1.0, params).value)), BAND)

    def test_antithetic_pairs_coincide_at_origin(self):
        """At x = 0 a negated path has the same norm, so pairing halves the sample count"""
        params = make_params(1.0, (0.0,))
        plain = mc_q(1.0, params, McConfig(n_paths=20_000, n_steps=100, seed=5))
        paired = mc_q(1.0, params, McConfig(n_paths=20_000, n_steps=100, seed=5, antithetic=True))
        ratio = paired.std_error / plain.std_error
        self.assertGreater(ratio, 1.3)
        self.assertLess(ratio, 1.55)
        self.assertLessEqual(abs(paired.z_score(propagator_q(1.0, params).value)), BAND)


class TestStepRefinement(unittest.TestCase):
    """n_steps and 2 * n_steps trapezoid hazards on shared increments"""

    def test_coarse_hazard_uses_every_second_point(self):
        params = make_params(0.8, (0.5, -0.5))
        cfg = McConfig(n_paths=64, n_steps=4, seed=3)
        block = simulate_block(0, 64, params, cfg, 0.0, 1.0, record=True, refine=True)
        self.assertEqual(block.grid.shape, (9,))
        coarse_states = block.state_path[::2]
        v = 0.5 * 0.8 ** 2 * np.einsum("kij,kij->ki", coarse_states, coarse_states)
        expected = 0.5 * 0.25 * (v[:-1] + v[1:]).sum(axis=0)
        np.testing.assert_allclose(block.coarse_hazard, expected, rtol=1e-12)
        np.testing.assert_allclose(block.hazard, block.hazard_path[-1], rtol=0.0)

    def test_plain_block_has_no_coarse_hazard(self):
        block = simulate_block(0, 8, make_params(0.5), McConfig(n_paths=8, n_steps=4, seed=3), 0.0, 1.0)
        self.assertIsNone(block.coarse_hazard)

    def test_doubling_steps_moves_mean_less_than_one_error(self):
        params = make_params(1.0, (1.0,))
        cfg = McConfig(n_paths=20_000, n_steps=100, seed=7)
        estimate = mc_q(2.0, params, cfg)
        refinement = mc_step_refinement(2.0, params, cfg)
        self.assertLess(abs(refinement.mean), estimate.std_error)
        self.assertLess(refinement.std_error, estimate.std_error)

    def test_zero_potential_has_no_discretisation_error(self):
        refinement = mc_step_refinement(1.0, make_params(0.0, (2.0,)), SMALL)
        self.assertEqual(refinement.mean, 0.0)
        self.assertEqual(refinement.std_error, 0.0)


class TestSimulatePaths(unittest.TestCase):
    """Stored full-path scenarios"""

    def test_scenarios_are_consistent(self):
        params = make_params(1.0, (0.5, 0.5))
        cfg = McConfig(n_paths=200, n_steps=50, seed=11)
        scenarios = simulate_paths(2.0, params, cfg)
        self.assertEqual(len(scenarios), 200)
        for scenario in scenarios:
            self.assertIsInstance(scenario, DefaultScenario)
            self.assertEqual(scenario.grid.shape, (51,))
            self.assertEqual(scenario.state_path.shape, (51, 2))
            self.assertEqual(scenario.grid[0], 0.0)
            self.assertAlmostEqual(scenario.grid[-1], 2.0, places=12)
            np.testing.assert_array_equal(scenario.state_path[0], [0.5, 0.5])
            self.assertTrue(np.all(np.diff(scenario.integrated_hazard) >= 0.0))
            if scenario.defaulted:
                self.assertGreater(scenario.default_time, 0.0)
                self.assertLessEqual(scenario.default_time, 2.0 + 1e-12)
                self.assertFalse(scenario.survived_to(2.0))
            else:
                self.assertTrue(scenario.survived_to(2.0))

    def test_scenarios_are_read_only(self):
        scenario = simulate_paths(1.0, make_params(0.5), McConfig(n_paths=2, n_steps=4, seed=1))[0]
        with self.assertRaises(ValueError):
            scenario.state_path[0, 0] = 1.0

    def test_no_defaults_without_potential(self):
        scenarios = simulate_paths(1.0, make_params(0.0), McConfig(n_paths=100, n_steps=10, seed=2))
        self.assertFalse(any(s.defaulted for s in scenarios))

    def test_memory_budget(self):
        with self.assertRaises(McResourceError) as ctx:
            simulate_paths(1.0, make_params(0.5), McConfig(n_paths=1000, n_steps=100), memory_budget_bytes=1024)
        self.assertEqual(ctx.exception.key, "mc.n_paths")

    def test_oracle_wrapper(self):
        oracle = MonteCarloOracle(make_params(0.5), McConfig(n_paths=10, n_steps=5, seed=4))
        self.assertEqual(len(oracle.simulate_paths(1.0)), 10)


@pytest.mark.slow
class TestAcceptanceConfiguration(unittest.TestCase):
    """Full-size runs (10^5 paths, 10^3 steps)"""

    def test_q_at_acceptance_size(self):
        params = make_params(0.5, (1.0,))
        estimate = mc_q(5.0, params, McConfig())
        self.assertLessEqual(abs(estimate.z_score(propagator_q(5.0, params).value)), 3.0)

    def test_step_doubling_at_acceptance_size(self):
        params = make_params(1.0, (1.0,))
        cfg = McConfig()
        estimate = mc_q(10.0, params, cfg)
        refinement = mc_step_refinement(10.0, params, cfg)
        self.assertLess(abs(refinement.mean), estimate.std_error)
        self.assertLessEqual(abs(estimate.z_score(propagator_q(10.0, params).value)), BAND)


if __name__ == '__main__':
    unittest.main()
