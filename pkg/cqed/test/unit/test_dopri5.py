#!/usr/bin/env python3

# Copyright (c) 2026 nv-cqed contributors
#
# This program is free software: you can redistribute it and/or modify it under the
# terms of the GNU Affero General Public License as published by the Free Software
# Foundation, either version 3 of the License, or (at your option) any later version.
#
# This program is distributed in the hope that it will be useful, but WITHOUT ANY
# WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS FOR A
# PARTICULAR PURPOSE. See the GNU Affero General Public License for more details.
#
# You should have received a copy of the GNU Affero General Public License along
# with this program. If not, see <https://www.gnu.org/licenses/>.
"""
 ****************************************************************************
 Description:       Adaptive Dormand-Prince stepper.
 ****************************************************************************
"""

import math
import unittest

import numpy as np

from cqed.core.error import (IntegrationError, InvalidParameterError,
                             MaxStepsExceededError, NonFiniteStateError)
from cqed.core.integrator.dopri5 import DormandPrince, IntegrationConfig, solve_ode

def decay(t, y):
    return -y


class TestIntegrationConfig(unittest.TestCase):
    """
    Tolerance and limit validation
    """

    def test_defaults_are_valid(self):
        config = IntegrationConfig()
        self.assertTrue(math.isinf(config.max_step))
        self.assertIsNone(config.initial_step)

    def test_rejects_bad_tolerances(self):
        for kwargs in ({"rel_tol": 0.0}, {"rel_tol": 1.0}, {"abs_tol": -1e-9},
                       {"max_step": 0.0}, {"initial_step": -1.0}, {"max_steps": 0}):
            with self.assertRaises(InvalidParameterError, msg=str(kwargs)):
                IntegrationConfig(**kwargs)

    def test_tightened_halves_tolerances(self):
        config = IntegrationConfig(rel_tol=1e-6, abs_tol=1e-10, max_step=0.5).tightened()
        self.assertEqual(config.rel_tol, 5e-7)
        self.assertEqual(config.abs_tol, 5e-11)
        self.assertEqual(config.max_step, 0.5)

    def test_dict_maps_unbounded_step_to_none(self):
        self.assertIsNone(IntegrationConfig().to_dict()["max_step"])


class TestSolveODE(unittest.TestCase):
    """
    Accuracy, sampling and failure modes on closed-form problems
    """

    def test_exponential_decay(self):
        times = np.array([0.0, 0.25, 0.5, 1.0, 2.0])
        samples, y_end, stats = solve_ode(decay, [1.0], (0.0, 2.0), sample_times=times)
        np.testing.assert_allclose(samples[:, 0].real, np.exp(-times), rtol=1e-6)
        self.assertAlmostEqual(y_end[0].real, math.exp(-2.0), delta=1e-7)
        self.assertGreater(stats.accepted, 0)
        self.assertEqual(len(stats.segments), 1)

    def test_complex_rotation(self):
        omega = 3.0
        samples, y_end, _ = solve_ode(lambda t, y: 1j * omega * y, [1.0 + 0.0j], (0.0, 2.0),
                                      sample_times=np.linspace(0.0, 2.0, 9))
        expected = np.exp(1j * omega * np.linspace(0.0, 2.0, 9))
        np.testing.assert_allclose(samples[:, 0], expected, atol=1e-6)
        self.assertAlmostEqual(abs(y_end[0]), 1.0, delta=1e-7)

    def test_time_dependent_rhs(self):
        # y' = cos t
        _, y_end, _ = solve_ode(lambda t, y: np.array([math.cos(t)], dtype=complex),
                                [0.0], (0.0, 1.5))
        self.assertAlmostEqual(y_end[0].real, math.sin(1.5), delta=1e-7)

    def test_sample_at_start_and_end_are_exact(self):
        samples, y_end, _ = solve_ode(decay, [2.0], (0.0, 1.0), sample_times=[0.0, 1.0])
        self.assertEqual(samples[0, 0], 2.0)
        self.assertEqual(samples[1, 0], y_end[0])

    def test_empty_span_returns_initial(self):
        samples, y_end, stats = solve_ode(decay, [1.0], (1.0, 1.0), sample_times=[1.0])
        self.assertEqual(y_end[0], 1.0)
        self.assertEqual(samples[0, 0], 1.0)
        self.assertEqual(stats.steps, 0)

    def test_max_step_is_honoured(self):
        _, _, stats = solve_ode(decay, [1.0], (0.0, 1.0), IntegrationConfig(max_step=0.01))
        self.assertGreaterEqual(stats.accepted, 100)

    def test_max_steps_exceeded(self):
        config = IntegrationConfig(max_step=1e-3, max_steps=10)
        with self.assertRaises(MaxStepsExceededError) as ctx:
            solve_ode(decay, [1.0], (0.0, 1.0), config)
        self.assertIsNotNone(ctx.exception.last_time)

    def test_non_finite_derivative(self):
        with self.assertRaises(NonFiniteStateError):
            solve_ode(lambda t, y: np.full_like(y, np.nan), [1.0], (0.0, 1.0))

    def test_finite_time_blow_up_fails(self):
        # y' = y^2 leaves every finite bound at t = 1
        with self.assertRaises(IntegrationError):
            solve_ode(lambda t, y: y * y, [1.0], (0.0, 2.0))

    def test_monitor_sees_every_accepted_step(self):
        seen = []
        _, _, stats = solve_ode(decay, [1.0], (0.0, 1.0), monitor=lambda t, y: seen.append(t))
        self.assertEqual(len(seen), stats.accepted)
        self.assertEqual(seen[-1], 1.0)
        self.assertEqual(seen, sorted(seen))


class TestDormandPrince(unittest.TestCase):
    """
    Statistics accumulate over consecutive spans of one solver
    """

    def test_statistics_accumulate(self):
        solver = DormandPrince(IntegrationConfig())
        _, y = solver.solve(decay, [1.0], 0.0, 1.0)
        first = solver.stats.accepted
        _, y = solver.solve(decay, y, 1.0, 2.0)
        self.assertGreater(solver.stats.accepted, first)
        self.assertEqual(len(solver.stats.segments), 2)
        self.assertAlmostEqual(y[0].real, math.exp(-2.0), delta=1e-7)
        self.assertEqual(set(solver.stats.to_dict()), {"accepted", "rejected", "evaluations", "segments"})


if __name__ == '__main__':
    unittest.main()
