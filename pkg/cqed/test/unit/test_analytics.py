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
 Description:       Hybrid-mode analytics and spectrum peak extraction.
 ****************************************************************************
"""

import math
import unittest

import numpy as np

from cqed.core.analytics.hybrid_modes import (hybrid_mode_frequencies, photon_fractions,
                                              rabi_frequency, small_detuning_frequencies)
from cqed.core.analytics.peaks import (find_peaks, has_central_dip, infer_spin_frequency,
                                       modulation_depth, oscillation_frequency)
from cqed.core.error import InvalidParameterError, PeakCountError

def lorentzians(x, centers, width=0.05):
    return sum(1.0 / (1.0 + ((x - center) / width) ** 2) for center in centers)


class TestHybridModes(unittest.TestCase):
    """
    Normal modes of a cavity coupled to a bosonized spin ladder
    """

    def test_resonant_splitting(self):
        modes = hybrid_mode_frequencies(10.0, 10.0, 0.3, 2.0)
        self.assertAlmostEqual(modes.chi, 1.2)
        self.assertAlmostEqual(modes.omega_plus, 10.6)
        self.assertAlmostEqual(modes.omega_minus, 9.4)
        self.assertAlmostEqual(modes.splitting, 2.0 * rabi_frequency(0.3, 2.0))

    def test_sum_rule(self):
        for detuning in (-2.0, -0.1, 0.0, 0.7, 5.0):
            modes = hybrid_mode_frequencies(10.0 + detuning, 10.0, 0.3, 7.5)
            self.assertAlmostEqual(modes.omega_plus + modes.omega_minus, 20.0 + detuning)
            self.assertGreaterEqual(modes.splitting, abs(detuning))

    def test_uncoupled_modes_are_bare(self):
        modes = hybrid_mode_frequencies(11.0, 10.0, 0.3, 0.0)
        self.assertAlmostEqual(modes.omega_plus, 11.0)
        self.assertAlmostEqual(modes.omega_minus, 10.0)

    def test_small_detuning_limit(self):
        exact = hybrid_mode_frequencies(10.0, 10.0, 0.3, 2.0)
        linear = small_detuning_frequencies(10.0, 10.0, 0.3, 2.0)
        self.assertAlmostEqual(exact.omega_plus, linear.omega_plus)
        self.assertAlmostEqual(exact.omega_minus, linear.omega_minus)
        detuned = small_detuning_frequencies(10.01, 10.0, 0.3, 2.0)
        self.assertAlmostEqual(detuned.splitting, 1.2)

    def test_photon_fractions(self):
        self.assertEqual(photon_fractions(10.0, 10.0, 0.3, 2.0), (0.5, 0.5))
        upper, lower = photon_fractions(11.0, 10.0, 0.3, 0.0)
        self.assertAlmostEqual(upper, 0.0)
        self.assertAlmostEqual(lower, 1.0)
        upper, lower = photon_fractions(10.4, 10.0, 0.3, 2.0)
        self.assertAlmostEqual(upper + lower, 1.0)
        self.assertLess(upper, lower)

    def test_rejects_negative_j(self):
        with self.assertRaises(InvalidParameterError):
            hybrid_mode_frequencies(10.0, 10.0, 0.3, -1.0)
        with self.assertRaises(InvalidParameterError):
            rabi_frequency(0.3, math.nan)


class TestFindPeaks(unittest.TestCase):
    """
    Peaks of swept spectra
    """

    def setUp(self):
        self.x = np.linspace(-3.0, 3.0, 601)

    def test_split_resonance(self):
        peaks = find_peaks(np.column_stack([self.x, lorentzians(self.x, (-1.0, 1.0))]))
        self.assertEqual(len(peaks), 2)
        self.assertAlmostEqual(peaks.frequencies[0], -1.0, delta=1e-3)
        self.assertAlmostEqual(peaks.frequencies[1], 1.0, delta=1e-3)
        self.assertAlmostEqual(peaks.separation(), 2.0, delta=2e-3)
        for height in peaks.heights:
            self.assertAlmostEqual(height, 1.0, delta=1e-2)

    def test_off_grid_vertex_is_refined(self):
        peaks = find_peaks(np.column_stack([self.x, lorentzians(self.x, (0.2049,), width=0.3)]))
        self.assertEqual(len(peaks), 1)
        self.assertAlmostEqual(peaks.frequencies[0], 0.2049, delta=5e-4)
        with self.assertRaises(PeakCountError):
            peaks.separation()

    def test_small_ripples_are_ignored(self):
        values = lorentzians(self.x, (0.0,), width=0.5) + 1e-6 * np.sin(40.0 * self.x)
        self.assertEqual(len(find_peaks(np.column_stack([self.x, values]))), 1)

    def test_flat_spectrum(self):
        self.assertEqual(len(find_peaks(np.column_stack([self.x, np.zeros_like(self.x)]))), 0)

    def test_sweep_validation(self):
        with self.assertRaises(InvalidParameterError):
            find_peaks([(0.0, 1.0), (1.0, 2.0)])
        with self.assertRaises(InvalidParameterError):
            find_peaks([(0.0, 1.0), (1.0, 2.0), (1.0, 3.0), (2.0, 2.0), (3.0, 1.0)])
        with self.assertRaises(InvalidParameterError):
            find_peaks(np.arange(10.0))

    def test_central_dip(self):
        split = np.column_stack([self.x, lorentzians(self.x, (-1.0, 1.0))])
        single = np.column_stack([self.x, lorentzians(self.x, (0.0,))])
        self.assertTrue(has_central_dip(split, 0.0))
        self.assertFalse(has_central_dip(single, 0.0))


class TestSpinFrequencyInversion(unittest.TestCase):
    """
    The frequency sum of the split peaks recovers the spin frequency
    """

    def test_inversion_independent_of_coupling(self):
        x = np.linspace(-3.0, 3.0, 601)
        for g_s, j in ((0.3, 2.0), (0.2, 10.0)):
            modes = hybrid_mode_frequencies(0.3, 0.0, g_s, j)
            values = lorentzians(x, (modes.omega_minus, modes.omega_plus))
            peaks = find_peaks(np.column_stack([x, values]))
            self.assertAlmostEqual(infer_spin_frequency(peaks, 0.0), 0.3, delta=2e-3)

    def test_needs_two_peaks(self):
        x = np.linspace(-3.0, 3.0, 601)
        peaks = find_peaks(np.column_stack([x, lorentzians(x, (0.0,))]))
        with self.assertRaises(PeakCountError) as ctx:
            infer_spin_frequency(peaks, 0.0)
        self.assertEqual(ctx.exception.count, 1)


class TestOscillation(unittest.TestCase):
    """
    Frequencies and modulation depths of sampled signals
    """

    def setUp(self):
        self.t = np.linspace(0.0, 20.0, 2001)

    def test_oscillation_frequency(self):
        self.assertAlmostEqual(oscillation_frequency(self.t, 1.0 + np.sin(2.5 * self.t)), 2.5, delta=1e-3)

    def test_damped_oscillation(self):
        values = np.exp(-0.1 * self.t) * np.cos(3.0 * self.t)
        self.assertAlmostEqual(oscillation_frequency(self.t, values), 3.0, delta=1e-2)

    def test_no_oscillation(self):
        with self.assertRaises(PeakCountError):
            oscillation_frequency(self.t, np.ones_like(self.t))
        with self.assertRaises(PeakCountError):
            oscillation_frequency(self.t, np.exp(-self.t))
        with self.assertRaises(InvalidParameterError):
            oscillation_frequency(self.t[:3], self.t[:3])

    def test_modulation_depth(self):
        self.assertAlmostEqual(modulation_depth(1.0 + 0.5 * np.sin(self.t)), 1.0 / 1.5, delta=1e-3)
        self.assertEqual(modulation_depth(np.exp(-self.t)), 0.0)
        self.assertEqual(modulation_depth(np.zeros(10)), 0.0)

    def test_modulation_depth_keeps_the_trend(self):
        # a monotonic ramp has no maximum to drop from, whatever rides on it
        self.assertEqual(modulation_depth(self.t + 0.5 * np.sin(self.t)), 0.0)
        drop = modulation_depth(np.concatenate([np.linspace(0.0, 2.0, 50), np.linspace(2.0, 1.0, 50)[1:],
                                                np.linspace(1.0, 4.0, 50)[1:]]))
        self.assertAlmostEqual(drop, 0.25)


if __name__ == '__main__':
    unittest.main()
