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
 Description:       Steady spin population and Dicke coordinates.
 ****************************************************************************
"""

import math
import unittest

import numpy as np

from cqed import const
from cqed.core.config.units import params_from_preset
from cqed.core.cumulant.dicke import (collective_spin_squared, dicke_degeneracy_log,
                                      dicke_from_cumulants, dicke_from_population,
                                      single_spin_steady_population)
from cqed.core.cumulant.dynamics import thermal_equilibrium_state
from cqed.core.error import (InvalidParameterError, InvalidStateError, UndampedSpinError,
                             UnphysicalStateError)
from cqed.core.model.params import ThermalOccupancies
from cqed.core.model.state import NUM_SLOTS, CumulantState, DickeCoordinates, Slot
from cqed.core.oracle.density import moments, thermal_product_state
from cqed.core.oracle.hilbert import HilbertLayout


class TestSteadyPopulation(unittest.TestCase):
    """
    Single-spin population under optical cooling at room temperature
    """

    def setUp(self):
        self.params = params_from_preset("fig3")
        self.occ = ThermalOccupancies.from_params(self.params)

    def population(self, eta: float) -> float:
        return single_spin_steady_population(self.params.replace(eta_s=eta), self.occ)

    def test_cooling_rates(self):
        self.assertAlmostEqual(self.population(0.0), 0.49989, delta=2e-5)
        self.assertAlmostEqual(self.population(5e2), 0.4497, delta=2e-4)
        self.assertAlmostEqual(self.population(1e4), 0.1546, delta=2e-4)
        self.assertAlmostEqual(self.population(1e6), 2.228e-3, delta=2e-6)

    def test_population_below_half(self):
        for eta in (0.0, 1e2, 1e3, 1e4, 1e5, 1e6):
            self.assertLess(self.population(eta), 0.5)

    def test_monotonic_in_eta(self):
        values = [self.population(eta) for eta in (0.0, 1e2, 1e3, 1e4, 1e5, 1e6)]
        self.assertTrue(all(b < a for a, b in zip(values, values[1:])))

    def test_undamped(self):
        params = self.params.replace(gamma_s=0.0, eta_s=0.0)
        with self.assertRaises(UndampedSpinError):
            single_spin_steady_population(params, self.occ)


class TestDickeCoordinates(unittest.TestCase):
    """
    (J, M) from populations and from cumulant slots
    """

    def test_ground_state_is_fully_symmetric(self):
        coords = dicke_from_population(0.0, 2.0)
        self.assertEqual(coords.j, 1.0)
        self.assertEqual(coords.m, -1.0)

    def test_half_population(self):
        coords = dicke_from_population(0.5, 2.0)
        self.assertAlmostEqual(coords.j_squared, 1.5, places=12)
        self.assertEqual(coords.m, 0.0)

    def test_room_temperature_ratios(self):
        params = params_from_preset("fig3")
        occ = ThermalOccupancies.from_params(params)
        n_spins = params.n_spins
        ratio = dicke_from_population(single_spin_steady_population(params, occ), n_spins).j_ratio(n_spins)
        self.assertAlmostEqual(ratio, 2.2030e-4, delta=2e-7)
        cooled = params.replace(eta_s=1e6)
        ratio = dicke_from_population(single_spin_steady_population(cooled, occ), n_spins).j_ratio(n_spins)
        self.assertAlmostEqual(ratio, 0.9955, delta=1e-4)

    def test_invalid_population(self):
        with self.assertRaises(InvalidParameterError):
            dicke_from_population(1.2, 10.0)

    def test_cumulants_agree_with_population(self):
        params = params_from_preset("fig3").replace(eta_s=1e4, n_spins=1e3)
        state = thermal_equilibrium_state(params)
        expected = dicke_from_population(state.upper_population, params.n_spins)
        coords = dicke_from_cumulants(state, params.n_spins)
        self.assertTrue(math.isclose(coords.j, expected.j, rel_tol=1e-9))
        self.assertTrue(math.isclose(coords.m, expected.m, rel_tol=1e-9))

    def test_collective_spin_of_product_state(self):
        values = np.zeros(NUM_SLOTS, dtype=complex)
        values[Slot.UPPER_POPULATION] = 0.25
        values[Slot.PAIR_POPULATION] = 0.0625
        state = CumulantState(values)
        self.assertAlmostEqual(collective_spin_squared(state, 4.0), 3.0 + 12.0 * 0.0625, places=12)

    def test_closed_form_matches_exact_collective_spin(self):
        layout = HilbertLayout(4, 2)
        for p in (0.0, 0.1546, 0.3, 0.5):
            with self.subTest(p=p):
                exact = moments(thermal_product_state(layout, p))
                j_exact = (-1.0 + math.sqrt(1.0 + 4.0 * exact.j_squared)) / 2.0
                self.assertAlmostEqual(dicke_from_population(p, 4.0).j, j_exact, delta=1e-9)
                coords = dicke_from_cumulants(exact.state, 4.0)
                self.assertAlmostEqual(coords.j, j_exact, delta=1e-9)
                self.assertAlmostEqual(coords.m, exact.j_z, delta=1e-9)

    def test_small_negative_radicand_is_clipped(self):
        values = np.zeros(NUM_SLOTS, dtype=complex)
        values[Slot.UPPER_POPULATION] = 0.5
        values[Slot.EXCHANGE] = -0.5 - 1e-10
        state = CumulantState(values)
        with self.assertLogs(const.LOG_NAME, level="WARNING"):
            coords = dicke_from_cumulants(state, 2.0)
        self.assertEqual(coords.j, 0.0)

    def test_closure_breakdown(self):
        values = np.zeros(NUM_SLOTS, dtype=complex)
        values[Slot.UPPER_POPULATION] = 0.5
        with self.assertRaises(UnphysicalStateError):
            dicke_from_cumulants(CumulantState(values), 1e6)

    def test_triangle(self):
        self.assertTrue(DickeCoordinates(1.0, -1.0).within_triangle(2.0))
        self.assertFalse(DickeCoordinates(0.5, -1.0).within_triangle(2.0))
        self.assertFalse(DickeCoordinates(1.5, 0.0).within_triangle(2.0))
        with self.assertRaises(InvalidStateError):
            DickeCoordinates(-0.1, 0.0)


class TestDegeneracy(unittest.TestCase):

    def test_small_ensembles(self):
        self.assertAlmostEqual(dicke_degeneracy_log(2.0, 1.0), 0.0, places=12)
        self.assertAlmostEqual(dicke_degeneracy_log(2.0, 0.0), 0.0, places=12)
        self.assertAlmostEqual(dicke_degeneracy_log(4.0, 1.0), math.log(3.0), places=12)

    def test_out_of_range(self):
        with self.assertRaises(InvalidParameterError):
            dicke_degeneracy_log(2.0, 1.5)


if __name__ == "__main__":
    unittest.main()
