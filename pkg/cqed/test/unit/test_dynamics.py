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
 Description:       Cumulant state container and equations of motion.
 ****************************************************************************
"""

import math
import pickle
import unittest

import numpy as np

from cqed.core.cumulant.dynamics import derivative, thermal_equilibrium_state
from cqed.core.error import InvalidStateError
from cqed.core.model.state import NUM_SLOTS, CumulantState, Slot, hermiticity_residue
from cqed.core.oracle.density import evolve, moment_vector, thermal_product_state
from cqed.core.oracle.hilbert import HilbertLayout
from cqed.core.oracle.liouvillian import build_liouvillian
from cqed.test.unit.test_params import make_params

def sample_state() -> CumulantState:
    values = np.zeros(NUM_SLOTS, dtype=complex)
    values[Slot.FIELD] = 0.1 + 0.05j
    values[Slot.COHERENCE] = 0.02 - 0.01j
    values[Slot.UPPER_POPULATION] = 0.3
    values[Slot.PHOTON_NUMBER] = 0.5
    values[Slot.FIELD_SQUARED] = 0.01j
    values[Slot.FIELD_COHERENCE] = 0.03 + 0.01j
    values[Slot.FIELD_POPULATION] = 0.02 - 0.02j
    values[Slot.ANNIHILATION_COHERENCE] = -0.01 + 0.005j
    values[Slot.EXCHANGE] = 0.04
    values[Slot.POPULATION_RAISING] = 0.01 + 0.02j
    values[Slot.PAIR_LOWERING] = -0.003j
    values[Slot.PAIR_POPULATION] = 0.1
    return CumulantState(values)


class TestCumulantState(unittest.TestCase):
    """
    Construction rules of CumulantState
    """

    def test_rejects_malformed(self):
        with self.assertRaises(InvalidStateError):
            CumulantState(np.zeros(11))
        values = np.zeros(NUM_SLOTS, dtype=complex)
        values[Slot.FIELD] = math.nan
        with self.assertRaises(InvalidStateError):
            CumulantState(values)

    def test_hermitian_slots(self):
        values = np.zeros(NUM_SLOTS, dtype=complex)
        values[Slot.PHOTON_NUMBER] = 2.0 + 1e-12j
        state = CumulantState(values)
        self.assertEqual(state[Slot.PHOTON_NUMBER], 2.0)
        values[Slot.PHOTON_NUMBER] = 2.0 + 1e-3j
        with self.assertRaises(InvalidStateError):
            CumulantState(values)

    def test_population_bounds(self):
        values = np.zeros(NUM_SLOTS, dtype=complex)
        values[Slot.UPPER_POPULATION] = 1.5
        with self.assertRaises(InvalidStateError):
            CumulantState(values)
        self.assertEqual(CumulantState(values, check_bounds=False).upper_population, 1.5)

    def test_read_only(self):
        state = sample_state()
        with self.assertRaises(ValueError):
            state.values[0] = 1.0
        copy = state.as_array()
        copy[0] = 1.0
        self.assertEqual(state.field, 0.1 + 0.05j)

    def test_pickle(self):
        state = sample_state()
        self.assertEqual(pickle.loads(pickle.dumps(state)), state)


class TestDerivative(unittest.TestCase):
    """
    Right-hand side of the cumulant equations
    """

    def setUp(self):
        self.params = make_params()

    def test_ground_state_is_fixed_without_drive(self):
        state = thermal_equilibrium_state(self.params)
        self.assertEqual(state.upper_population, 0.0)
        self.assertTrue(np.all(derivative(state, self.params, 0.0).values == 0))

    def test_drive_enters_field(self):
        state = thermal_equilibrium_state(self.params)
        rate = derivative(state, self.params, 0.15)
        self.assertAlmostEqual(rate[Slot.FIELD], -1j * 0.15 * math.sqrt(0.5), places=15)
        self.assertEqual(rate[Slot.PHOTON_NUMBER], 0.0)

    def test_hermitian_slots_stay_real(self):
        rate = derivative(sample_state(), self.params, 0.2).values
        self.assertLessEqual(hermiticity_residue(rate), 1e-15 * np.max(np.abs(rate)))

    def test_depends_on_detunings_only(self):
        state = sample_state()
        detuned = self.params.replace(omega_s=10.3, omega_d=9.8)
        for shift in (2.0 ** 20, 0.1, 1.234567, -3.7):
            with self.subTest(shift=shift):
                shifted = self.params.replace(omega_c=self.params.omega_c + shift,
                                              omega_s=self.params.omega_s + shift,
                                              omega_d=self.params.omega_d + shift)
                np.testing.assert_array_equal(derivative(state, self.params, 0.2).values,
                                              derivative(state, shifted, 0.2).values)
                # distinct frequencies only lose the rounding of the shifted sums
                rounding = 1e-14 * (abs(shift) + 20.0) * float(np.max(np.abs(state.values)))
                reference = derivative(state, detuned, 0.2).values
                moved = detuned.replace(omega_c=detuned.omega_c + shift, omega_s=detuned.omega_s + shift,
                                        omega_d=detuned.omega_d + shift)
                np.testing.assert_allclose(derivative(state, moved, 0.2).values, reference,
                                           rtol=0.0, atol=rounding)

    def test_single_spin_ignores_pair_slots(self):
        params = self.params.replace(n_spins=1.0)
        values = sample_state().as_array()
        other = values.copy()
        other[Slot.EXCHANGE:] = [0.2, 0.1j, 0.05, 0.07]
        first = derivative(CumulantState(values), params, 0.2).values
        second = derivative(CumulantState(other), params, 0.2).values
        np.testing.assert_array_equal(first[:Slot.EXCHANGE], second[:Slot.EXCHANGE])

    def test_closure_free_slots_match_master_equation(self):
        for n_spins in (1, 2):
            params = self.params.replace(n_spins=float(n_spins))
            layout = HilbertLayout(n_spins, 6)
            liouvillian = build_liouvillian(params, layout, 0.15)
            rho = evolve(thermal_product_state(layout, 0.2), liouvillian, [0.0, 0.3])[-1]
            state = CumulantState(moment_vector(layout, rho.matrix))
            exact = moment_vector(layout, liouvillian.apply(rho.matrix))
            approx = derivative(state, params, 0.15).values
            np.testing.assert_allclose(approx[:Slot.FIELD_COHERENCE], exact[:Slot.FIELD_COHERENCE],
                                       rtol=1e-8, atol=1e-12)


if __name__ == "__main__":
    unittest.main()
