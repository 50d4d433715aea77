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
 Description:       System parameters, thermal occupations and drive
                    protocols.
 ****************************************************************************
"""

import math
import unittest

from cqed import const
from cqed.core.config.units import params_from_preset
from cqed.core.error import InvalidParameterError
from cqed.core.model.params import (SystemParams, ThermalOccupancies, complex_detunings,
                                    field_from_spin_frequency, spin_frequency_from_field,
                                    thermal_occupation)
from cqed.core.model.protocol import DriveProtocol

def make_params(**changes) -> SystemParams:
    values = dict(omega_c=10.0, kappa_c=1.0, kappa_1=0.5, omega_s=10.0, gamma_s=0.05,
                  eta_s=0.5, chi_s=0.1, g_s=0.3, n_spins=2.0, temperature=0.0, omega_d=10.0)
    values.update(changes)
    return SystemParams(**values)


class TestSystemParams(unittest.TestCase):
    """
    Validation and copies of SystemParams
    """

    def test_preset_values_are_angular(self):
        params = params_from_preset("fig3")
        self.assertEqual(params.omega_c, const.TWO_PI * 2.69e9)
        self.assertEqual(params.gamma_s, const.TWO_PI * 0.157)
        self.assertEqual(params.eta_s, 0.0)
        self.assertEqual(params.n_spins, 2.5e12)
        self.assertEqual(params.temperature, 293.0)

    def test_detunings(self):
        params = make_params(omega_c=12.0, omega_s=9.0, omega_d=10.0)
        self.assertEqual(params.delta_c, 2.0)
        self.assertEqual(params.delta_s, -1.0)

    def test_rejects_invalid_values(self):
        with self.assertRaises(InvalidParameterError):
            make_params(kappa_1=2.0)
        with self.assertRaises(InvalidParameterError):
            make_params(n_spins=0.5)
        with self.assertRaises(InvalidParameterError):
            make_params(gamma_s=-1.0)
        with self.assertRaises(InvalidParameterError):
            make_params(temperature=math.nan)
        with self.assertRaises(InvalidParameterError):
            make_params(g_s=True)

    def test_replace_revalidates(self):
        params = make_params()
        self.assertEqual(params.replace(eta_s=3.0).eta_s, 3.0)
        self.assertEqual(params.eta_s, 0.5)
        with self.assertRaises(InvalidParameterError):
            params.replace(kappa_c=0.1)

    def test_dict_round_trip(self):
        params = make_params(n_spins=1.5e16)
        self.assertEqual(SystemParams.from_dict(params.to_dict()), params)
        data = params.to_dict()
        data["bogus"] = 1.0
        with self.assertRaises(InvalidParameterError):
            SystemParams.from_dict(data)
        del data["bogus"]
        del data["g_s"]
        with self.assertRaises(InvalidParameterError):
            SystemParams.from_dict(data)

    def test_complex_detunings(self):
        params = make_params(omega_c=11.0)
        detunings = complex_detunings(params, ThermalOccupancies(0.0, 0.0))
        self.assertEqual(detunings.delta_c_tilde, complex(1.0, -0.5))
        self.assertAlmostEqual(detunings.delta_s_tilde.imag, -0.5 * (0.5 + 0.05 + 0.2))


class TestThermalOccupation(unittest.TestCase):
    """
    Bose-Einstein occupation numbers
    """

    def test_room_temperature(self):
        self.assertAlmostEqual(thermal_occupation(const.TWO_PI * 2.69e9, 293.0), 2269.065, delta=0.01)

    def test_millikelvin(self):
        self.assertAlmostEqual(thermal_occupation(const.TWO_PI * 2.69e9, 0.025), 0.005752, delta=2e-5)

    def test_zero_temperature_and_overflow(self):
        self.assertEqual(thermal_occupation(const.TWO_PI * 2.69e9, 0.0), 0.0)
        self.assertEqual(thermal_occupation(const.TWO_PI * 2.69e9, 1e-6), 0.0)

    def test_invalid_frequency(self):
        with self.assertRaises(InvalidParameterError):
            thermal_occupation(0.0, 293.0)
        with self.assertRaises(InvalidParameterError):
            thermal_occupation(1.0, -1.0)

    def test_from_params(self):
        occ = ThermalOccupancies.from_params(params_from_preset("fig3"))
        self.assertEqual(occ.n_c_th, occ.n_s_th)
        self.assertGreater(occ.n_c_th, 2000.0)


class TestFieldMap(unittest.TestCase):

    def test_zero_field(self):
        self.assertEqual(spin_frequency_from_field(0.0), const.NV_ZERO_FIELD_SPLITTING)

    def test_inverse(self):
        self.assertAlmostEqual(field_from_spin_frequency(spin_frequency_from_field(0.0064)), 0.0064,
                               places=12)


class TestDriveProtocol(unittest.TestCase):
    """
    Piecewise-constant drive protocols
    """

    def test_pulse_bounds(self):
        protocol = DriveProtocol.pulse(2.0, 1e-6, 3e-6)
        self.assertAlmostEqual(protocol.total_duration, 4e-6, places=18)
        bounds = protocol.segment_bounds()
        self.assertEqual(bounds[0], (0.0, 1e-6, 2.0))
        self.assertEqual(bounds[1][2], 0.0)
        self.assertEqual(bounds[1][0], 1e-6)

    def test_constant(self):
        protocol = DriveProtocol.constant(1.5, 2.0)
        self.assertEqual(protocol.segment_bounds(), [(0.0, 2.0, 1.5)])

    def test_invalid_segments(self):
        with self.assertRaises(InvalidParameterError):
            DriveProtocol(segments=())
        with self.assertRaises(InvalidParameterError):
            DriveProtocol.pulse(1.0, 0.0, 1.0)
        with self.assertRaises(InvalidParameterError):
            DriveProtocol.constant(math.inf, 1.0)


if __name__ == "__main__":
    unittest.main()
