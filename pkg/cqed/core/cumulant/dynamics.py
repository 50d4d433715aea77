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
 Description:       Second-order cumulant (mean-field) equations of motion
                    for the driven resonator coupled to N identical spins,
                    in the frame rotating at the drive frequency.
 ****************************************************************************
"""

import numpy as np

from cqed.core.cumulant.dicke import single_spin_steady_population
from cqed.core.error import InvalidStateError
from cqed.core.model.params import (SystemParams, ThermalOccupancies,
                                    complex_detunings)
from cqed.core.model.state import (NUM_SLOTS, CumulantState, Slot, StateDerivative,
                                   hermiticity_residue)

__all__ = ["CumulantRHS", "derivative", "thermal_equilibrium_state", "hermiticity_residue"]

class CumulantRHS:
    """
    Right-hand side with every parameter-dependent coefficient precomputed.

    Third-order moments are factorized as
    <ABC> = <AB><C> + <AC><B> + <BC><A> - 2<A><B><C>. Moments not stored
    directly are conjugates of stored ones, e.g. <a s22_1> = conj(<a+ s22_1>).
    """

    def __init__(self, params: SystemParams, drive_amplitude: float,
                 occupancies: ThermalOccupancies = None):
        occ = occupancies if occupancies is not None else ThermalOccupancies.from_params(params)
        detunings = complex_detunings(params, occ)
        self.params = params
        self.occupancies = occ
        self.drive_amplitude = float(drive_amplitude)
        self._dc = detunings.delta_c_tilde
        self._ds = detunings.delta_s_tilde
        self._drive = self.drive_amplitude * float(np.sqrt(params.kappa_1))
        self._g = params.g_s
        self._n = params.n_spins
        self._kappa = params.kappa_c
        self._n_c = occ.n_c_th
        self._rate_up = params.gamma_s * occ.n_s_th
        self._rate_total = params.eta_s + params.gamma_s * (1.0 + 2.0 * occ.n_s_th)
        self._chi = params.chi_s

    def __call__(self, t: float, y: np.ndarray) -> np.ndarray:
        return self.evaluate(y)

    def evaluate(self, y: np.ndarray) -> np.ndarray:
        A, S, P, n, aa, X, Y, Z, C9, C10, C11, C12 = y.tolist()
        dc = self._dc
        ds = self._ds
        dcc = dc.conjugate()
        dsc = ds.conjugate()
        F = self._drive
        N = self._n
        g = self._g
        ig = 1j * g
        gu = self._rate_up
        gt = self._rate_total

        Ac = A.conjugate()
        Sc = S.conjugate()
        Xc = X.conjugate()
        Yc = Y.conjugate()
        Zc = Z.conjugate()
        aac = aa.conjugate()
        C10c = C10.conjugate()
        C11c = C11.conjugate()
        A2 = (A * Ac).real
        S2 = (S * Sc).real

        # <a+ s12_1 s22_2>, shared by the exchange and pair-population equations
        W = Ac * C10c + S * Y + P * X - 2.0 * Ac * S * P
        Wc = W.conjugate()

        out = [
            -1j * dc * A - 1j * F - 1j * N * g * S,
            -1j * ds * S - ig * A + 2.0 * ig * Yc,
            gu - gt * P + ig * (X - Xc),
            self._kappa * (self._n_c - n) + 1j * F * (A - Ac) + 1j * N * g * (Xc - X),
            -2j * dc * aa - 2j * F * A - 2j * N * g * Z,
            1j * (dcc - ds) * X + 1j * F * S + ig * (P + (N - 1.0) * C9) - ig * n
            + 2.0 * ig * (Ac * Yc + A * Y + P * n - 2.0 * A2 * P),
            (1j * dcc - gt) * Y + gu * Ac + 1j * F * P + ig * (N - 1.0) * C10
            + ig * (2.0 * Ac * X + S * aac - 2.0 * S * Ac * Ac)
            - ig * (Ac * Xc + A * Zc + Sc * n - 2.0 * A2 * Sc),
            -1j * (dc + ds) * Z - 1j * F * S - ig * (aa + (N - 1.0) * C11)
            + 2.0 * ig * (P * aa + 2.0 * A * Yc - 2.0 * P * A * A),
            -(gt + 2.0 * self._chi) * C9 + ig * (X - Xc) - 2.0 * ig * W + 2.0 * ig * Wc,
            (1j * dsc - gt) * C10 + gu * Sc
            + ig * (Ac * C9 + Sc * X + S * Zc - 2.0 * Ac * S2)
            - 2.0 * ig * (Ac * C12 + 2.0 * P * Y - 2.0 * Ac * P * P)
            - ig * (A * C11c + 2.0 * Sc * Xc - 2.0 * A * Sc * Sc)
            + ig * Y,
            -2j * ds * C11 - 2.0 * ig * Z + 4.0 * ig * (A * C10c + S * Yc + P * Z - 2.0 * A * S * P),
            -2.0 * gt * C12 + 2.0 * gu * P + 2.0 * ig * (W - Wc),
        ]
        return np.array(out, dtype=complex)


def derivative(state: CumulantState, params: SystemParams, drive_amplitude: float,
               occupancies: ThermalOccupancies = None) -> StateDerivative:
    """
    Evaluate the cumulant equations of motion at one state.

    Args:
        state (CumulantState): current expectation values.
        params (SystemParams): physical parameters.
        drive_amplitude (float): drive amplitude in sqrt(rad/s).
    """
    values = np.asarray(state.values if isinstance(state, CumulantState) else state, dtype=complex)
    if values.shape != (NUM_SLOTS,) or not np.all(np.isfinite(values)):
        raise InvalidStateError("Derivative requested for a malformed or non-finite state.")
    return StateDerivative(CumulantRHS(params, drive_amplitude, occupancies).evaluate(values))


def thermal_equilibrium_state(params: SystemParams,
                              occupancies: ThermalOccupancies = None) -> CumulantState:
    """
    Undriven, uncoupled fixed point: thermal cavity, spins at the cooled
    single-spin population, no correlations beyond the product p^2.
    """
    occ = occupancies if occupancies is not None else ThermalOccupancies.from_params(params)
    p = single_spin_steady_population(params, occ)
    values = np.zeros(NUM_SLOTS, dtype=complex)
    values[Slot.PHOTON_NUMBER] = occ.n_c_th
    values[Slot.UPPER_POPULATION] = p
    values[Slot.PAIR_POPULATION] = p * p
    return CumulantState(values)
