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
 Description:       Exact master equation of the driven resonator with a few
                    spins, in the frame rotating at the drive frequency.
 ****************************************************************************
"""

import math

import numpy as np

from cqed import const
from cqed.core.error import InvalidParameterError, OracleDimensionError
from cqed.core.model.params import SystemParams, ThermalOccupancies
from cqed.core.oracle.hilbert import HilbertLayout, operators

class Liouvillian:
    """
    L(rho) = -i[H, rho] + sum_k (L_k rho L_k^+ - 1/2 {L_k^+ L_k, rho}).
    """

    def __init__(self, layout: HilbertLayout, hamiltonian: np.ndarray, jump_operators: list):
        self.layout = layout
        self.hamiltonian = hamiltonian
        self.jump_operators = list(jump_operators)
        decay = np.zeros_like(hamiltonian)
        for jump in self.jump_operators:
            decay = decay + jump.conj().T @ jump
        self._heff = hamiltonian - 0.5j * decay
        self._jumps_dagger = [jump.conj().T for jump in self.jump_operators]

    def apply(self, rho: np.ndarray) -> np.ndarray:
        product = self._heff @ rho
        out = -1j * product + 1j * (rho @ self._heff.conj().T)
        for jump, jump_dagger in zip(self.jump_operators, self._jumps_dagger):
            out += jump @ rho @ jump_dagger
        return out

    def rhs(self, t: float, vector: np.ndarray) -> np.ndarray:
        dimension = self.layout.dimension
        return self.apply(vector.reshape(dimension, dimension)).reshape(-1)

    def matrix(self) -> np.ndarray:
        """
        Superoperator acting on row-major vec(rho): vec(A X B) = (A kron B^T) vec(X).
        """
        dimension = self.layout.dimension
        if dimension > const.ORACLE_SUPEROPERATOR_MAX_DIMENSION:
            raise OracleDimensionError(f"Explicit superoperator limited to dimension "
                                       f"{const.ORACLE_SUPEROPERATOR_MAX_DIMENSION}, got {dimension}")
        identity = np.eye(dimension, dtype=complex)
        superop = -1j * np.kron(self._heff, identity) + 1j * np.kron(identity, self._heff.conj())
        for jump in self.jump_operators:
            superop += np.kron(jump, jump.conj())
        return superop


def build_liouvillian(params: SystemParams, layout: HilbertLayout, drive_amplitude: float,
                      occupancies: ThermalOccupancies = None) -> Liouvillian:
    """
    Hamiltonian Delta_c a+a + Delta_s sum s22 + g (a+ sum s12 + a sum s21)
    + Omega sqrt(kappa_1)(a + a+), with cavity, thermal spin, cooling and
    dephasing dissipators.
    """
    if params.n_spins != layout.n_spins_exact:
        raise InvalidParameterError(f"n_spins {params.n_spins} differs from the exact layout "
                                    f"({layout.n_spins_exact} spins)")
    occ = occupancies if occupancies is not None else ThermalOccupancies.from_params(params)
    ops = operators(layout)
    a = ops.a
    a_dag = a.conj().T
    drive = drive_amplitude * math.sqrt(params.kappa_1)
    hamiltonian = params.delta_c * (a_dag @ a) + drive * (a + a_dag)
    for lowering, raising, upper in zip(ops.lowering, ops.raising, ops.upper):
        hamiltonian = hamiltonian + params.delta_s * upper \
            + params.g_s * (a_dag @ lowering + a @ raising)

    jumps = []

    def add(rate, operator):
        if rate > 0:
            jumps.append(math.sqrt(rate) * operator)

    add(params.kappa_c * (1.0 + occ.n_c_th), a)
    add(params.kappa_c * occ.n_c_th, a_dag)
    for lowering, raising, upper in zip(ops.lowering, ops.raising, ops.upper):
        add(params.gamma_s * (1.0 + occ.n_s_th), lowering)
        add(params.gamma_s * occ.n_s_th, raising)
        add(params.eta_s, lowering)
        add(2.0 * params.chi_s, upper)
    return Liouvillian(layout, hamiltonian, jumps)
