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
 Description:       Hybrid spin-photon modes of the bosonized spin ensemble.
 ****************************************************************************
"""

import math
from dataclasses import dataclass

from cqed.core.error import InvalidParameterError

@dataclass(frozen=True)
class HybridModes:
    omega_plus: float
    omega_minus: float
    chi: float

    @property
    def splitting(self) -> float:
        return self.omega_plus - self.omega_minus


def _check_j(j: float) -> None:
    if not (j >= 0 and math.isfinite(j)):
        raise InvalidParameterError(f"J must be finite and >= 0, got {j}")


def hybrid_mode_frequencies(omega_s: float, omega_c: float, g_s: float, j: float) -> HybridModes:
    """
    omega_pm = (omega_s + omega_c +- chi)/2 with chi = sqrt(8 g^2 J + (omega_s - omega_c)^2).
    """
    _check_j(j)
    chi = math.sqrt(8.0 * g_s * g_s * j + (omega_s - omega_c) ** 2)
    total = omega_s + omega_c
    return HybridModes(omega_plus=0.5 * (total + chi), omega_minus=0.5 * (total - chi), chi=chi)


def rabi_frequency(g_s: float, j: float) -> float:
    """
    Collective coupling sqrt(2J) g_s, half the resonant splitting.
    """
    _check_j(j)
    return math.sqrt(2.0 * j) * g_s


def small_detuning_frequencies(omega_s: float, omega_c: float, g_s: float, j: float) -> HybridModes:
    """
    Linearized modes for |omega_s - omega_c| << 2 sqrt(2J) g_s.
    """
    coupling = 2.0 * rabi_frequency(g_s, j)
    total = omega_s + omega_c
    return HybridModes(omega_plus=0.5 * (total + coupling), omega_minus=0.5 * (total - coupling),
                       chi=coupling)


def photon_fractions(omega_s: float, omega_c: float, g_s: float, j: float):
    """
    Photon weight |<a|h_pm>|^2 of the upper and lower hybrid mode.
    """
    modes = hybrid_mode_frequencies(omega_s, omega_c, g_s, j)
    if modes.chi == 0:
        return 0.5, 0.5
    detuning = (omega_s - omega_c) / modes.chi
    return 0.5 * (1.0 - detuning), 0.5 * (1.0 + detuning)
