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
 Description:       Steady single-spin population and Dicke coordinates of
                    the spin ensemble.
 ****************************************************************************
"""

import math

import numpy as np
from scipy.special import gammaln

from cqed import const
from cqed.core.error import (InvalidParameterError, UndampedSpinError,
                             UnphysicalStateError)
from cqed.core.model.params import SystemParams, ThermalOccupancies
from cqed.core.model.state import CumulantState, DickeCoordinates, Slot
from cqed.util.log import Log

def single_spin_steady_population(params: SystemParams, occ: ThermalOccupancies) -> float:
    """
    Upper-level population of one spin under thermal jumps and optical cooling,
    n_th*gamma / (eta + gamma*(1 + 2*n_th)). Always below 1/2.
    """
    denominator = params.eta_s + params.gamma_s * (1.0 + 2.0 * occ.n_s_th)
    if denominator <= 0:
        raise UndampedSpinError()
    return occ.n_s_th * params.gamma_s / denominator


def _j_from_j_squared(j_squared: float) -> float:
    # non-negative root of J(J+1) = X, written without cancellation
    return 2.0 * j_squared / (1.0 + math.sqrt(1.0 + 4.0 * j_squared))


def dicke_from_population(p: float, n_spins: float) -> DickeCoordinates:
    """
    Mean (J, M) of N uncorrelated spins with upper population p.

    M = J0*(2p - 1) and J(J+1) = (2p-1)^2 J0(J0+1) + 6p(1-p) J0, J0 = N/2.
    """
    if not 0.0 <= p <= 1.0:
        raise InvalidParameterError(f"Population must lie in [0, 1], got {p}")
    j0 = 0.5 * n_spins
    polarization = 2.0 * p - 1.0
    j_squared = polarization * polarization * j0 * (j0 + 1.0) + 6.0 * p * (1.0 - p) * j0
    return DickeCoordinates(j=_j_from_j_squared(j_squared), m=j0 * polarization)


def collective_spin_squared(state: CumulantState, n_spins: float) -> float:
    """
    <J^2> = 3N/4 + N(N-1)(<s21_1 s12_2> + <s22_1 s22_2> - <s22_1> + 1/4).
    """
    population = state.upper_population
    exchange = state[Slot.EXCHANGE].real
    pair_population = state[Slot.PAIR_POPULATION].real
    return 0.75 * n_spins + n_spins * (n_spins - 1.0) * (exchange + pair_population - population + 0.25)


def dicke_from_cumulants(state: CumulantState, n_spins: float) -> DickeCoordinates:
    """
    Mean (J, M) read from the cumulant slots.

    A radicand slightly below zero (round-off) is clipped; anything below
    -DICKE_CLIP_FACTOR * N^2 is a closure breakdown.
    """
    j_squared = collective_spin_squared(state, n_spins)
    if j_squared < 0:
        if j_squared < -const.DICKE_CLIP_FACTOR * n_spins * n_spins:
            raise UnphysicalStateError(f"Negative collective spin radicand {j_squared:.6e}",
                                       radicand=j_squared)
        Log.warning(f"Clipping collective spin radicand {j_squared:.3e} to 0")
        j_squared = 0.0
    m = n_spins * (state.upper_population - 0.5)
    return DickeCoordinates(j=_j_from_j_squared(j_squared), m=m)


def dicke_degeneracy_log(n_spins: float, j: float) -> float:
    """
    Natural log of N!(2J+1)/[(N/2+J+1)!(N/2-J)!], the number of Dicke ladders
    sharing quantum number J.
    """
    j0 = 0.5 * n_spins
    if j0 < j <= j0 * (1.0 + 1e-12):
        j = j0
    if j < 0 or j > j0:
        raise InvalidParameterError(f"J must lie in [0, N/2], got {j}")
    return float(gammaln(n_spins + 1.0) + np.log(2.0 * j + 1.0)
                 - gammaln(j0 + j + 2.0) - gammaln(j0 - j + 1.0))
