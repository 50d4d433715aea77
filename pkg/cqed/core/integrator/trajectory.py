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
 Description:       Time integration of the cumulant equations through a
                    piecewise-constant drive protocol.
 ****************************************************************************
"""

from dataclasses import dataclass, field

import numpy as np

from cqed import const
from cqed.core.cumulant.dicke import dicke_from_cumulants
from cqed.core.cumulant.dynamics import CumulantRHS
from cqed.core.error import (CQEDError, IntegrationError, InvalidParameterError)
from cqed.core.integrator.dopri5 import DormandPrince, IntegrationConfig
from cqed.core.model.params import SystemParams, ThermalOccupancies
from cqed.core.model.protocol import DriveProtocol
from cqed.core.model.state import (CumulantState, DickeCoordinates, Slot,
                                   hermiticity_residue)
from cqed.util.log import Log

class HermiticityMonitor:
    """
    Tracks the imaginary residue of the hermitian slots over accepted steps.
    """

    def __init__(self, limit: float = const.HERMITICITY_WARN_LIMIT):
        self.limit = limit
        self.max_residue = 0.0
        self.time_of_max = None
        self._warned = False

    def __call__(self, t: float, y: np.ndarray) -> None:
        residue = hermiticity_residue(y)
        if residue > self.max_residue:
            self.max_residue = residue
            self.time_of_max = t
        if residue > self.limit and not self._warned:
            self._warned = True
            Log.warning(f"Hermiticity residue {residue:.3e} above {self.limit:.1e} at t={t:.6e}")


@dataclass
class Trajectory:
    """
    Sampled cumulant trajectory with Dicke coordinates per sample. Samples
    whose Dicke coordinates are undefined carry NaN.
    """
    times: np.ndarray
    values: np.ndarray
    dicke_j: np.ndarray
    dicke_m: np.ndarray
    n_spins: float
    diagnostics: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return self.times.size

    def state(self, index: int) -> CumulantState:
        return CumulantState(self.values[index], check_bounds=False)

    @property
    def states(self) -> list:
        return [self.state(index) for index in range(len(self))]

    def dicke(self, index: int) -> DickeCoordinates:
        return DickeCoordinates(self.dicke_j[index], self.dicke_m[index])

    def column(self, slot: Slot) -> np.ndarray:
        return self.values[:, int(slot)]

    @property
    def photon_number(self) -> np.ndarray:
        return self.values[:, Slot.PHOTON_NUMBER].real

    @property
    def upper_population(self) -> np.ndarray:
        return self.values[:, Slot.UPPER_POPULATION].real

    @property
    def final_state(self) -> CumulantState:
        return self.state(len(self) - 1)


def _validate_grid(sample_grid, total: float) -> np.ndarray:
    grid = np.asarray(sample_grid, dtype=float).reshape(-1)
    if grid.size == 0:
        raise InvalidParameterError("Sample grid is empty.")
    if not np.all(np.isfinite(grid)):
        raise InvalidParameterError("Sample grid contains non-finite times.")
    if np.any(np.diff(grid) <= 0):
        raise InvalidParameterError("Sample grid must be strictly increasing.")
    if grid[0] < 0 or grid[-1] > total:
        raise InvalidParameterError(f"Sample grid [{grid[0]}, {grid[-1]}] outside protocol [0, {total}]")
    return grid


def dicke_track(values: np.ndarray, n_spins: float):
    """
    Dicke coordinates for every row of a (samples, 12) array.

    Returns:
        (j, m, unphysical): arrays, and the indices where J is undefined.
    """
    j = np.full(values.shape[0], np.nan)
    m = np.full(values.shape[0], np.nan)
    unphysical = []
    for index, row in enumerate(values):
        try:
            coords = dicke_from_cumulants(CumulantState(row, check_bounds=False), n_spins)
        except CQEDError:
            unphysical.append(index)
            continue
        j[index] = coords.j
        m[index] = coords.m
    return j, m, unphysical


def integrate(initial: CumulantState, params: SystemParams, protocol: DriveProtocol,
              config: IntegrationConfig, sample_grid) -> Trajectory:
    """
    Integrate the cumulant equations through every protocol segment. Each
    segment starts with a fresh step-size selection so no step straddles a
    drive discontinuity. Integration stops at the last sample time.
    """
    grid = _validate_grid(sample_grid, protocol.total_duration)
    occ = ThermalOccupancies.from_params(params)
    monitor = HermiticityMonitor()
    solver = DormandPrince(config, monitor)
    y = initial.as_array()
    values = np.empty((grid.size, y.size), dtype=complex)
    filled = 0
    t_end = grid[-1]
    for start, end, amplitude in protocol.segment_bounds():
        stop = min(end, t_end)
        upper = int(np.searchsorted(grid, stop, side="right"))
        rhs = CumulantRHS(params, amplitude, occ)
        try:
            out, y = solver.solve(rhs, y, start, stop, grid[filled:upper])
        except IntegrationError as err:
            Log.error(f"Integration failed in segment [{start:.6e}, {end:.6e}]: {err}")
            raise
        values[filled:upper] = out
        filled = upper
        if stop >= t_end:
            break

    j, m, unphysical = dicke_track(values, params.n_spins)
    if unphysical:
        Log.warning(f"{len(unphysical)} samples have no Dicke interpretation, "
                    f"first at t={grid[unphysical[0]]:.6e}")
    diagnostics = {
        "max_hermiticity_residue": monitor.max_residue,
        "steps": solver.stats.to_dict(),
        "unphysical_samples": len(unphysical),
        "first_unphysical_time": float(grid[unphysical[0]]) if unphysical else None,
    }
    return Trajectory(times=grid, values=values, dicke_j=j, dicke_m=m,
                      n_spins=params.n_spins, diagnostics=diagnostics)
