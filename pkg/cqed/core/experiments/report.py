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
 Description:       Results of one experiment run.
 ****************************************************************************
"""

from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from cqed import const
from cqed.core.error import InvalidParameterError

# status of grid points that are evaluated, not iterated to convergence
POINT_COMPLETED = "completed"
POINT_FAILED = "failed"

class Curve(NamedTuple):
    """
    One output table. Column names carry their unit suffix.
    """
    columns: tuple
    rows: np.ndarray

    @classmethod
    def from_columns(cls, **columns) -> "Curve":
        names = tuple(columns)
        arrays = [np.asarray(columns[name], dtype=float).reshape(-1) for name in names]
        lengths = {a.size for a in arrays}
        if len(lengths) > 1:
            raise InvalidParameterError(f"Columns {names} have different lengths {sorted(lengths)}")
        return cls(names, np.column_stack(arrays) if arrays else np.empty((0, 0)))

    def column(self, name: str) -> np.ndarray:
        return self.rows[:, self.columns.index(name)]


@dataclass
class PointResult:
    """
    Outcome of one grid point (a steady state or a trajectory).
    """
    label: str
    status: str
    diagnostics: dict = field(default_factory=dict)
    state: Optional[object] = None
    trajectory: Optional[object] = None

    @property
    def converged(self) -> bool:
        return self.status not in (const.STEADY_STATUS.NOT_CONVERGED.value,
                                   const.STEADY_STATUS.DIVERGED.value, POINT_FAILED)


@dataclass
class ExperimentReport:
    """
    Tables, per-point results, extracted peaks and derived quantities of one
    run. curves maps an output name to its table; peaks maps a series
    label to its SpectrumPeaks, located along peak_axis; summary holds
    derived quantities.
    """
    preset: str
    curves: dict = field(default_factory=dict)
    points: list = field(default_factory=list)
    peaks: dict = field(default_factory=dict)
    peak_axis: str = "drive_detuning"
    summary: dict = field(default_factory=dict)
    wall_time: float = 0.0

    def add_curve(self, name: str, curve: Curve) -> None:
        if name in self.curves:
            raise InvalidParameterError(f"Duplicate output '{name}'")
        self.curves[name] = curve

    @property
    def failures(self) -> list:
        return [point for point in self.points if not point.converged]

    @property
    def converged(self) -> bool:
        return not self.failures

    def convergence(self) -> dict:
        return {point.label: point.status for point in self.points}
