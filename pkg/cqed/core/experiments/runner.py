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
 Description:       Base class of the experiment runners and the result
                    helpers they share.
 ****************************************************************************
"""

import abc
import time

import numpy as np

from cqed.core.analytics.peaks import SpectrumPeaks, find_peaks
from cqed.core.error import ExperimentError
from cqed.core.experiments.report import (POINT_COMPLETED, POINT_FAILED, Curve,
                                          ExperimentReport, PointResult)
from cqed.core.experiments.spec import ExperimentSpec
from cqed.core.experiments.sweep import TransientResult
from cqed.core.integrator.trajectory import Trajectory
from cqed.core.model.state import Slot
from cqed.util.log import Log

class ExperimentRunner(metaclass=abc.ABCMeta):
    """
    Generic experiment. Subclasses list the presets they serve and fill the
    report in _run.
    """

    presets: tuple = ()

    def run(self, spec: ExperimentSpec) -> ExperimentReport:
        """
        Run one experiment and time it.
        """
        if spec.preset not in self.presets:
            raise ExperimentError(f"{type(self).__name__} cannot run preset '{spec.preset}'")
        Log.info(f"Running {spec.preset} with {spec.workers} worker(s), "
                 f"grids { {name: len(values) for name, values in spec.grids.items()} }")
        report = ExperimentReport(preset=spec.preset)
        start = time.perf_counter()
        self._run(spec, report)
        report.wall_time = time.perf_counter() - start
        Log.info(f"{spec.preset} finished in {report.wall_time:.2f} s, "
                 f"{len(report.failures)} non-converged point(s)")
        return report

    @abc.abstractmethod
    def _run(self, spec: ExperimentSpec, report: ExperimentReport) -> None:
        pass


def trajectory_curve(trajectory: Trajectory, quadratures: bool = False) -> Curve:
    columns = {"time_s": trajectory.times,
               "photon_number": trajectory.photon_number,
               "upper_population": trajectory.upper_population,
               "dicke_j": trajectory.dicke_j,
               "dicke_m": trajectory.dicke_m}
    if quadratures:
        field = trajectory.column(Slot.FIELD)
        columns["field_real"] = field.real
        columns["field_imag"] = field.imag
    return Curve.from_columns(**columns)


def transient_point(result: TransientResult) -> PointResult:
    if result.trajectory is None:
        return PointResult(result.label, POINT_FAILED, {"error": result.error})
    return PointResult(result.label, POINT_COMPLETED, dict(result.trajectory.diagnostics),
                       trajectory=result.trajectory)


def collect_sweep(report: ExperimentReport, label: str, points: list) -> np.ndarray:
    """
    Record the points of one sweep chain and return their photon numbers,
    NaN where no steady state was found.
    """
    photons = np.full(len(points), np.nan)
    for index, point in enumerate(points):
        diagnostics = dict(point.diagnostics)
        diagnostics.update(residual_norm=point.residual_norm,
                           elapsed_model_time=point.elapsed_model_time)
        report.points.append(PointResult(f"{label}[{index}]", point.status, diagnostics,
                                         state=point.state))
        if point.state is not None:
            photons[index] = point.state.photon_number
    return photons


def spectrum_peaks(axis: np.ndarray, photons: np.ndarray, label: str) -> SpectrumPeaks:
    """
    Peaks of a sweep, over the points that reached a steady state.
    """
    valid = np.isfinite(photons)
    if np.count_nonzero(valid) < len(photons):
        Log.warning(f"{label}: {len(photons) - np.count_nonzero(valid)} sweep points "
                    f"left out of the peak search")
    if np.count_nonzero(valid) < 5:
        Log.warning(f"{label}: too few steady points for a peak search")
        return SpectrumPeaks(peaks=())
    return find_peaks(np.column_stack([axis[valid], photons[valid]]))
