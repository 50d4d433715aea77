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
 Description:       Steady-state Dicke coordinates of the spin ensemble along
                    a temperature path and an optical-cooling path.
 ****************************************************************************
"""

import numpy as np

from cqed import const
from cqed.core.cumulant.dicke import (dicke_degeneracy_log, dicke_from_population,
                                      single_spin_steady_population)
from cqed.core.experiments.report import POINT_COMPLETED, Curve, ExperimentReport, PointResult
from cqed.core.experiments.runner import ExperimentRunner
from cqed.core.experiments.spec import ExperimentSpec, format_value
from cqed.core.model.params import SystemParams, ThermalOccupancies
from cqed.util.log import Log

class DickeMapRunner(ExperimentRunner):
    """
    Closed-form map of (J, M) over temperature at eta = 0 and over eta at
    the preset temperature.
    """

    presets = (const.PRESETS.FIG2B.value,)

    @staticmethod
    def _path(params_list: list, labels: list, report: ExperimentReport) -> dict:
        n_spins = params_list[0].n_spins
        columns = {"upper_population": [], "dicke_j": [], "dicke_m": [],
                   "j_ratio": [], "log_degeneracy": []}
        for params, label in zip(params_list, labels):
            population = single_spin_steady_population(params, ThermalOccupancies.from_params(params))
            coords = dicke_from_population(population, n_spins)
            inside = coords.within_triangle(n_spins)
            if not inside:
                Log.warning(f"{label}: (J, M) = ({coords.j:.6e}, {coords.m:.6e}) outside the Dicke triangle")
            columns["upper_population"].append(population)
            columns["dicke_j"].append(coords.j)
            columns["dicke_m"].append(coords.m)
            columns["j_ratio"].append(coords.j_ratio(n_spins))
            columns["log_degeneracy"].append(dicke_degeneracy_log(n_spins, coords.j))
            report.points.append(PointResult(label, POINT_COMPLETED,
                                             {"within_triangle": inside}))
        return columns

    def _run(self, spec: ExperimentSpec, report: ExperimentReport) -> None:
        base: SystemParams = spec.params
        temperatures = spec.grid("temperature")
        etas = spec.grid("eta_s")

        thermal = self._path([base.replace(temperature=t, eta_s=0.0) for t in temperatures],
                             [f"temperature_{format_value(t)}" for t in temperatures], report)
        report.add_curve("dicke_temperature", Curve.from_columns(temperature_k=temperatures, **thermal))

        cooled = self._path([base.replace(eta_s=eta) for eta in etas],
                            [f"eta_{format_value(eta)}" for eta in etas], report)
        report.add_curve("dicke_eta", Curve.from_columns(eta_s_per_s=etas, **cooled))

        j0 = 0.5 * base.n_spins
        report.add_curve("triangle_boundary", Curve.from_columns(
            dicke_j=np.array([0.0, j0, j0, 0.0]), dicke_m=np.array([0.0, j0, -j0, 0.0])))

        report.summary["temperature_k"] = base.temperature
        report.summary["j_ratio_by_eta"] = {format_value(eta): ratio
                                            for eta, ratio in zip(etas, cooled["j_ratio"])}
        report.summary["within_triangle"] = all(point.diagnostics["within_triangle"]
                                                for point in report.points)


def run_dicke_map(spec: ExperimentSpec) -> ExperimentReport:
    return DickeMapRunner().run(spec)
