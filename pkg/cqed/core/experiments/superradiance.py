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
 Description:       Stimulated superradiant emission after a short inverting
                    pulse, and the optical re-cooling that follows.
 ****************************************************************************
"""

import math

import numpy as np
from scipy import signal

from cqed import const
from cqed.core.cumulant.dynamics import thermal_equilibrium_state
from cqed.core.experiments.rabi import steady_dicke_j
from cqed.core.experiments.report import ExperimentReport
from cqed.core.experiments.runner import ExperimentRunner, trajectory_curve, transient_point
from cqed.core.experiments.spec import ExperimentSpec, format_value
from cqed.core.experiments.sweep import TransientTask, parallel_map, run_transient
from cqed.core.integrator.trajectory import Trajectory
from cqed.core.model.params import SystemParams
from cqed.core.model.protocol import DriveProtocol
from cqed.util.log import Log

def composite_grid(total: float, early_window: float, early_samples: int, late_samples: int) -> np.ndarray:
    """
    Uniform samples over the emission window, then log-spaced samples out
    to the end of the re-cooling tail.
    """
    if total <= early_window:
        return np.linspace(0.0, total, int(early_samples))
    early = np.linspace(0.0, early_window, int(early_samples))
    late = np.geomspace(early_window, total, int(late_samples) + 1)[1:]
    return np.concatenate([early, late])


def emission_metrics(trajectory: Trajectory, params: SystemParams, pulse: float) -> dict:
    """
    Burst height and timing, the population plateau left behind and the time
    the optical pumping needs to bring J back to 90% of its steady value.
    """
    times = trajectory.times
    photons = trajectory.photon_number
    after = np.flatnonzero(times > pulse)
    metrics = {"eta_s": params.eta_s, "peak_photon_number": math.nan, "peak_time_s": math.nan,
               "emission_start_s": math.nan, "pulse_end_s": math.nan, "pulse_duration_s": math.nan,
               "plateau_upper_population": math.nan, "dicke_j_steady": steady_dicke_j(params),
               "recooling_time_s": math.nan}
    if after.size == 0:
        return metrics
    tail = photons[after]
    maxima, _ = signal.find_peaks(tail)
    peak = after[maxima[np.argmax(tail[maxima])]] if maxima.size else after[np.argmax(tail)]
    height = float(photons[peak])
    metrics["peak_photon_number"] = height
    metrics["peak_time_s"] = float(times[peak])

    threshold = const.PULSE_END_FRACTION * height
    before = np.flatnonzero(photons[after[0]:peak] < threshold)
    start = after[0] + before[-1] if before.size else after[0]
    metrics["emission_start_s"] = float(times[start])
    below = np.flatnonzero(photons[peak:] < threshold)
    if below.size == 0:
        Log.warning(f"eta={params.eta_s:g}: emission does not fall below "
                    f"{const.PULSE_END_FRACTION:.0%} of its peak within the run")
        return metrics
    end = peak + below[0]
    metrics["pulse_end_s"] = float(times[end])
    metrics["pulse_duration_s"] = float(times[end] - times[start])
    metrics["plateau_upper_population"] = float(trajectory.upper_population[end])

    target = const.RECOOLING_FRACTION * metrics["dicke_j_steady"]
    recovered = np.flatnonzero(trajectory.dicke_j[end:] >= target)
    if recovered.size:
        metrics["recooling_time_s"] = float(times[end + recovered[0]] - times[end])
    else:
        Log.warning(f"eta={params.eta_s:g}: J stays below {const.RECOOLING_FRACTION:.0%} "
                    f"of its steady value")
    return metrics


class SuperradianceRunner(ExperimentRunner):
    """
    One inverting pulse and a long free tail per cooling rate.
    """

    presets = (const.PRESETS.FIG4.value,)

    def _run(self, spec: ExperimentSpec, report: ExperimentReport) -> None:
        pulse = spec.setting("pulse")
        protocol = DriveProtocol.pulse(spec.setting("drive_amplitude"), pulse, spec.setting("tail"))
        grid = tuple(composite_grid(protocol.total_duration, spec.setting("early_window"),
                                    spec.setting("early_samples"), spec.setting("late_samples")))
        tasks = []
        for eta in spec.grid("eta_s"):
            params = spec.params.replace(eta_s=eta)
            tasks.append(TransientTask(f"eta_{format_value(eta)}", params, protocol,
                                       spec.integration, grid, thermal_equilibrium_state(params)))

        for task, result in zip(tasks, parallel_map(run_transient, tasks, spec.workers)):
            report.points.append(transient_point(result))
            if result.trajectory is None:
                Log.error(f"{task.label}: transient failed: {result.error}")
                continue
            report.add_curve(f"superradiance_{task.label}", trajectory_curve(result.trajectory))
            report.summary[task.label] = emission_metrics(result.trajectory, task.params, pulse)


def run_superradiance(spec: ExperimentSpec) -> ExperimentReport:
    return SuperradianceRunner().run(spec)
