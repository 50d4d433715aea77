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
 Description:       Field sensing from the spin-cavity spectrum. Mode A sweeps
                    the drive and reads the spin frequency from the sum of
                    the two hybrid-mode frequencies; mode B sweeps the spin
                    frequency at a fixed drive.
 ****************************************************************************
"""

import math

import numpy as np

from cqed import const
from cqed.core.analytics.hybrid_modes import hybrid_mode_frequencies
from cqed.core.analytics.peaks import infer_spin_frequency
from cqed.core.cumulant.dynamics import thermal_equilibrium_state
from cqed.core.error import PeakCountError
from cqed.core.experiments.rabi import steady_dicke_j
from cqed.core.experiments.report import Curve, ExperimentReport
from cqed.core.experiments.runner import ExperimentRunner, collect_sweep, spectrum_peaks
from cqed.core.experiments.spec import ExperimentSpec, format_value
from cqed.core.experiments.sweep import SweepChain, run_chains
from cqed.core.model.params import field_from_spin_frequency
from cqed.util.log import Log

class SensingRunner(ExperimentRunner):
    """
    Serves both sensing modes; the preset selects which one.
    """

    presets = (const.PRESETS.FIG5A.value, const.PRESETS.FIG5B.value)

    def _run(self, spec: ExperimentSpec, report: ExperimentReport) -> None:
        if spec.preset == const.PRESETS.FIG5A.value:
            self._drive_sweep(spec, report)
        else:
            self._spin_sweep(spec, report)

    @staticmethod
    def _base(spec: ExperimentSpec):
        eta = spec.setting("fixed_eta_s")
        return spec.params if eta is None else spec.params.replace(eta_s=eta)

    def _drive_sweep(self, spec: ExperimentSpec, report: ExperimentReport) -> None:
        base = self._base(spec)
        detunings = np.asarray(spec.grid("drive_detuning"))
        spin_detunings = spec.grid("spin_detuning")
        chains = []
        for delta_s in spin_detunings:
            points = tuple(base.replace(omega_s=base.omega_c + delta_s, omega_d=base.omega_c + delta)
                           for delta in detunings)
            chains.append(SweepChain(f"delta_{format_value(delta_s / const.TWO_PI)}", points,
                                     spec.setting("drive_amplitude"), spec.integration, spec.steady,
                                     thermal_equilibrium_state(points[0])))

        step = float(np.min(np.diff(detunings))) if detunings.size > 1 else math.nan
        for delta_s, chain, results in zip(spin_detunings, chains, run_chains(chains, spec.workers)):
            photons = collect_sweep(report, chain.label, results)
            report.add_curve(f"sensing_{chain.label}", Curve.from_columns(
                drive_detuning_hz=detunings / const.TWO_PI, photon_number=photons))
            peaks = spectrum_peaks(detunings, photons, chain.label)
            report.peaks[chain.label] = peaks
            params = chain.points[0]
            modes = hybrid_mode_frequencies(params.omega_s, params.omega_c, params.g_s,
                                            steady_dicke_j(params))
            try:
                inferred = infer_spin_frequency(peaks, 0.0)
            except PeakCountError:
                Log.warning(f"{chain.label}: spin frequency not inferred from {len(peaks)} peak(s)")
                inferred = math.nan
            report.summary[chain.label] = {
                "spin_detuning_hz": delta_s / const.TWO_PI,
                "inferred_spin_detuning_hz": inferred / const.TWO_PI,
                "inference_error_hz": (inferred - delta_s) / const.TWO_PI,
                "grid_step_hz": step / const.TWO_PI,
                "inferred_field_t": field_from_spin_frequency(params.omega_c + inferred),
                "predicted_detunings_hz": [(modes.omega_minus - params.omega_c) / const.TWO_PI,
                                           (modes.omega_plus - params.omega_c) / const.TWO_PI],
                "measured_detunings_hz": [f / const.TWO_PI for f in peaks.frequencies],
            }

    def _spin_sweep(self, spec: ExperimentSpec, report: ExperimentReport) -> None:
        base = self._base(spec)
        spin_detunings = np.asarray(spec.grid("spin_detuning"))
        offsets = spec.grid("drive_offset")
        chains = []
        for offset in offsets:
            points = tuple(base.replace(omega_s=base.omega_c + delta_s, omega_d=base.omega_c + offset)
                           for delta_s in spin_detunings)
            chains.append(SweepChain(f"offset_{format_value(offset / const.TWO_PI)}", points,
                                     spec.setting("drive_amplitude"), spec.integration, spec.steady,
                                     thermal_equilibrium_state(points[0])))

        report.peak_axis = "spin_detuning"
        for offset, chain, results in zip(offsets, chains, run_chains(chains, spec.workers)):
            photons = collect_sweep(report, chain.label, results)
            report.add_curve(f"sensing_{chain.label}", Curve.from_columns(
                spin_detuning_hz=spin_detunings / const.TWO_PI, photon_number=photons))
            report.peaks[chain.label] = spectrum_peaks(spin_detunings, photons, chain.label)
            valid = np.flatnonzero(np.isfinite(photons))
            minimum = valid[np.argmin(photons[valid])] if valid.size else None
            report.summary[chain.label] = {
                "drive_offset_hz": offset / const.TWO_PI,
                "minimum_spin_detuning_hz": math.nan if minimum is None
                else spin_detunings[minimum] / const.TWO_PI,
                "minimum_photon_number": math.nan if minimum is None else float(photons[minimum]),
                "maximum_photon_number": float(np.nanmax(photons)) if valid.size else math.nan,
            }


def run_sensing(spec: ExperimentSpec) -> ExperimentReport:
    return SensingRunner().run(spec)
