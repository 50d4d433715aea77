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
 Description:       Experiment description shared by the CLI, the runners and
                    the run manifest.
 ****************************************************************************
"""

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from cqed import const
from cqed.core.config.units import params_from_preset
from cqed.core.error import InvalidParameterError
from cqed.core.integrator.dopri5 import IntegrationConfig
from cqed.core.integrator.steady_state import SteadyStateSettings
from cqed.core.model.params import SystemParams

# parameter preset used when a configuration names none
DEFAULT_PARAM_PRESETS = {
    const.PRESETS.FIG2B.value: const.PARAM_PRESETS.FIG3.value,
    const.PRESETS.FIG3A.value: const.PARAM_PRESETS.FIG3.value,
    const.PRESETS.FIG3B.value: const.PARAM_PRESETS.FIG3.value,
    const.PRESETS.FIG4.value: const.PARAM_PRESETS.FIG4.value,
    const.PRESETS.FIG5A.value: const.PARAM_PRESETS.FIG3.value,
    const.PRESETS.FIG5B.value: const.PARAM_PRESETS.FIG3.value,
    const.PRESETS.ORACLE_CHECK.value: const.PARAM_PRESETS.ORACLE.value,
}

# grids each preset sweeps; the order is the nesting order of the sweep
PRESET_GRIDS = {
    const.PRESETS.FIG2B.value: ("temperature", "eta_s"),
    const.PRESETS.FIG3A.value: ("eta_s",),
    const.PRESETS.FIG3B.value: ("eta_s", "drive_detuning"),
    const.PRESETS.FIG4.value: ("eta_s",),
    const.PRESETS.FIG5A.value: ("spin_detuning", "drive_detuning"),
    const.PRESETS.FIG5B.value: ("drive_offset", "spin_detuning"),
    const.PRESETS.ORACLE_CHECK.value: ("n_spins_exact",),
}

# grids whose values are angular frequencies
ANGULAR_GRIDS = ("drive_detuning", "spin_detuning", "drive_offset")

# scalar protocol settings; the drive amplitudes and fixed_eta_s are rates
SETTING_KEYS = ("drive_amplitude", "pulse", "tail", "samples", "early_window",
                "early_samples", "late_samples", "fixed_eta_s", "duration", "strong_drive_amplitude")

RATE_SETTINGS = ("drive_amplitude", "strong_drive_amplitude", "fixed_eta_s")


def sweep_grid(points: int = const.SWEEP_POINTS, half_span: float = const.SWEEP_HALF_SPAN) -> tuple:
    return tuple(float(x) for x in np.linspace(-half_span, half_span, int(points)))


def default_grids(preset: str) -> dict:
    temperatures = np.logspace(math.log10(const.FIG2B_TEMPERATURES[0]),
                               math.log10(const.FIG2B_TEMPERATURES[1]),
                               int(const.FIG2B_TEMPERATURES[2]))
    table = {
        const.PRESETS.FIG2B.value: {"temperature": tuple(float(t) for t in temperatures),
                                    "eta_s": const.FIG2B_ETA_GRID},
        const.PRESETS.FIG3A.value: {"eta_s": const.FIG3A_ETA_GRID},
        const.PRESETS.FIG3B.value: {"eta_s": const.FIG3B_ETA_GRID,
                                    "drive_detuning": sweep_grid()},
        const.PRESETS.FIG4.value: {"eta_s": const.FIG4_ETA_GRID},
        const.PRESETS.FIG5A.value: {"spin_detuning": const.FIG5A_SPIN_DETUNINGS,
                                    "drive_detuning": sweep_grid()},
        const.PRESETS.FIG5B.value: {"drive_offset": const.FIG5B_DRIVE_OFFSETS,
                                    "spin_detuning": sweep_grid()},
        const.PRESETS.ORACLE_CHECK.value: {"n_spins_exact": const.ORACLE_CHECK_SPINS},
    }
    return {name: tuple(float(v) for v in values) for name, values in table[preset].items()}


def default_settings(preset: str) -> dict:
    table = {
        const.PRESETS.FIG2B.value: {},
        const.PRESETS.FIG3A.value: {"drive_amplitude": const.FIG3A_DRIVE, "pulse": const.FIG3A_PULSE,
                                    "tail": const.FIG3A_TAIL, "samples": const.FIG3A_SAMPLES},
        const.PRESETS.FIG3B.value: {"drive_amplitude": const.FIG3B_DRIVE},
        const.PRESETS.FIG4.value: {"drive_amplitude": const.FIG4_DRIVE, "pulse": const.FIG4_PULSE,
                                   "tail": const.FIG4_TAIL, "early_window": const.FIG4_EARLY_WINDOW,
                                   "early_samples": const.FIG4_EARLY_SAMPLES,
                                   "late_samples": const.FIG4_LATE_SAMPLES},
        const.PRESETS.FIG5A.value: {"drive_amplitude": const.FIG5_DRIVE, "fixed_eta_s": const.FIG5_ETA},
        const.PRESETS.FIG5B.value: {"drive_amplitude": const.FIG5_DRIVE, "fixed_eta_s": const.FIG5_ETA},
        const.PRESETS.ORACLE_CHECK.value: {"drive_amplitude": const.ORACLE_CHECK_DRIVE,
                                           "strong_drive_amplitude": const.ORACLE_CHECK_STRONG_DRIVE,
                                           "duration": None,
                                           "samples": const.ORACLE_CHECK_SAMPLES},
    }
    return dict(table[preset])


def format_value(value: float) -> str:
    """
    Compact label of a grid value used in file names: 0, 5e2, 2.5e4, -2e6.
    """
    if value == 0:
        return "0"
    exponent = int(math.floor(math.log10(abs(value))))
    mantissa = round(value / 10.0 ** exponent, 6)
    if abs(mantissa) >= 10:
        mantissa /= 10.0
        exponent += 1
    return f"{mantissa:g}e{exponent}"


@dataclass(frozen=True)
class ExperimentSpec:
    """
    Everything needed to reproduce one experiment: the preset, the resolved
    parameters (angular units), the grids, protocol settings and solver
    settings. unit_interpretation records how each configured value was read.
    """
    preset: str
    params: SystemParams
    param_preset: str = None
    grids: dict = field(default_factory=dict)
    settings: dict = field(default_factory=dict)
    overrides: dict = field(default_factory=dict)
    integration: IntegrationConfig = field(default_factory=IntegrationConfig)
    steady: SteadyStateSettings = field(default_factory=SteadyStateSettings)
    workers: int = 1
    output_dir: Optional[str] = None
    plot: bool = False
    unit_interpretation: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.preset not in const.PRESETS:
            raise InvalidParameterError(f"Unknown preset '{self.preset}', expected one of "
                                        f"{const.PRESETS.values()}")
        allowed = PRESET_GRIDS[self.preset]
        grids = {}
        for name, values in self.grids.items():
            if name not in allowed:
                raise InvalidParameterError(f"Grid '{name}' is not used by preset '{self.preset}'")
            values = tuple(float(v) for v in values)
            if not values:
                raise InvalidParameterError(f"Grid '{name}' is empty.")
            if not all(math.isfinite(v) for v in values):
                raise InvalidParameterError(f"Grid '{name}' contains non-finite values.")
            if any(b <= a for a, b in zip(values, values[1:])):
                raise InvalidParameterError(f"Grid '{name}' must be strictly increasing.")
            grids[name] = values
        missing = [name for name in allowed if name not in grids]
        if missing:
            raise InvalidParameterError(f"Preset '{self.preset}' needs grids {missing}")
        for name in self.settings:
            if name not in SETTING_KEYS:
                raise InvalidParameterError(f"Unknown setting '{name}'")
        if int(self.workers) < 1:
            raise InvalidParameterError(f"workers must be >= 1, got {self.workers}")
        object.__setattr__(self, "grids", grids)
        object.__setattr__(self, "workers", int(self.workers))

    def grid(self, name: str) -> tuple:
        return self.grids[name]

    def setting(self, name: str):
        return self.settings.get(name)

    def replace(self, **changes) -> "ExperimentSpec":
        data = {name: getattr(self, name) for name in self.__dataclass_fields__}
        data.update(changes)
        return ExperimentSpec(**data)

    @classmethod
    def default(cls, preset: str, **changes) -> "ExperimentSpec":
        """
        Preset defaults, with parameters taken from the packaged presets.
        """
        if preset not in const.PRESETS:
            raise InvalidParameterError(f"Unknown preset '{preset}'")
        param_preset = changes.pop("param_preset", DEFAULT_PARAM_PRESETS[preset])
        params = changes.pop("params", None)
        if params is None:
            params = params_from_preset(param_preset)
        return cls(preset=preset, params=params, param_preset=param_preset,
                   grids=changes.pop("grids", default_grids(preset)),
                   settings=changes.pop("settings", default_settings(preset)), **changes)
