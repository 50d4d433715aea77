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
 Description:       Parse a YAML experiment configuration into an
                    ExperimentSpec. Every error names the offending line.
 ****************************************************************************
"""

import numpy as np
import yaml

from cqed import const
from cqed.core.config.units import (angular_value, params_from_preset, resolve_parameters,
                                    resolve_quantity, split_flagged, to_number)
from cqed.core.error import ConfigError, CQEDError
from cqed.core.experiments.spec import (ANGULAR_GRIDS, DEFAULT_PARAM_PRESETS, PRESET_GRIDS,
                                        RATE_SETTINGS, ExperimentSpec, default_grids,
                                        default_settings)
from cqed.core.integrator.dopri5 import IntegrationConfig
from cqed.core.integrator.steady_state import SteadyStateSettings
from cqed.util.log import Log

REQUIRED_KEYS = ("experiment.preset",)

SECTIONS = {
    "experiment": ("preset", "params", "workers"),
    "overrides": tuple(const.PARAM_UNITS),
    "sweep": ("temperature", "eta_s", "drive_detuning", "spin_detuning", "drive_offset",
              "n_spins_exact"),
    "drive": ("amplitude", "strong_amplitude", "pulse", "tail", "samples", "early_window", "early_samples",
              "late_samples", "duration", "eta_s"),
    "integration": ("rel_tol", "abs_tol", "max_step", "initial_step", "max_steps", "steady_state"),
    "output": ("directory", "plot"),
}

STEADY_KEYS = ("window", "max_model_time", "rel_tol", "residual_tol", "newton", "divergence_bound")

# drive section key -> ExperimentSpec setting
DRIVE_SETTINGS = {"amplitude": "drive_amplitude", "strong_amplitude": "strong_drive_amplitude",
                  "eta_s": "fixed_eta_s"}

INTEGER_SETTINGS = ("samples", "early_samples", "late_samples")

RANGE_KEYS = ("start", "stop", "points", "spacing")


def _key_lines(node, path: tuple = (), lines: dict = None) -> dict:
    """
    1-based line of every mapping key, keyed by its path from the root.
    """
    lines = {} if lines is None else lines
    if isinstance(node, yaml.MappingNode):
        for key_node, value_node in node.value:
            key_path = path + (key_node.value,)
            lines[key_path] = key_node.start_mark.line + 1
            _key_lines(value_node, key_path, lines)
    return lines


class _ConfigReader:
    """
    Walks one parsed document, keeping track of the source lines.
    """

    def __init__(self, data: dict, lines: dict, source: str):
        self.data = data
        self.lines = lines
        self.source = source
        self.interpretation = {}

    def error(self, desc: str, *path) -> ConfigError:
        line = None
        while path and line is None:
            line = self.lines.get(tuple(path))
            path = path[:-1]
        return ConfigError(desc, line, self.source)

    def section(self, name: str) -> dict:
        value = self.data.get(name)
        if value is None:
            return {}
        if not isinstance(value, dict):
            raise self.error(f"Section '{name}' must be a mapping", name)
        unknown = [key for key in value if key not in SECTIONS[name]]
        if unknown:
            raise self.error(f"Unknown key '{unknown[0]}' in '{name}'. Allowed: {list(SECTIONS[name])}",
                             name, unknown[0])
        return value

    def check_sections(self) -> None:
        if not isinstance(self.data, dict):
            raise self.error("Configuration must be a mapping of sections")
        unknown = [key for key in self.data if key not in SECTIONS]
        if unknown:
            raise self.error(f"Unknown section '{unknown[0]}'. Allowed: {list(SECTIONS)}", unknown[0])

    def number(self, raw, *path) -> float:
        line = self.lines.get(tuple(path))
        return to_number(raw, ".".join(path), line, self.source)

    def integer(self, raw, *path) -> int:
        value = self.number(raw, *path)
        if value != int(value):
            raise self.error(f"'{'.'.join(path)}' must be an integer, got {raw!r}", *path)
        return int(value)

    def flag(self, raw, *path) -> bool:
        if not isinstance(raw, bool):
            raise self.error(f"'{'.'.join(path)}' must be true or false, got {raw!r}", *path)
        return raw

    def values(self, raw, *path) -> tuple:
        """
        A list of numbers or a {start, stop, points, spacing} range.
        """
        if isinstance(raw, dict):
            unknown = [key for key in raw if key not in RANGE_KEYS]
            if unknown:
                raise self.error(f"Unknown range key '{unknown[0]}'. Allowed: {list(RANGE_KEYS)}", *path)
            missing = [key for key in RANGE_KEYS[:3] if key not in raw]
            if missing:
                raise self.error(f"Range '{'.'.join(path)}' is missing {missing}", *path)
            start = self.number(raw["start"], *path)
            stop = self.number(raw["stop"], *path)
            points = self.integer(raw["points"], *path)
            spacing = raw.get("spacing", "linear")
            if points < 1:
                raise self.error(f"Range '{'.'.join(path)}' needs at least one point", *path)
            if spacing == "linear":
                return tuple(float(v) for v in np.linspace(start, stop, points))
            if spacing == "log":
                if start <= 0 or stop <= 0:
                    raise self.error(f"Log range '{'.'.join(path)}' needs positive bounds", *path)
                return tuple(float(v) for v in np.geomspace(start, stop, points))
            raise self.error(f"Spacing must be 'linear' or 'log', got {spacing!r}", *path)
        if isinstance(raw, list):
            return tuple(self.number(v, *path) for v in raw)
        return (self.number(raw, *path),)

    def grid(self, name: str, raw) -> tuple:
        path = ("sweep", name)
        if name in ANGULAR_GRIDS or name == "eta_s":
            value, angular = split_flagged(raw, name, self.lines.get(path), self.source)
            values = self.values(value, *path)
            if name == "eta_s":
                self.interpretation[f"sweep.{name}"] = "jump rate 1/s, flag ignored"
                return values
            self.interpretation[f"sweep.{name}"] = "angular, rad/s" if angular \
                else "cycles, multiplied by 2*pi"
            return tuple(angular_value(v, angular) for v in values)
        if isinstance(raw, dict) and "angular" in raw:
            raise self.error(f"'{name}' takes plain values", *path)
        return self.values(raw, *path)


def load_document(path: str):
    """
    Returns:
        (data, key lines)
    """
    try:
        with open(path, "r") as fi:
            text = fi.read()
    except OSError as err:
        raise ConfigError(f"Cannot read configuration: {err}", source=path)
    try:
        data = yaml.safe_load(text)
        lines = _key_lines(yaml.compose(text)) if data is not None else {}
    except yaml.YAMLError as err:
        mark = getattr(err, "problem_mark", None)
        raise ConfigError(f"Invalid YAML: {getattr(err, 'problem', err)}",
                          None if mark is None else mark.line + 1, path)
    return data, lines


def parse_config(path: str, default_preset: str = None) -> ExperimentSpec:
    """
    Fully resolved ExperimentSpec with defaults applied and every rate in
    rad/s. default_preset is used when the file names no preset.
    """
    data, lines = load_document(path)
    if data is None:
        raise ConfigError(f"Configuration is empty. Required keys: {list(REQUIRED_KEYS)}", source=path)
    reader = _ConfigReader(data, lines, path)
    reader.check_sections()

    experiment = reader.section("experiment")
    preset = experiment.get("preset", default_preset)
    if preset is None:
        raise reader.error(f"Missing required keys: {list(REQUIRED_KEYS)}", "experiment")
    if preset not in const.PRESETS:
        raise reader.error(f"Unknown preset '{preset}'. Known: {const.PRESETS.values()}",
                           "experiment", "preset")
    param_preset = experiment.get("params", DEFAULT_PARAM_PRESETS[preset])
    if param_preset not in const.PARAM_PRESETS:
        raise reader.error(f"Unknown parameter preset '{param_preset}'. Known: {const.PARAM_PRESETS.values()}",
                           "experiment", "params")
    workers = reader.integer(experiment.get("workers", 1), "experiment", "workers")

    overrides_raw = reader.section("overrides")
    overrides, interpretation = resolve_parameters(
        overrides_raw, lambda name: lines.get(("overrides", name)), path)
    reader.interpretation.update({f"overrides.{k}": v for k, v in interpretation.items()})
    try:
        params = params_from_preset(param_preset, overrides)
    except ConfigError as err:
        raise reader.error(str(err), "overrides")

    grids = default_grids(preset)
    for name, raw in reader.section("sweep").items():
        if name not in PRESET_GRIDS[preset]:
            raise reader.error(f"Preset '{preset}' does not sweep '{name}'. Grids: {list(PRESET_GRIDS[preset])}",
                               "sweep", name)
        grids[name] = reader.grid(name, raw)

    settings = default_settings(preset)
    for name, raw in reader.section("drive").items():
        key = DRIVE_SETTINGS.get(name, name)
        if key in RATE_SETTINGS:
            unit = const.UNIT_CLASS.JUMP_RATE if key == "fixed_eta_s" else const.UNIT_CLASS.ANGULAR
            settings[key], reader.interpretation[f"drive.{name}"] = resolve_quantity(
                name, raw, unit, lines.get(("drive", name)), path)
        elif name in INTEGER_SETTINGS:
            settings[key] = reader.integer(raw, "drive", name)
        else:
            settings[key] = reader.number(raw, "drive", name)

    integration_raw = dict(reader.section("integration"))
    steady_raw = integration_raw.pop("steady_state", None) or {}
    if not isinstance(steady_raw, dict):
        raise reader.error("'steady_state' must be a mapping", "integration", "steady_state")
    unknown = [key for key in steady_raw if key not in STEADY_KEYS]
    if unknown:
        raise reader.error(f"Unknown key '{unknown[0]}' in 'integration.steady_state'. "
                           f"Allowed: {list(STEADY_KEYS)}", "integration", "steady_state", unknown[0])
    integration_values = {}
    for name, raw in integration_raw.items():
        if raw is None:
            continue
        integration_values[name] = reader.integer(raw, "integration", name) if name == "max_steps" \
            else reader.number(raw, "integration", name)
    steady_values = {}
    for name, raw in steady_raw.items():
        where = ("integration", "steady_state", name)
        steady_values[name] = reader.flag(raw, *where) if name == "newton" else reader.number(raw, *where)

    output = reader.section("output")
    directory = output.get("directory")
    plot = reader.flag(output.get("plot", False), "output", "plot")

    reader.interpretation.setdefault("eta_s", "jump rate 1/s for either flag")
    reader.interpretation.setdefault("drive_amplitude", "angular class, sqrt(rad/s)")
    try:
        spec = ExperimentSpec(preset=preset, params=params, param_preset=param_preset, grids=grids,
                              settings=settings, overrides=overrides,
                              integration=IntegrationConfig(**integration_values),
                              steady=SteadyStateSettings(**steady_values), workers=workers,
                              output_dir=None if directory is None else str(directory), plot=plot,
                              unit_interpretation=reader.interpretation)
    except ConfigError:
        raise
    except CQEDError as err:
        raise ConfigError(str(err), source=path)
    Log.info(f"Loaded {preset} configuration from {path} (parameters '{param_preset}', "
             f"{len(overrides)} override(s))")
    return spec
