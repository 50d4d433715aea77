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
 Description:       Read configured quantities into internal angular units.
 ****************************************************************************
"""

import math

from cqed import const
from cqed.core.config.config_manager import ConfigManager
from cqed.core.error import ConfigError, CQEDError
from cqed.core.model.params import SystemParams

def to_number(raw, name: str, line: int = None, source: str = None) -> float:
    """
    Numeric value of a YAML scalar. PyYAML reads exponent literals such as
    1e4 or 2.69e9 as strings, so numeric strings are accepted.
    """
    if isinstance(raw, bool):
        raise ConfigError(f"'{name}' must be a number, got {raw!r}", line, source)
    if isinstance(raw, (int, float)):
        value = float(raw)
    elif isinstance(raw, str):
        try:
            value = float(raw.strip())
        except ValueError:
            raise ConfigError(f"'{name}' must be a number, got {raw!r}", line, source)
    else:
        raise ConfigError(f"'{name}' must be a number, got {raw!r}", line, source)
    if not math.isfinite(value):
        raise ConfigError(f"'{name}' must be finite, got {raw!r}", line, source)
    return value


def split_flagged(raw, name: str, line: int = None, source: str = None):
    """
    Split {value: ..., angular: bool} into its parts. The flag is mandatory.
    """
    if not isinstance(raw, dict):
        raise ConfigError(f"'{name}' is a rate and needs the form "
                          f"{{value: ..., angular: true|false}}", line, source)
    unknown = sorted(set(raw) - {"value", "angular"})
    if unknown:
        raise ConfigError(f"Unknown keys {unknown} in '{name}'", line, source)
    if "value" not in raw:
        raise ConfigError(f"'{name}' is missing 'value'", line, source)
    if not isinstance(raw.get("angular"), bool):
        raise ConfigError(f"'{name}' is missing the unit flag 'angular: true|false'", line, source)
    return raw["value"], raw["angular"]


def angular_value(value: float, angular: bool) -> float:
    return value if angular else const.TWO_PI * value


def resolve_quantity(name: str, raw, unit_class: const.UNIT_CLASS,
                     line: int = None, source: str = None):
    """
    Internal value of one configured quantity.

    Returns:
        (value, interpretation): interpretation is the text recorded in the
        run manifest.
    """
    if unit_class == const.UNIT_CLASS.PLAIN:
        if isinstance(raw, dict):
            raise ConfigError(f"'{name}' takes a plain number", line, source)
        return to_number(raw, name, line, source), "plain"
    value, angular = split_flagged(raw, name, line, source)
    value = to_number(value, name, line, source)
    if unit_class == const.UNIT_CLASS.JUMP_RATE:
        return value, "jump rate 1/s, flag ignored"
    if angular:
        return value, "angular, rad/s"
    return const.TWO_PI * value, "cycles, multiplied by 2*pi"


def resolve_parameters(entries: dict, line_of=None, source: str = None):
    """
    Resolve {field: raw} for SystemParams fields.

    Returns:
        (values, interpretation)
    """
    values, interpretation = {}, {}
    for name, raw in entries.items():
        line = line_of(name) if line_of else None
        if name not in const.PARAM_UNITS:
            raise ConfigError(f"Unknown parameter '{name}'. Known: {sorted(const.PARAM_UNITS)}",
                              line, source)
        values[name], interpretation[name] = resolve_quantity(name, raw, const.PARAM_UNITS[name],
                                                              line, source)
    return values, interpretation


def params_from_preset(name: str, overrides: dict = None) -> SystemParams:
    """
    SystemParams of a packaged preset, with already-resolved overrides applied.
    """
    values, _ = resolve_parameters(ConfigManager.get_param_preset(name), source=const.PRESETS_FILE)
    values.update(overrides or {})
    try:
        return SystemParams.from_dict(values)
    except CQEDError as err:
        raise ConfigError(f"Parameter preset '{name}': {err}", source=const.PRESETS_FILE)
