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
 Description:       Provide central configuration and log bootstrap.
 ****************************************************************************
"""

import logging
import logging.handlers
import os
import sys

import yaml

from cqed import const
from cqed.core.error import ConfigError
from cqed.util.log import Log

class ConfigManager:
    """
    Central configuration: logging setup and bundled preset tables.
    """

    _conf: dict = {}
    _handlers: list = []

    @staticmethod
    def init(log_name, log_path=None, level=const.LOG_LEVEL,
            backup_count=const.LOG_BACKUP_COUNT, file_size_in_mb=const.LOG_FILE_SIZE_IN_MB,
            console_output=True, config_file=None):
        """
        Initialize logging and load the preset tables.
        Args:
            log_name (str): service name written in the first log line.
            log_path (str): directory for a rotating log file, None for console only.
        """
        ConfigManager._conf_init(config_file)
        if log_name:
            ConfigManager._log_init(log_name, log_path, level, backup_count,
                                    file_size_in_mb, console_output)
            Log.info(f"Started logging for service {log_name}")

    @staticmethod
    def _log_init(log_name, log_path, level, backup_count, file_size_in_mb, console_output):
        """
        Replace handlers installed by an earlier init.
        """
        for handler in ConfigManager._handlers:
            Log.removeHandler(handler)
            handler.close()
        ConfigManager._handlers = []
        formatter = logging.Formatter(const.LOG_FORMAT)
        if console_output:
            console = logging.StreamHandler(sys.stderr)
            console.setFormatter(formatter)
            ConfigManager._handlers.append(console)
        if log_path:
            os.makedirs(log_path, exist_ok=True)
            rotating = logging.handlers.RotatingFileHandler(
                os.path.join(log_path, f"{log_name}.log"),
                maxBytes=int(file_size_in_mb * 1024 * 1024), backupCount=backup_count)
            rotating.setFormatter(formatter)
            ConfigManager._handlers.append(rotating)
        for handler in ConfigManager._handlers:
            Log.addHandler(handler)
        Log.setLevel(level.upper() if isinstance(level, str) else level)
        Log.propagate = False

    @staticmethod
    def _conf_init(config_file):
        """
        Init preset tables
        """
        if not config_file:
            config_file = const.PRESETS_FILE
        ConfigManager._safe_load(config_file)

    @staticmethod
    def _safe_load(path: str) -> dict:
        """
        Load a YAML file once per process.
        """
        if path not in ConfigManager._conf:
            try:
                with open(path, "r") as fi:
                    ConfigManager._conf[path] = yaml.safe_load(fi) or {}
            except OSError as err:
                raise ConfigError(f"Cannot read {path}: {err}")
            except yaml.YAMLError as err:
                mark = getattr(err, "problem_mark", None)
                raise ConfigError(f"Invalid YAML: {err}", line=None if mark is None else mark.line + 1,
                                  source=path)
        return ConfigManager._conf[path]

    @staticmethod
    def get_presets() -> dict:
        """
        Get the bundled parameter presets.
        """
        return ConfigManager._safe_load(const.PRESETS_FILE)

    @staticmethod
    def get_param_preset(name: str) -> dict:
        """
        Get one parameter preset as {field: {value, angular}}.
        """
        presets = ConfigManager.get_presets().get("params", {})
        if name not in presets:
            raise ConfigError(f"Unknown parameter preset '{name}'. Known: {sorted(presets)}")
        return dict(presets[name])
