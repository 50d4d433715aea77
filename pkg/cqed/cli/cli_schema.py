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

import json

from cqed import const
from cqed.core.error import ConfigError, InvalidCommandError

class CLISchema:

    SCHEMA = None

    @staticmethod
    def get_schema():
        """
        Schema initialization
        """
        if CLISchema.SCHEMA is None:
            try:
                with open(const.CLI_SCHEMA_FILE, "r") as fi:
                    CLISchema.SCHEMA = json.load(fi)
            except (OSError, ValueError) as err:
                raise ConfigError(f"Invalid cli configuration. Error: {err}", source=const.CLI_SCHEMA_FILE)
        return CLISchema.SCHEMA

    @staticmethod
    def get_commands() -> list:
        return list(CLISchema.get_schema())

    @staticmethod
    def get_help(command: str = None) -> str:
        schema = CLISchema.get_schema()
        commands = [command] if command is not None else list(schema)
        help_cli = ""
        for name in commands:
            help_cli += f"\n{name}: {schema[name]['help']}\n  {schema[name]['usage']}\n"
        return help_cli

    @staticmethod
    def _entry(command: str) -> dict:
        schema = CLISchema.get_schema()
        if command not in schema:
            raise InvalidCommandError(f"Unknown command '{command}'. Known: {list(schema)}")
        return schema[command]

    @staticmethod
    def get_class(command: str) -> str:
        return CLISchema._entry(command)["class"]

    @staticmethod
    def get_usage(command: str) -> str:
        return CLISchema._entry(command)["usage"]
