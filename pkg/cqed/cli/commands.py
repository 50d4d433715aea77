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
 Description:       Command line sub-commands. Each command resolves an
                    ExperimentSpec, runs it and writes the results.
 ****************************************************************************
"""

import argparse
import logging
import os
import sys
from importlib import import_module

from cqed import const
from cqed.cli.cli_schema import CLISchema
from cqed.cli.config_parser import parse_config
from cqed.cli.report_writer import load_manifest, write_report
from cqed.core.error import InvalidCommandError
from cqed.core.experiments.factory import ExperimentFactory
from cqed.core.experiments.spec import ExperimentSpec
from cqed.util.log import Log

class Cmd:
    """
    Experiment command. This class provides methods for parsing arguments.
    """
    name = None
    presets: tuple = ()

    def __init__(self, args: argparse.Namespace):
        """
        Init method.
        """
        self._args = args

    @property
    def args(self) -> argparse.Namespace:
        return self._args

    @staticmethod
    def get_command(desc: str, argv: list):
        """
        Return the Command after parsing the command line.
        """
        parser = argparse.ArgumentParser(prog="cqed", description=desc,
                                         formatter_class=argparse.RawDescriptionHelpFormatter,
                                         epilog=CLISchema.get_help())
        parser.add_argument("--version", action="version", version=f"%(prog)s {const.VERSION}")
        subparsers = parser.add_subparsers(dest="name")
        for name in CLISchema.get_commands():
            class_path = CLISchema.get_class(name)
            module = import_module('.'.join(class_path.split('.')[:-1]))
            cmd = getattr(module, class_path.split('.')[-1])
            cmd.add_args(subparsers, cmd, name)
        args = parser.parse_args(argv)
        if args.name is None:
            raise InvalidCommandError(f"No command given.{CLISchema.get_help()}")
        return args.command(args)

    @staticmethod
    def add_args(parser, cls, name: str):
        """
        Add Command args for parsing.
        """
        cmd_parser = parser.add_parser(name, help=CLISchema.get_usage(name))
        cmd_parser.add_argument("--config", help="Experiment YAML file, or a run manifest (.json)")
        cmd_parser.add_argument("--out", help="Output directory")
        cmd_parser.add_argument("--workers", type=int, default=None, help="Worker processes")
        cmd_parser.add_argument("--force", action="store_true", help="Overwrite existing outputs")
        cmd_parser.add_argument("--plot", action="store_true", help="Also write a plot script")
        cmd_parser.add_argument("--verbose", action="store_true", help="Debug logging")
        cls.add_extra_args(cmd_parser)
        cmd_parser.set_defaults(command=cls)

    @staticmethod
    def add_extra_args(cmd_parser) -> None:
        pass

    def default_preset(self) -> str:
        return self.presets[0]

    def load_spec(self) -> ExperimentSpec:
        """
        Spec from the config file, a run manifest, or the preset defaults.
        Command line options take precedence.
        """
        config = self._args.config
        if config is None:
            spec = ExperimentSpec.default(self.default_preset())
        elif config.endswith(".json"):
            spec = load_manifest(config).to_spec()
        else:
            spec = parse_config(config, self.default_preset())
        if spec.preset not in self.presets:
            raise InvalidCommandError(f"'{self._args.name}' cannot run preset '{spec.preset}'; "
                                      f"use one of {list(self.presets)}")
        changes = {}
        if self._args.workers is not None:
            changes["workers"] = self._args.workers
        if self._args.plot:
            changes["plot"] = True
        if self._args.out is not None:
            changes["output_dir"] = self._args.out
        return spec.replace(**changes) if changes else spec

    def process(self) -> int:
        if self._args.verbose:
            Log.setLevel(logging.DEBUG)
        spec = self.load_spec()
        report = ExperimentFactory.get_runner(spec.preset).run(spec)
        out_dir = spec.output_dir or os.path.join("results", spec.preset)
        write_report(report, spec, out_dir, force=self._args.force)
        failures = report.failures
        if failures:
            sys.stderr.write(f"{len(failures)} point(s) did not converge, first: {failures[0].label}\n")
            return const.EXIT_CONVERGENCE_FAILURE
        sys.stdout.write(f"{spec.preset} results written to {out_dir}\n")
        return const.EXIT_SUCCESS


class DickeMapCmd(Cmd):
    name = "dicke-map"
    presets = (const.PRESETS.FIG2B.value,)


class RabiTransientCmd(Cmd):
    name = "rabi-transient"
    presets = (const.PRESETS.FIG3A.value,)


class RabiSpectrumCmd(Cmd):
    name = "rabi-spectrum"
    presets = (const.PRESETS.FIG3B.value,)


class SuperradianceCmd(Cmd):
    name = "superradiance"
    presets = (const.PRESETS.FIG4.value,)


class SenseCmd(Cmd):
    """
    Mode A sweeps the drive, mode B sweeps the spin frequency.
    """
    name = "sense"
    presets = (const.PRESETS.FIG5A.value, const.PRESETS.FIG5B.value)

    @staticmethod
    def add_extra_args(cmd_parser) -> None:
        cmd_parser.add_argument("--mode", choices=("A", "B"), default="A", help="Sensing mode")

    def default_preset(self) -> str:
        return const.PRESETS.FIG5B.value if self._args.mode == "B" else const.PRESETS.FIG5A.value


class OracleCheckCmd(Cmd):
    name = "oracle-check"
    presets = (const.PRESETS.ORACLE_CHECK.value,)
