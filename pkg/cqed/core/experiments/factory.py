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

from importlib import import_module

from cqed import const
from cqed.core.error import ExperimentError
from cqed.core.experiments.report import ExperimentReport
from cqed.core.experiments.runner import ExperimentRunner
from cqed.core.experiments.spec import ExperimentSpec
from cqed.util.log import Log

class ExperimentFactory:
    """
    Experiment factory to keep track of runners.
    """
    _runner_instances: dict = {}

    @staticmethod
    def get_runner(preset: str) -> ExperimentRunner:
        """
        Get the runner of a preset, importing it on first use.

        Args:
            preset (str): experiment preset name.

        Returns:
            ExperimentRunner: runner instance shared by all presets of its class.
        """
        if preset not in const.EXPERIMENT_CLASSES:
            raise ExperimentError(f"No runner registered for preset '{preset}'")
        class_path = const.EXPERIMENT_CLASSES[preset]
        if class_path not in ExperimentFactory._runner_instances:
            module = import_module('.'.join(class_path.split('.')[:-1]))
            ExperimentFactory._runner_instances[class_path] = getattr(module, class_path.split('.')[-1])()
            Log.info(f"Runner {class_path} is initialized...")
        return ExperimentFactory._runner_instances[class_path]


def run_experiment(spec: ExperimentSpec) -> ExperimentReport:
    return ExperimentFactory.get_runner(spec.preset).run(spec)
