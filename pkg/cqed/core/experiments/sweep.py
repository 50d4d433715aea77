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
 Description:       Steady-state parameter sweeps. Points of one chain are
                    solved in order, each starting from the previous steady
                    state; chains are independent and run in worker
                    processes.
 ****************************************************************************
"""

from dataclasses import dataclass, field
from multiprocessing import Pool
from typing import Callable, Optional

from cqed import const
from cqed.core.cumulant.dynamics import thermal_equilibrium_state
from cqed.core.error import CQEDError, SteadyStateDivergence
from cqed.core.integrator.dopri5 import IntegrationConfig
from cqed.core.integrator.steady_state import SteadyStateSettings, steady_state
from cqed.core.integrator.trajectory import Trajectory, integrate
from cqed.core.model.protocol import DriveProtocol
from cqed.core.model.state import CumulantState
from cqed.util.log import Log

@dataclass(frozen=True)
class SweepChain:
    label: str
    points: tuple
    drive_amplitude: float
    config: IntegrationConfig
    settings: SteadyStateSettings
    initial: Optional[CumulantState] = None


@dataclass(frozen=True)
class TransientTask:
    label: str
    params: object
    protocol: DriveProtocol
    config: IntegrationConfig
    sample_grid: tuple
    initial: Optional[CumulantState] = None


@dataclass
class TransientResult:
    label: str
    trajectory: Optional[Trajectory]
    error: Optional[str] = None


@dataclass
class SweepPoint:
    status: str
    state: Optional[CumulantState]
    residual_norm: float = float("nan")
    elapsed_model_time: float = 0.0
    diagnostics: dict = field(default_factory=dict)


def run_chain(chain: SweepChain) -> list:
    """
    Solve every point of a chain. A point that fails to converge is
    reported and the next point restarts from the last good state.
    """
    warm = chain.initial
    results = []
    for index, params in enumerate(chain.points):
        if warm is None:
            warm = thermal_equilibrium_state(params)
        try:
            result = steady_state(warm, params, chain.drive_amplitude, chain.config, chain.settings)
        except SteadyStateDivergence as err:
            Log.error(f"{chain.label}[{index}] diverged: {err}")
            results.append(SweepPoint(const.STEADY_STATUS.DIVERGED.value, None,
                                      diagnostics={"error": str(err)}))
            continue
        except CQEDError as err:
            Log.error(f"{chain.label}[{index}] failed: {err}")
            results.append(SweepPoint(const.STEADY_STATUS.NOT_CONVERGED.value, None,
                                      diagnostics={"error": str(err)}))
            continue
        if not result.converged:
            Log.warning(f"{chain.label}[{index}] not converged after "
                        f"{result.elapsed_model_time:.3e} s, residual {result.residual_norm:.3e}")
        results.append(SweepPoint(result.status.value, result.state, result.residual_norm,
                                  result.elapsed_model_time, dict(result.diagnostics)))
        warm = result.state
    return results


def parallel_map(func: Callable, tasks: list, workers: int = 1) -> list:
    """
    Map func over tasks in order. With one worker, or one task, everything
    runs in this process.
    """
    tasks = list(tasks)
    if workers <= 1 or len(tasks) <= 1:
        return [func(task) for task in tasks]
    Log.info(f"Running {len(tasks)} tasks on {min(workers, len(tasks))} workers")
    pool = Pool(processes=min(workers, len(tasks)))
    try:
        return pool.map(func, tasks)
    except KeyboardInterrupt:
        pool.terminate()
        raise
    finally:
        pool.close()
        pool.join()


def run_chains(chains: list, workers: int = 1) -> list:
    """
    Returns:
        list of per-chain SweepPoint lists, in chain order.
    """
    return parallel_map(run_chain, chains, workers)


def run_transient(task: TransientTask) -> TransientResult:
    """
    Integrate one driven trajectory. Failures come back as text so they
    cross process boundaries.
    """
    initial = task.initial if task.initial is not None else thermal_equilibrium_state(task.params)
    try:
        trajectory = integrate(initial, task.params, task.protocol, task.config, task.sample_grid)
    except CQEDError as err:
        return TransientResult(task.label, None, str(err))
    return TransientResult(task.label, trajectory)
