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
 Description:       Steady states of the constantly driven cumulant equations:
                    windowed integration with an optional Newton polish.
 ****************************************************************************
"""

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy import optimize

from cqed import const
from cqed.const import STEADY_STATUS
from cqed.core.cumulant.dynamics import CumulantRHS
from cqed.core.error import (InvalidParameterError, SteadyStateDivergence,
                             UndampedSpinError)
from cqed.core.integrator.dopri5 import DormandPrince, IntegrationConfig
from cqed.core.integrator.trajectory import HermiticityMonitor
from cqed.core.model.params import SystemParams, ThermalOccupancies
from cqed.core.model.state import NUM_SLOTS, CumulantState, Slot
from cqed.util.log import Log

# windows integrated between two Newton attempts
NEWTON_RETRY_WINDOWS = 20

@dataclass(frozen=True)
class SteadyStateSettings:
    """
    window and max_model_time in seconds; None selects 10 cavity lifetimes
    and 50 lifetimes of the slowest relaxation.
    """
    window: Optional[float] = None
    max_model_time: Optional[float] = None
    rel_tol: float = const.STEADY_REL_TOL
    residual_tol: float = const.STEADY_RESIDUAL_TOL
    newton: bool = True
    divergence_bound: float = const.STEADY_DIVERGENCE_BOUND

    def __post_init__(self):
        for name in ("window", "max_model_time"):
            value = getattr(self, name)
            if value is not None and not value > 0:
                raise InvalidParameterError(f"{name} must be positive, got {value}")
        for name in ("rel_tol", "residual_tol"):
            if not getattr(self, name) > 0:
                raise InvalidParameterError(f"{name} must be positive")

    def to_dict(self) -> dict:
        return {"window": self.window, "max_model_time": self.max_model_time,
                "rel_tol": self.rel_tol, "residual_tol": self.residual_tol,
                "newton": self.newton, "divergence_bound": self.divergence_bound}


@dataclass(frozen=True)
class SteadyStateResult:
    state: CumulantState
    residual_norm: float
    elapsed_model_time: float
    status: STEADY_STATUS
    threshold: float
    diagnostics: dict = field(default_factory=dict)

    @property
    def converged(self) -> bool:
        return self.status == STEADY_STATUS.CONVERGED


def relaxation_rates(params: SystemParams, occ: ThermalOccupancies):
    """
    (cavity rate, total spin population rate) in 1/s.
    """
    spin_rate = params.eta_s + params.gamma_s * (1.0 + 2.0 * occ.n_s_th)
    if spin_rate <= 0:
        raise UndampedSpinError()
    return params.kappa_c, spin_rate


class SteadyStateSolver:
    """
    Fixed-point search for one parameter point and drive amplitude.
    """

    def __init__(self, params: SystemParams, drive_amplitude: float,
                 config: IntegrationConfig, settings: SteadyStateSettings = None):
        self.params = params
        self.settings = settings if settings is not None else SteadyStateSettings()
        self.config = config
        self.occ = ThermalOccupancies.from_params(params)
        self.rhs = CumulantRHS(params, drive_amplitude, self.occ)
        kappa, spin_rate = relaxation_rates(params, self.occ)
        slowest = min(kappa, spin_rate) if kappa > 0 else spin_rate
        self.rate_scale = max(kappa, spin_rate)
        if self.settings.window is not None:
            self.window = self.settings.window
        else:
            self.window = const.STEADY_WINDOW_CAVITY_LIFETIMES / (kappa if kappa > 0 else spin_rate)
        self.max_model_time = self.settings.max_model_time or max(
            const.STEADY_CAP_LIFETIMES / slowest, const.STEADY_CAP_SPIN_FLOOR / spin_rate)
        self.threshold = self.settings.residual_tol * slowest
        self.monitor = HermiticityMonitor()
        self.solver = DormandPrince(config, self.monitor)

    def residual_norm(self, y: np.ndarray) -> float:
        """
        Largest per-slot relative rate of change, in 1/s.
        """
        f = self.rhs.evaluate(y)
        return float(np.max(np.abs(f) / (np.abs(y) + self.config.abs_tol)))

    def _relative_change(self, y_old: np.ndarray, y_new: np.ndarray) -> float:
        return float(np.max(np.abs(y_new - y_old) / (np.abs(y_new) + self.config.abs_tol)))

    def _window(self, y: np.ndarray) -> np.ndarray:
        _, y_end = self.solver.solve(self.rhs, y, 0.0, self.window)
        norm = float(np.max(np.abs(y_end)))
        if not math.isfinite(norm) or norm > self.settings.divergence_bound:
            raise SteadyStateDivergence(f"State norm {norm:.3e} exceeds the divergence bound",
                                        last_state=y)
        return y_end

    @staticmethod
    def _physical(y: np.ndarray) -> bool:
        population = y[Slot.UPPER_POPULATION].real
        return y[Slot.PHOTON_NUMBER].real >= 0 and -1e-9 <= population <= 1.0 + 1e-9

    def newton(self, y0: np.ndarray) -> Optional[np.ndarray]:
        """
        Root of the right-hand side in scaled real coordinates, None on failure.
        """
        scale = np.maximum(np.abs(y0), 1e-6 * max(float(np.max(np.abs(y0))), self.config.abs_tol))
        scale = np.where(scale > 0, scale, 1.0)
        rate = self.rate_scale

        def residual(z):
            y = (z[:NUM_SLOTS] + 1j * z[NUM_SLOTS:]) * scale
            f = self.rhs.evaluate(y) / (scale * rate)
            return np.concatenate([f.real, f.imag])

        z0 = np.concatenate([(y0 / scale).real, (y0 / scale).imag])
        try:
            solution = optimize.root(residual, z0, method="hybr")
        except (ValueError, FloatingPointError) as err:
            Log.debug(f"Newton polish raised: {err}")
            return None
        if not solution.success or not np.all(np.isfinite(solution.x)):
            Log.debug(f"Newton polish failed: {solution.message}")
            return None
        y = (solution.x[:NUM_SLOTS] + 1j * solution.x[NUM_SLOTS:]) * scale
        for index in (Slot.UPPER_POPULATION, Slot.PHOTON_NUMBER, Slot.EXCHANGE, Slot.PAIR_POPULATION):
            y[index] = y[index].real
        return y if self._physical(y) else None

    def _try_newton(self, y: np.ndarray):
        polished = self.newton(y)
        if polished is None or self.residual_norm(polished) >= self.threshold:
            return None
        # verify that the root attracts the dynamics over one window
        y_end = self._window(polished)
        if self._relative_change(polished, y_end) < self.settings.rel_tol \
                and self.residual_norm(y_end) < self.threshold:
            return y_end
        return None

    def solve(self, initial: CumulantState) -> SteadyStateResult:
        y = initial.as_array()
        elapsed = 0.0
        newton_attempts = 0
        # Newton straight away only from a nearby state
        if self.settings.newton and self.residual_norm(y) <= self.rate_scale:
            newton_attempts += 1
            polished = self._try_newton(y)
            if polished is not None:
                return self._result(polished, self.window, STEADY_STATUS.CONVERGED,
                                    {"newton_attempts": newton_attempts, "method": "newton"})
        windows = 0
        change = math.inf
        residual = math.inf
        while elapsed < self.max_model_time:
            y_new = self._window(y)
            elapsed += self.window
            windows += 1
            change = self._relative_change(y, y_new)
            residual = self.residual_norm(y_new)
            y = y_new
            if change < self.settings.rel_tol and residual < self.threshold:
                return self._result(y, elapsed, STEADY_STATUS.CONVERGED,
                                    {"windows": windows, "newton_attempts": newton_attempts,
                                     "method": "integration"})
            if self.settings.newton and windows % NEWTON_RETRY_WINDOWS == 0:
                newton_attempts += 1
                polished = self._try_newton(y)
                if polished is not None:
                    return self._result(polished, elapsed + self.window, STEADY_STATUS.CONVERGED,
                                        {"windows": windows, "newton_attempts": newton_attempts,
                                         "method": "newton"})
        Log.warning(f"Steady state not reached within {self.max_model_time:.3e} s "
                    f"(change {change:.3e}, residual {residual:.3e})")
        return self._result(y, elapsed, STEADY_STATUS.NOT_CONVERGED,
                            {"windows": windows, "newton_attempts": newton_attempts,
                             "last_relative_change": change, "method": "integration"})

    def _result(self, y: np.ndarray, elapsed: float, status: STEADY_STATUS, diagnostics: dict):
        diagnostics = dict(diagnostics)
        diagnostics["max_hermiticity_residue"] = self.monitor.max_residue
        diagnostics["steps"] = self.solver.stats.to_dict()
        return SteadyStateResult(state=CumulantState(y, check_bounds=False),
                                 residual_norm=self.residual_norm(y),
                                 elapsed_model_time=elapsed, status=status,
                                 threshold=self.threshold, diagnostics=diagnostics)


def steady_state(initial: CumulantState, params: SystemParams, drive_amplitude: float,
                 config: IntegrationConfig, settings: SteadyStateSettings = None) -> SteadyStateResult:
    """
    Steady state under a constant drive, reached from `initial`.

    Raises:
        SteadyStateDivergence: state norm left the divergence bound.
    """
    return SteadyStateSolver(params, drive_amplitude, config, settings).solve(initial)
