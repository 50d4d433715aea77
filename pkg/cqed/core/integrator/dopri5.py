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
 Description:       Dormand-Prince 5(4) embedded Runge-Kutta integrator with
                    PI step-size control and quartic dense output, for
                    complex state vectors.
 ****************************************************************************
"""

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from cqed import const
from cqed.core.error import (InvalidParameterError, MaxStepsExceededError,
                             NonFiniteStateError, StepUnderflowError)
from cqed.util.log import Log

# Butcher tableau
C = np.array([0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0])
A = [
    np.array([]),
    np.array([1.0 / 5.0]),
    np.array([3.0 / 40.0, 9.0 / 40.0]),
    np.array([44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0]),
    np.array([19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0]),
    np.array([9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0]),
]
B = np.array([35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0])
# fifth minus fourth order weights, last entry weights the FSAL stage
E = np.array([-71.0 / 57600.0, 0.0, 71.0 / 16695.0, -71.0 / 1920.0,
              17253.0 / 339200.0, -22.0 / 525.0, 1.0 / 40.0])
# dense output: y(t + theta*h) = y + h * (K^T P) [theta, theta^2, theta^3, theta^4]
P = np.array([
    [1.0, -8048581381.0 / 2820520608.0, 8663915743.0 / 2820520608.0,
     -12715105075.0 / 11282082432.0],
    [0.0, 0.0, 0.0, 0.0],
    [0.0, 131558114200.0 / 32700410799.0, -68118460800.0 / 10900136933.0,
     87487479700.0 / 32700410799.0],
    [0.0, -1754552775.0 / 470086768.0, 14199869525.0 / 1410260304.0,
     -10690763975.0 / 1880347072.0],
    [0.0, 127303824393.0 / 49829197408.0, -318862633887.0 / 49829197408.0,
     701980252875.0 / 199316789632.0],
    [0.0, -282668133.0 / 205662961.0, 2019193451.0 / 616988883.0,
     -1453857185.0 / 822651844.0],
    [0.0, 40617522.0 / 29380423.0, -110615467.0 / 29380423.0, 69997945.0 / 29380423.0],
])


@dataclass(frozen=True)
class IntegrationConfig:
    """
    Tolerances and limits of one integration. initial_step None selects
    the first step automatically at every segment start.
    """
    rel_tol: float = const.DEFAULT_REL_TOL
    abs_tol: float = const.DEFAULT_ABS_TOL
    max_step: float = math.inf
    initial_step: Optional[float] = None
    max_steps: int = const.DEFAULT_MAX_STEPS

    def __post_init__(self):
        for name in ("rel_tol", "abs_tol"):
            value = getattr(self, name)
            if not 0.0 < value < 1.0:
                raise InvalidParameterError(f"{name} must lie in (0, 1), got {value}")
        if not self.max_step > 0:
            raise InvalidParameterError(f"max_step must be positive, got {self.max_step}")
        if self.initial_step is not None and not self.initial_step > 0:
            raise InvalidParameterError(f"initial_step must be positive, got {self.initial_step}")
        if int(self.max_steps) <= 0:
            raise InvalidParameterError(f"max_steps must be positive, got {self.max_steps}")

    def tightened(self, factor: float = 0.5) -> "IntegrationConfig":
        return IntegrationConfig(rel_tol=self.rel_tol * factor, abs_tol=self.abs_tol * factor,
                                 max_step=self.max_step, initial_step=self.initial_step,
                                 max_steps=self.max_steps)

    def to_dict(self) -> dict:
        return {"rel_tol": self.rel_tol, "abs_tol": self.abs_tol,
                "max_step": None if math.isinf(self.max_step) else self.max_step,
                "initial_step": self.initial_step, "max_steps": int(self.max_steps)}


@dataclass
class StepStatistics:
    accepted: int = 0
    rejected: int = 0
    evaluations: int = 0
    segments: list = field(default_factory=list)

    @property
    def steps(self) -> int:
        return self.accepted + self.rejected

    def to_dict(self) -> dict:
        return {"accepted": self.accepted, "rejected": self.rejected,
                "evaluations": self.evaluations, "segments": list(self.segments)}


class DormandPrince:
    """
    Adaptive stepper shared by the cumulant and density-matrix integrations.
    One instance accumulates step statistics over consecutive spans; the
    max_steps limit applies to the total.
    """

    def __init__(self, config: IntegrationConfig,
                 monitor: Callable[[float, np.ndarray], None] = None):
        self._config = config
        self._monitor = monitor
        self.stats = StepStatistics()

    @property
    def config(self) -> IntegrationConfig:
        return self._config

    def _scale(self, y: np.ndarray, y_new: np.ndarray) -> np.ndarray:
        return self._config.abs_tol + self._config.rel_tol * np.maximum(np.abs(y), np.abs(y_new))

    @staticmethod
    def _rms(v: np.ndarray) -> float:
        return float(np.sqrt(np.mean(np.abs(v) ** 2)))

    def _initial_step(self, rhs, t: float, y: np.ndarray, f: np.ndarray, span: float) -> float:
        scale = self._config.abs_tol + self._config.rel_tol * np.abs(y)
        d0 = self._rms(y / scale)
        d1 = self._rms(f / scale)
        if d0 < 1e-5 or d1 < 1e-5:
            h0 = 1e-6 * span
        else:
            h0 = 0.01 * d0 / d1
        h0 = min(h0, span)
        f1 = rhs(t + h0, y + h0 * f)
        self.stats.evaluations += 1
        d2 = self._rms((f1 - f) / scale) / h0
        if max(d1, d2) <= 1e-15:
            h1 = max(1e-6 * h0, 1e-3 * span)
        else:
            h1 = (0.01 / max(d1, d2)) ** (1.0 / 5.0)
        return min(100.0 * h0, h1, span)

    def _step(self, rhs, t: float, y: np.ndarray, f: np.ndarray, h: float, K: np.ndarray):
        K[0] = f
        for stage in range(1, 6):
            dy = np.dot(K[:stage].T, A[stage]) * h
            K[stage] = rhs(t + C[stage] * h, y + dy)
        y_new = y + h * np.dot(K[:6].T, B)
        f_new = rhs(t + h, y_new)
        K[6] = f_new
        self.stats.evaluations += 6
        error = h * np.dot(K.T, E)
        return y_new, f_new, error

    def solve(self, rhs: Callable[[float, np.ndarray], np.ndarray], y0, t0: float, t1: float,
              sample_times=()):
        """
        Integrate y' = rhs(t, y) from t0 to t1.

        Returns:
            (samples, y_end): dense-output values at sample_times (each within
            [t0, t1], sorted) and the state at t1.
        """
        y = np.array(y0, dtype=complex).reshape(-1)
        samples = np.asarray(sample_times, dtype=float).reshape(-1)
        out = np.empty((samples.size, y.size), dtype=complex)
        k = 0
        t = float(t0)
        while k < samples.size and samples[k] <= t:
            out[k] = y
            k += 1
        if t1 <= t:
            return out, y

        config = self._config
        span = t1 - t
        f = rhs(t, y)
        self.stats.evaluations += 1
        if not np.all(np.isfinite(f)):
            raise NonFiniteStateError(f"Non-finite derivative at t={t}", last_time=t, last_state=y)
        h = config.initial_step if config.initial_step is not None else self._initial_step(rhs, t, y, f, span)
        h = min(h, config.max_step, span)
        K = np.empty((7, y.size), dtype=complex)
        err_prev = 1e-4
        rejected_last = False
        accepted_here = 0

        while t < t1:
            if self.stats.steps >= config.max_steps:
                raise MaxStepsExceededError(f"Exceeded {config.max_steps} steps at t={t}",
                                            last_time=t, last_state=y)
            min_step = 10.0 * np.spacing(max(abs(t), abs(t1)))
            if h < min_step:
                raise StepUnderflowError(f"Step size {h:.3e} underflows at t={t}",
                                         last_time=t, last_state=y)
            last = t + h >= t1 - min_step
            if last:
                h = t1 - t

            y_new, f_new, error = self._step(rhs, t, y, f, h, K)
            finite = np.all(np.isfinite(y_new)) and np.all(np.isfinite(f_new))
            err = self._rms(error / self._scale(y, y_new)) if finite else math.inf
            if not math.isfinite(err):
                err = math.inf

            if err <= 1.0:
                self.stats.accepted += 1
                accepted_here += 1
                t_new = t1 if last else t + h
                if k < samples.size and samples[k] <= t_new:
                    Q = np.dot(K.T, P)
                    while k < samples.size and samples[k] <= t_new:
                        if samples[k] == t_new:
                            out[k] = y_new
                        else:
                            theta = (samples[k] - t) / h
                            out[k] = y + h * np.dot(Q, np.array([theta, theta ** 2, theta ** 3, theta ** 4]))
                        k += 1
                if self._monitor is not None:
                    self._monitor(t_new, y_new)
                if err == 0.0:
                    factor = const.DOPRI_MAX_FACTOR
                else:
                    factor = const.DOPRI_SAFETY * err ** -const.DOPRI_ALPHA * err_prev ** const.DOPRI_BETA
                factor = min(const.DOPRI_MAX_FACTOR, max(const.DOPRI_MIN_FACTOR, factor))
                if rejected_last:
                    factor = min(1.0, factor)
                err_prev = max(err, 1e-4)
                rejected_last = False
                t, y, f = t_new, y_new, f_new
                h = min(h * factor, config.max_step)
            else:
                self.stats.rejected += 1
                if not finite and h * const.DOPRI_MIN_FACTOR < min_step:
                    raise NonFiniteStateError(f"State became non-finite after t={t}",
                                              last_time=t, last_state=y)
                if math.isinf(err):
                    factor = const.DOPRI_MIN_FACTOR
                else:
                    factor = max(const.DOPRI_MIN_FACTOR, const.DOPRI_SAFETY * err ** -const.DOPRI_ALPHA)
                h *= factor
                rejected_last = True

        self.stats.segments.append(accepted_here)
        Log.debug(f"Integrated [{t0:.6e}, {t1:.6e}] in {accepted_here} steps")
        return out, y


def solve_ode(rhs, y0, t_span, config: IntegrationConfig = None, sample_times=(), monitor=None):
    """
    One-shot integration of a complex vector ODE over t_span = (t0, t1).

    Returns:
        (samples, y_end, stats)
    """
    solver = DormandPrince(config if config is not None else IntegrationConfig(), monitor)
    samples, y_end = solver.solve(rhs, y0, t_span[0], t_span[1], sample_times)
    return samples, y_end, solver.stats
