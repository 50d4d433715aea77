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
 Description:       Physical parameter records and thermal occupancies.
                    All frequencies and rates are angular (rad/s).
 ****************************************************************************
"""

import dataclasses
import math
from dataclasses import dataclass

import numpy as np

from cqed import const
from cqed.core.error import InvalidParameterError

_RATE_FIELDS = ("kappa_c", "kappa_1", "gamma_s", "eta_s", "chi_s")

@dataclass(frozen=True)
class SystemParams:
    """
    Rates and frequencies of the driven resonator coupled to N identical spins.
    n_spins is real-valued, ensembles of 1e12 to 1e16 spins are typical.
    """
    omega_c: float
    kappa_c: float
    kappa_1: float
    omega_s: float
    gamma_s: float
    eta_s: float
    chi_s: float
    g_s: float
    n_spins: float
    temperature: float
    omega_d: float

    def __post_init__(self):
        for field in dataclasses.fields(self):
            value = getattr(self, field.name)
            if isinstance(value, bool) or not isinstance(value, (int, float, np.floating, np.integer)):
                raise InvalidParameterError(f"{field.name} must be a real number, got {value!r}")
            value = float(value)
            if not math.isfinite(value):
                raise InvalidParameterError(f"{field.name} must be finite, got {value}")
            object.__setattr__(self, field.name, value)
        for name in _RATE_FIELDS:
            if getattr(self, name) < 0:
                raise InvalidParameterError(f"{name} must be >= 0, got {getattr(self, name)}")
        if self.kappa_1 > self.kappa_c:
            raise InvalidParameterError(f"kappa_1 ({self.kappa_1}) exceeds kappa_c ({self.kappa_c})")
        if self.n_spins < 1:
            raise InvalidParameterError(f"n_spins must be >= 1, got {self.n_spins}")
        if self.temperature < 0:
            raise InvalidParameterError(f"temperature must be >= 0, got {self.temperature}")
        if not (math.isfinite(self.delta_c) and math.isfinite(self.delta_s)):
            raise InvalidParameterError("Drive detunings are not finite.")

    @property
    def delta_c(self) -> float:
        return self.omega_c - self.omega_d

    @property
    def delta_s(self) -> float:
        return self.omega_s - self.omega_d

    def replace(self, **changes) -> "SystemParams":
        """
        Copy with some fields changed, validated again.
        """
        return dataclasses.replace(self, **changes)

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "SystemParams":
        names = {field.name for field in dataclasses.fields(cls)}
        unknown = set(data) - names
        if unknown:
            raise InvalidParameterError(f"Unknown parameter(s): {sorted(unknown)}")
        missing = names - set(data)
        if missing:
            raise InvalidParameterError(f"Missing parameter(s): {sorted(missing)}")
        return cls(**data)


@dataclass(frozen=True)
class ThermalOccupancies:
    n_c_th: float
    n_s_th: float

    def __post_init__(self):
        for name in ("n_c_th", "n_s_th"):
            value = float(getattr(self, name))
            if not value >= 0:
                raise InvalidParameterError(f"{name} must be >= 0, got {value}")
            object.__setattr__(self, name, value)

    @classmethod
    def from_params(cls, params: SystemParams) -> "ThermalOccupancies":
        return cls(n_c_th=thermal_occupation(params.omega_c, params.temperature),
                   n_s_th=thermal_occupation(params.omega_s, params.temperature))


@dataclass(frozen=True)
class ComplexDetunings:
    delta_c_tilde: complex
    delta_s_tilde: complex


def thermal_occupation(omega: float, temperature: float) -> float:
    """
    Bose-Einstein occupation 1/(exp(hbar*omega/(k_B*T)) - 1).

    Args:
        omega (float): angular frequency in rad/s, > 0.
        temperature (float): kelvin, >= 0. Zero temperature gives exactly 0.
    """
    if not (omega > 0 and math.isfinite(omega)):
        raise InvalidParameterError(f"omega must be positive and finite, got {omega}")
    if not (temperature >= 0 and math.isfinite(temperature)):
        raise InvalidParameterError(f"temperature must be >= 0 and finite, got {temperature}")
    if temperature == 0:
        return 0.0
    x = const.HBAR * omega / (const.K_B * temperature)
    # exp overflows past ~709, the occupation is 0 to double precision anyway
    if x > 700.0:
        return 0.0
    return float(1.0 / np.expm1(x))


def complex_detunings(params: SystemParams, occ: ThermalOccupancies) -> ComplexDetunings:
    """
    Damped detunings in the frame rotating at omega_d.
    """
    spin_width = params.eta_s + (1.0 + 2.0 * occ.n_s_th) * params.gamma_s + 2.0 * params.chi_s
    return ComplexDetunings(
        delta_c_tilde=complex(params.delta_c, -0.5 * params.kappa_c),
        delta_s_tilde=complex(params.delta_s, -0.5 * spin_width))


def spin_frequency_from_field(b_tesla: float,
                              zero_field_splitting: float = const.NV_ZERO_FIELD_SPLITTING,
                              gyromagnetic: float = const.NV_GYROMAGNETIC_RATIO) -> float:
    """
    Linear map of an axial magnetic field onto the {0,+1} spin transition frequency.
    """
    return zero_field_splitting + gyromagnetic * b_tesla


def field_from_spin_frequency(omega_s: float,
                              zero_field_splitting: float = const.NV_ZERO_FIELD_SPLITTING,
                              gyromagnetic: float = const.NV_GYROMAGNETIC_RATIO) -> float:
    if gyromagnetic == 0:
        raise InvalidParameterError("gyromagnetic ratio must be non-zero")
    return (omega_s - zero_field_splitting) / gyromagnetic
