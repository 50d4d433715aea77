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
 Description:       Cumulant state vector, its time derivative and Dicke
                    coordinates.
 ****************************************************************************
"""

import math
from dataclasses import dataclass
from enum import IntEnum

import numpy as np

from cqed import const
from cqed.core.error import InvalidStateError

NUM_SLOTS = 12

class Slot(IntEnum):
    """
    Zero-based positions of the twelve expectation values. Spin 1 is the
    representative spin, spins 1 and 2 the representative pair.
    """
    FIELD = 0               # <a>
    COHERENCE = 1           # <s12_1>
    UPPER_POPULATION = 2    # <s22_1>
    PHOTON_NUMBER = 3       # <a+ a>
    FIELD_SQUARED = 4       # <a a>
    FIELD_COHERENCE = 5     # <a+ s12_1>
    FIELD_POPULATION = 6    # <a+ s22_1>
    ANNIHILATION_COHERENCE = 7  # <a s12_1>
    EXCHANGE = 8            # <s21_1 s12_2>
    POPULATION_RAISING = 9  # <s22_1 s21_2>
    PAIR_LOWERING = 10      # <s12_1 s12_2>
    PAIR_POPULATION = 11    # <s22_1 s22_2>

REAL_SLOTS = (Slot.UPPER_POPULATION, Slot.PHOTON_NUMBER, Slot.EXCHANGE, Slot.PAIR_POPULATION)
_REAL_INDEX = np.array([int(slot) for slot in REAL_SLOTS])

def hermiticity_residue(values) -> float:
    """
    Largest |Im| over the slots that are expectation values of hermitian operators.
    """
    arr = np.asarray(values)
    return float(np.max(np.abs(arr[..., _REAL_INDEX].imag)))


class CumulantState:
    """
    Immutable set of the twelve first- and second-order expectation values.
    Imaginary parts of the hermitian slots are removed on construction once
    they are within round-off of zero.
    """
    __slots__ = ("_values",)

    def __init__(self, values, check_bounds: bool = True):
        arr = np.array(values, dtype=complex).reshape(-1)
        if arr.shape != (NUM_SLOTS,):
            raise InvalidStateError(f"Expected {NUM_SLOTS} slots, got {arr.shape[0]}")
        if not np.all(np.isfinite(arr)):
            raise InvalidStateError("State contains non-finite entries.")
        scale = max(1.0, float(np.max(np.abs(arr[_REAL_INDEX].real))))
        residue = hermiticity_residue(arr)
        if residue > const.HERMITICITY_WARN_LIMIT * scale:
            raise InvalidStateError(f"Hermitian slots carry imaginary parts up to {residue:.3e}")
        arr[_REAL_INDEX] = arr[_REAL_INDEX].real
        if check_bounds:
            population = arr[Slot.UPPER_POPULATION].real
            if population < -const.HERMITICITY_WARN_LIMIT or population > 1.0 + const.HERMITICITY_WARN_LIMIT:
                raise InvalidStateError(f"Upper population {population} outside [0, 1]")
        arr.flags.writeable = False
        self._values = arr

    @classmethod
    def zeros(cls) -> "CumulantState":
        return cls(np.zeros(NUM_SLOTS, dtype=complex))

    @property
    def values(self) -> np.ndarray:
        return self._values

    def as_array(self) -> np.ndarray:
        return self._values.copy()

    def __getitem__(self, slot) -> complex:
        return complex(self._values[int(slot)])

    def __eq__(self, other) -> bool:
        if not isinstance(other, CumulantState):
            return NotImplemented
        return bool(np.array_equal(self._values, other._values))

    def __hash__(self):
        return hash(self._values.tobytes())

    def __reduce__(self):
        return (CumulantState, (self._values.copy(), False))

    def __repr__(self):
        return f"CumulantState({self._values.tolist()!r})"

    @property
    def field(self) -> complex:
        return self[Slot.FIELD]

    @property
    def upper_population(self) -> float:
        return float(self._values[Slot.UPPER_POPULATION].real)

    @property
    def photon_number(self) -> float:
        return float(self._values[Slot.PHOTON_NUMBER].real)


class StateDerivative:
    """
    Time derivative of every slot of a CumulantState, in (slot units)/s.
    """
    __slots__ = ("_values",)

    def __init__(self, values):
        arr = np.array(values, dtype=complex).reshape(-1)
        if arr.shape != (NUM_SLOTS,):
            raise InvalidStateError(f"Expected {NUM_SLOTS} slots, got {arr.shape[0]}")
        arr.flags.writeable = False
        self._values = arr

    @property
    def values(self) -> np.ndarray:
        return self._values

    def __getitem__(self, slot) -> complex:
        return complex(self._values[int(slot)])

    def __repr__(self):
        return f"StateDerivative({self._values.tolist()!r})"


@dataclass(frozen=True)
class DickeCoordinates:
    """
    Mean Dicke quantum numbers (J, M). J solves J(J+1) = <J^2>.
    """
    j: float
    m: float

    def __post_init__(self):
        j, m = float(self.j), float(self.m)
        if not (math.isfinite(j) and math.isfinite(m)):
            raise InvalidStateError(f"Dicke coordinates must be finite, got ({j}, {m})")
        if j < 0:
            raise InvalidStateError(f"J must be >= 0, got {j}")
        object.__setattr__(self, "j", j)
        object.__setattr__(self, "m", m)

    @property
    def j_squared(self) -> float:
        return self.j * (self.j + 1.0)

    def j_ratio(self, n_spins: float) -> float:
        return self.j / (0.5 * n_spins)

    def within_triangle(self, n_spins: float, tolerance: float = const.TRIANGLE_TOLERANCE) -> bool:
        """
        |M| <= J <= N/2, with an absolute slack of tolerance * N.
        """
        slack = tolerance * n_spins
        return self.j <= 0.5 * n_spins + slack and abs(self.m) <= self.j + slack
