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
 Description:       Joint spin x Fock space layout and its operators.
                    Ordering: spin 1 (x) ... (x) spin N (x) Fock.
 ****************************************************************************
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple, Tuple

import numpy as np

from cqed import const
from cqed.core.error import OracleDimensionError

# single-spin basis: index 0 lower level |1>, index 1 upper level |2>
SIGMA_12 = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
SIGMA_21 = SIGMA_12.T.copy()
SIGMA_22 = np.diag([0.0, 1.0]).astype(complex)

@dataclass(frozen=True)
class HilbertLayout:
    n_spins_exact: int
    fock_cutoff: int

    def __post_init__(self):
        if int(self.n_spins_exact) != self.n_spins_exact or not 1 <= self.n_spins_exact <= 4:
            raise OracleDimensionError(f"n_spins_exact must be an integer in 1..4, got {self.n_spins_exact}")
        if int(self.fock_cutoff) != self.fock_cutoff or self.fock_cutoff < 2:
            raise OracleDimensionError(f"fock_cutoff must be an integer >= 2, got {self.fock_cutoff}")
        object.__setattr__(self, "n_spins_exact", int(self.n_spins_exact))
        object.__setattr__(self, "fock_cutoff", int(self.fock_cutoff))
        if self.dimension > const.ORACLE_MAX_DIMENSION:
            raise OracleDimensionError(f"Dimension {self.dimension} exceeds {const.ORACLE_MAX_DIMENSION}")

    @property
    def spin_dimension(self) -> int:
        return 2 ** self.n_spins_exact

    @property
    def fock_dimension(self) -> int:
        return self.fock_cutoff + 1

    @property
    def dimension(self) -> int:
        return self.spin_dimension * self.fock_dimension


class LayoutOperators(NamedTuple):
    identity: np.ndarray
    a: np.ndarray
    lowering: Tuple[np.ndarray, ...]
    raising: Tuple[np.ndarray, ...]
    upper: Tuple[np.ndarray, ...]


def destroy(dimension: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1, dimension, dtype=float)), k=1).astype(complex)


def _embed_spin(layout: HilbertLayout, single: np.ndarray, index: int) -> np.ndarray:
    op = np.eye(1, dtype=complex)
    for k in range(layout.n_spins_exact):
        op = np.kron(op, single if k == index else np.eye(2, dtype=complex))
    return np.kron(op, np.eye(layout.fock_dimension, dtype=complex))


@lru_cache(maxsize=16)
def operators(layout: HilbertLayout) -> LayoutOperators:
    """
    Operators on the full space, cached per layout. Arrays are read-only.
    """
    identity = np.eye(layout.dimension, dtype=complex)
    a = np.kron(np.eye(layout.spin_dimension, dtype=complex), destroy(layout.fock_dimension))
    lowering = tuple(_embed_spin(layout, SIGMA_12, k) for k in range(layout.n_spins_exact))
    raising = tuple(_embed_spin(layout, SIGMA_21, k) for k in range(layout.n_spins_exact))
    upper = tuple(_embed_spin(layout, SIGMA_22, k) for k in range(layout.n_spins_exact))
    ops = LayoutOperators(identity, a, lowering, raising, upper)
    for array in (ops.identity, ops.a, *ops.lowering, *ops.raising, *ops.upper):
        array.flags.writeable = False
    return ops


def collective_operators(layout: HilbertLayout):
    """
    (J^2, J_z) of the exact spins.
    """
    ops = operators(layout)
    jx = sum(0.5 * (lo + ra) for lo, ra in zip(ops.lowering, ops.raising))
    jy = sum(0.5j * (lo - ra) for lo, ra in zip(ops.lowering, ops.raising))
    jz = sum(up - 0.5 * ops.identity for up in ops.upper)
    return jx @ jx + jy @ jy + jz @ jz, jz


def fock_populations(layout: HilbertLayout, matrix: np.ndarray) -> np.ndarray:
    """
    Photon-number distribution, spins traced out.
    """
    diagonal = np.real(np.diagonal(matrix)).reshape(layout.spin_dimension, layout.fock_dimension)
    return diagonal.sum(axis=0)
