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
 Description:       Density matrices of the exact small-N model: builders,
                    time evolution, steady state and moment extraction.
 ****************************************************************************
"""

import itertools
from functools import lru_cache
from typing import Callable, NamedTuple

import numpy as np

from cqed import const
from cqed.core.error import (InvalidParameterError, InvalidStateError,
                             OracleDimensionError)
from cqed.core.integrator.dopri5 import IntegrationConfig, solve_ode
from cqed.core.model.params import SystemParams
from cqed.core.model.state import NUM_SLOTS, CumulantState
from cqed.core.oracle.hilbert import (HilbertLayout, collective_operators,
                                      fock_populations, operators)
from cqed.core.oracle.liouvillian import Liouvillian, build_liouvillian
from cqed.util.log import Log

class DensityMatrix:
    """
    Trace-one hermitian positive matrix over a HilbertLayout.
    """
    __slots__ = ("_matrix", "layout")

    def __init__(self, matrix, layout: HilbertLayout, validate: bool = True):
        rho = np.array(matrix, dtype=complex)
        if rho.shape != (layout.dimension, layout.dimension):
            raise InvalidStateError(f"Density matrix shape {rho.shape} does not match "
                                    f"dimension {layout.dimension}")
        if validate:
            asymmetry = float(np.max(np.abs(rho - rho.conj().T)))
            if asymmetry > const.ORACLE_HERMITIAN_TOLERANCE:
                raise InvalidStateError(f"Density matrix not hermitian ({asymmetry:.3e})")
            trace = complex(np.trace(rho))
            if abs(trace - 1.0) > const.ORACLE_TRACE_TOLERANCE:
                raise InvalidStateError(f"Density matrix trace {trace} differs from 1")
            lowest = float(np.min(np.linalg.eigvalsh(rho)))
            if lowest < const.ORACLE_EIGENVALUE_FLOOR:
                raise InvalidStateError(f"Density matrix has eigenvalue {lowest:.3e}")
        rho.flags.writeable = False
        self._matrix = rho
        self.layout = layout

    @property
    def matrix(self) -> np.ndarray:
        return self._matrix

    @property
    def trace(self) -> float:
        return float(np.trace(self._matrix).real)

    @property
    def purity(self) -> float:
        return float(np.real(np.sum(self._matrix * self._matrix.T)))

    def fock_populations(self) -> np.ndarray:
        return fock_populations(self.layout, self._matrix)


def _hermitian_part(matrix: np.ndarray) -> np.ndarray:
    return 0.5 * (matrix + matrix.conj().T)


def _spin_density(p: float) -> np.ndarray:
    return np.diag([1.0 - p, p]).astype(complex)


def _thermal_fock(dimension: int, n_th: float) -> np.ndarray:
    if n_th == 0:
        weights = np.zeros(dimension)
        weights[0] = 1.0
    else:
        ratio = n_th / (1.0 + n_th)
        weights = ratio ** np.arange(dimension)
        weights = weights / weights.sum()
    return np.diag(weights).astype(complex)


def thermal_product_state(layout: HilbertLayout, p: float, n_c_th: float = 0.0) -> DensityMatrix:
    """
    Uncorrelated spins at upper population p and a (truncated) thermal cavity.
    """
    if not 0.0 <= p <= 1.0:
        raise InvalidParameterError(f"Population must lie in [0, 1], got {p}")
    rho = np.eye(1, dtype=complex)
    for _ in range(layout.n_spins_exact):
        rho = np.kron(rho, _spin_density(p))
    rho = np.kron(rho, _thermal_fock(layout.fock_dimension, n_c_th))
    return DensityMatrix(rho, layout)


def vacuum_ground_state(layout: HilbertLayout) -> DensityMatrix:
    return thermal_product_state(layout, 0.0, 0.0)


def dicke_state(layout: HilbertLayout, j: float, m: float) -> DensityMatrix:
    """
    Symmetric Dicke state |J=N/2, M> of the exact spins with an empty cavity.
    """
    n_spins = layout.n_spins_exact
    if j != 0.5 * n_spins:
        raise InvalidParameterError(f"Only symmetric states J=N/2={0.5 * n_spins} are built, got J={j}")
    excitations = m + 0.5 * n_spins
    if excitations != int(excitations) or not 0 <= excitations <= n_spins:
        raise InvalidParameterError(f"M={m} is not valid for J={j}")
    spin_vector = np.zeros(layout.spin_dimension, dtype=complex)
    for upper in itertools.combinations(range(n_spins), int(excitations)):
        # spin 1 is the most significant bit of the spin index
        index = sum(1 << (n_spins - 1 - k) for k in upper)
        spin_vector[index] = 1.0
    spin_vector /= np.linalg.norm(spin_vector)
    vacuum = np.zeros(layout.fock_dimension, dtype=complex)
    vacuum[0] = 1.0
    psi = np.kron(spin_vector, vacuum)
    return DensityMatrix(np.outer(psi, psi.conj()), layout)


@lru_cache(maxsize=16)
def _moment_operators(layout: HilbertLayout) -> tuple:
    ops = operators(layout)
    a = ops.a
    a_dag = a.conj().T
    s12, s21, s22 = ops.lowering[0], ops.raising[0], ops.upper[0]
    single = [a, s12, s22, a_dag @ a, a @ a, a_dag @ s12, a_dag @ s22, a @ s12]
    if layout.n_spins_exact > 1:
        t12, t21, t22 = ops.lowering[1], ops.raising[1], ops.upper[1]
        pairs = [s21 @ t12, s22 @ t21, s12 @ t12, s22 @ t22]
    else:
        pairs = [None] * 4
    j_squared, j_z = collective_operators(layout)
    return tuple(single + pairs), j_squared, j_z


def _expectation(matrix: np.ndarray, operator: np.ndarray) -> complex:
    # tr(rho O)
    return complex(np.sum(matrix * operator.T))


def moment_vector(layout: HilbertLayout, matrix: np.ndarray) -> np.ndarray:
    """
    The twelve cumulant slots of any operator on the layout (linear in matrix).
    Pair slots are zero for a single spin.
    """
    slot_operators, _, _ = _moment_operators(layout)
    values = np.zeros(NUM_SLOTS, dtype=complex)
    for index, operator in enumerate(slot_operators):
        if operator is not None:
            values[index] = _expectation(matrix, operator)
    return values


class OracleMoments(NamedTuple):
    state: CumulantState
    j_squared: float
    j_z: float


def moments(rho: DensityMatrix) -> OracleMoments:
    """
    Cumulant slots (spin 1, pair 1-2) and exact collective-spin expectations.
    """
    _, j_squared, j_z = _moment_operators(rho.layout)
    return OracleMoments(state=CumulantState(moment_vector(rho.layout, rho.matrix)),
                         j_squared=_expectation(rho.matrix, j_squared).real,
                         j_z=_expectation(rho.matrix, j_z).real)


def evolve(rho0: DensityMatrix, liouvillian: Liouvillian, t_grid,
           config: IntegrationConfig = None) -> list:
    """
    Integrate the master equation from t=0 and sample at t_grid.
    """
    grid = np.asarray(t_grid, dtype=float).reshape(-1)
    if grid.size == 0 or grid[0] < 0 or np.any(np.diff(grid) <= 0):
        raise InvalidParameterError("Time grid must be non-empty, non-negative and increasing.")
    if rho0.layout != liouvillian.layout:
        raise InvalidParameterError("Initial state and Liouvillian use different layouts.")
    layout = rho0.layout
    samples, _, stats = solve_ode(liouvillian.rhs, rho0.matrix.reshape(-1), (0.0, float(grid[-1])),
                                  config, sample_times=grid)
    Log.debug(f"Oracle evolution of dimension {layout.dimension}: {stats.accepted} steps")
    states = []
    for vector in samples:
        matrix = _hermitian_part(vector.reshape(layout.dimension, layout.dimension))
        drift = abs(np.trace(matrix).real - 1.0)
        if drift > 1e-9:
            Log.warning(f"Oracle trace drifted by {drift:.3e}")
        states.append(DensityMatrix(matrix, layout, validate=False))
    return states


def oracle_steady_state(liouvillian: Liouvillian) -> DensityMatrix:
    """
    Trace-one null vector of the explicit superoperator.
    """
    dimension = liouvillian.layout.dimension
    superop = liouvillian.matrix()
    trace_row = np.zeros((1, dimension * dimension), dtype=complex)
    trace_row[0, ::dimension + 1] = 1.0
    system = np.vstack([superop, trace_row])
    rhs = np.zeros(dimension * dimension + 1, dtype=complex)
    rhs[-1] = 1.0
    vector, *_ = np.linalg.lstsq(system, rhs, rcond=None)
    matrix = _hermitian_part(vector.reshape(dimension, dimension))
    return DensityMatrix(matrix / np.trace(matrix).real, liouvillian.layout)


def evolve_auto_cutoff(params: SystemParams, n_spins_exact: int, drive_amplitude: float,
                       initial: Callable[[HilbertLayout], DensityMatrix], t_grid,
                       config: IntegrationConfig = None,
                       start_cutoff: int = const.ORACLE_START_CUTOFF):
    """
    Evolve at the smallest Fock cutoff whose top level stays below the tail
    tolerance at every sample, doubling the cutoff until it does.

    Returns:
        (layout, states)
    """
    cutoff = start_cutoff
    while True:
        try:
            layout = HilbertLayout(n_spins_exact, cutoff)
        except OracleDimensionError:
            raise OracleDimensionError(f"No Fock cutoff within the dimension guard keeps the "
                                       f"tail below {const.ORACLE_TAIL_TOLERANCE}")
        liouvillian = build_liouvillian(params, layout, drive_amplitude)
        states = evolve(initial(layout), liouvillian, t_grid, config)
        tail = max(state.fock_populations()[-1] for state in states)
        if tail < const.ORACLE_TAIL_TOLERANCE:
            Log.info(f"Oracle Fock cutoff {cutoff} (tail population {tail:.3e})")
            return layout, states
        Log.info(f"Fock cutoff {cutoff} leaves tail population {tail:.3e}, doubling")
        cutoff *= 2
