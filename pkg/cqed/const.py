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
 Description:       Single constants table of the nv-cqed package.
 ****************************************************************************
"""

import math
import os
from enum import Enum

from scipy import constants as codata

from cqed.util.enum_list import EnumListMeta

VERSION = "1.0.0"
PACKAGE_NAME = "nv-cqed"

# Physical constants (CODATA, via scipy)
HBAR = codata.hbar
K_B = codata.k
TWO_PI = 2.0 * math.pi
# Linear field map of the NV {0,+1} transition
NV_ZERO_FIELD_SPLITTING = TWO_PI * 2.87e9
NV_GYROMAGNETIC_RATIO = TWO_PI * 28.0e9

# Paths
PACKAGE_DIR = os.path.dirname(os.path.abspath(__file__))
PACKAGE_CONF_DIR = os.path.join(PACKAGE_DIR, "conf")
PRESETS_FILE = os.path.join(PACKAGE_CONF_DIR, "presets.yaml")
CLI_SCHEMA_FILE = os.path.join(PACKAGE_CONF_DIR, "cli_schema.json")

# Logging
LOG_NAME = "cqed"
LOG_FORMAT = "%(asctime)s [%(levelname)s] %(name)s: %(message)s"
LOG_LEVEL = "INFO"
LOG_BACKUP_COUNT = 5
LOG_FILE_SIZE_IN_MB = 10

# CLI exit codes
EXIT_SUCCESS = 0
EXIT_FAILURE = 1
EXIT_CONFIG_ERROR = 2
EXIT_CONVERGENCE_FAILURE = 3
EXIT_IO_ERROR = 4

# Numerical thresholds
DICKE_CLIP_FACTOR = 1e-9
HERMITICITY_WARN_LIMIT = 1e-9
TRIANGLE_TOLERANCE = 1e-6
ORACLE_MAX_DIMENSION = 2048
ORACLE_SUPEROPERATOR_MAX_DIMENSION = 64
ORACLE_TAIL_TOLERANCE = 1e-8
ORACLE_HERMITIAN_TOLERANCE = 1e-12
ORACLE_TRACE_TOLERANCE = 1e-10
ORACLE_EIGENVALUE_FLOOR = -1e-9
PEAK_PROMINENCE_FRACTION = 0.05

# Integrator defaults
DEFAULT_REL_TOL = 1e-8
DEFAULT_ABS_TOL = 1e-12
DEFAULT_MAX_STEPS = 5_000_000
DOPRI_SAFETY = 0.9
DOPRI_MIN_FACTOR = 0.2
DOPRI_MAX_FACTOR = 10.0
DOPRI_ALPHA = 0.17
DOPRI_BETA = 0.04

# Steady-state defaults (multiples of the relevant lifetimes)
STEADY_WINDOW_CAVITY_LIFETIMES = 10.0
STEADY_CAP_LIFETIMES = 50.0
STEADY_CAP_SPIN_FLOOR = 10.0
STEADY_REL_TOL = 1e-7
STEADY_RESIDUAL_TOL = 1e-6
STEADY_DIVERGENCE_BOUND = 1e30

# Experiment defaults
SWEEP_POINTS = 201
SWEEP_HALF_SPAN = TWO_PI * 40e6
FIG2B_TEMPERATURES = (1e-3, 300.0, 61)
FIG2B_ETA_GRID = (0.0, 1e2, 1e3, 1e4, 1e5, 1e6)
FIG2B_TEMPERATURE = 293.0
FIG3A_ETA_GRID = (0.0, 5e2, 1e3, 1e4)
FIG3A_DRIVE = TWO_PI * 1e8
FIG3A_PULSE = 1e-6
FIG3A_TAIL = 1e-6
FIG3A_SAMPLES = 4001
FIG3B_ETA_GRID = (0.0, 1e2, 1e3, 1e4)
FIG3B_DRIVE = TWO_PI * 1e6
FIG4_ETA_GRID = (1e4, 2.5e4, 1e6)
FIG4_DRIVE = TWO_PI * 17e10
FIG4_PULSE = 28e-9
FIG4_TAIL = 1e-3
FIG4_EARLY_WINDOW = 2e-6
FIG4_EARLY_SAMPLES = 2001
FIG4_LATE_SAMPLES = 2000
FIG5_DRIVE = TWO_PI * 5e7
FIG5_ETA = 1e4
FIG5A_SPIN_DETUNINGS = (-TWO_PI * 2e6, 0.0, TWO_PI * 2e6)
FIG5B_DRIVE_OFFSETS = (-TWO_PI * 1.59e6, 0.0, TWO_PI * 1.59e6)
ORACLE_CHECK_DRIVE = 0.15
ORACLE_CHECK_STRONG_DRIVE = 1.0
ORACLE_STRONG_DRIVE_SPINS = 2
PULSE_END_FRACTION = 0.01
RECOOLING_FRACTION = 0.9
ORACLE_CHECK_SPINS = (1, 2, 3)
ORACLE_CHECK_LIFETIMES = 5.0
ORACLE_CHECK_SAMPLES = 201
ORACLE_START_CUTOFF = 4


class PRESETS(Enum, metaclass=EnumListMeta):
    FIG2B = "fig2b"
    FIG3A = "fig3a"
    FIG3B = "fig3b"
    FIG4 = "fig4"
    FIG5A = "fig5a"
    FIG5B = "fig5b"
    ORACLE_CHECK = "oracle-check"


class PARAM_PRESETS(Enum, metaclass=EnumListMeta):
    FIG3 = "fig3"
    FIG4 = "fig4"
    ORACLE = "oracle"


class UNIT_CLASS(Enum, metaclass=EnumListMeta):
    ANGULAR = "angular"
    JUMP_RATE = "jump_rate"
    PLAIN = "plain"


class STEADY_STATUS(Enum, metaclass=EnumListMeta):
    CONVERGED = "converged"
    NOT_CONVERGED = "not_converged"
    DIVERGED = "diverged"


# Unit class of every SystemParams field
PARAM_UNITS = {
    "omega_c": UNIT_CLASS.ANGULAR,
    "kappa_c": UNIT_CLASS.ANGULAR,
    "kappa_1": UNIT_CLASS.ANGULAR,
    "omega_s": UNIT_CLASS.ANGULAR,
    "gamma_s": UNIT_CLASS.ANGULAR,
    "eta_s": UNIT_CLASS.JUMP_RATE,
    "chi_s": UNIT_CLASS.ANGULAR,
    "g_s": UNIT_CLASS.ANGULAR,
    "n_spins": UNIT_CLASS.PLAIN,
    "temperature": UNIT_CLASS.PLAIN,
    "omega_d": UNIT_CLASS.ANGULAR,
}

# Runner registry, resolved by class path
EXPERIMENT_CLASSES = {
    PRESETS.FIG2B.value: "cqed.core.experiments.dicke_map.DickeMapRunner",
    PRESETS.FIG3A.value: "cqed.core.experiments.rabi.RabiTransientRunner",
    PRESETS.FIG3B.value: "cqed.core.experiments.rabi.RabiSpectrumRunner",
    PRESETS.FIG4.value: "cqed.core.experiments.superradiance.SuperradianceRunner",
    PRESETS.FIG5A.value: "cqed.core.experiments.sensing.SensingRunner",
    PRESETS.FIG5B.value: "cqed.core.experiments.sensing.SensingRunner",
    PRESETS.ORACLE_CHECK.value: "cqed.core.experiments.oracle_check.OracleComparisonRunner",
}
