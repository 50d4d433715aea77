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

import inspect
import logging

from cqed import const
from cqed.util.log import Log

CQED_BASIC_ERROR                = 0x0000
CQED_INVALID_PARAMETER_ERROR    = 0x0001
CQED_INVALID_STATE_ERROR        = 0x0002
CQED_UNDAMPED_SPIN_ERROR        = 0x0003
CQED_UNPHYSICAL_STATE_ERROR     = 0x0004
CQED_INTEGRATION_ERROR          = 0x0005
CQED_STEP_UNDERFLOW_ERROR       = 0x0006
CQED_MAX_STEPS_ERROR            = 0x0007
CQED_NON_FINITE_STATE_ERROR     = 0x0008
CQED_STEADY_STATE_DIVERGED      = 0x0009
CQED_ORACLE_DIMENSION_ERROR     = 0x000a
CQED_PEAK_COUNT_ERROR           = 0x000b
CQED_CONFIG_ERROR               = 0x000c
CQED_REPORT_IO_ERROR            = 0x000d
CQED_EXPERIMENT_ERROR           = 0x000e
CQED_INVALID_COMMAND_ERROR      = 0x000f

class CQEDError(Exception):
    # errors callers routinely catch and recover from log below ERROR
    log_level = logging.ERROR

    def __init__(self, rc=1, desc=None, message_id=CQED_BASIC_ERROR, message_args=None):
        """
        Parent class for the nv-cqed error classes
        """
        self._rc = rc
        self._desc = desc
        self._message_id = message_id
        self._message_args = message_args
        super(CQEDError, self).__init__(desc)
        Log.log(self.log_level,
                f"error({self._message_id}):rc({self._rc}):{self._desc}:{self._message_args}")

    @property
    def rc(self) -> int:
        return self._rc

    @property
    def desc(self) -> str:
        return self._desc

    @property
    def message_id(self) -> int:
        return self._message_id

    @property
    def message_args(self):
        return self._message_args

    def __str__(self):
        return f"{self._desc}"

class InvalidParameterError(CQEDError):
    def __init__(self, desc=None):
        """
        Handle parameter validation failure.
        """
        _desc = '[%s] %s' %(inspect.stack()[1][3], desc)
        super(InvalidParameterError, self).__init__(rc=1, desc=_desc,
                                                    message_id=CQED_INVALID_PARAMETER_ERROR)

class InvalidStateError(CQEDError):
    def __init__(self, desc=None):
        """
        Handle malformed or non-finite model states.
        """
        _desc = '[%s] %s' %(inspect.stack()[1][3], desc)
        super(InvalidStateError, self).__init__(rc=1, desc=_desc,
                                                message_id=CQED_INVALID_STATE_ERROR)

class UndampedSpinError(CQEDError):
    def __init__(self, desc=None):
        """
        Spin population has no damping, the steady population is undefined.
        """
        _desc = "Spin relaxation and cooling rates are all zero." if desc is None else desc
        super(UndampedSpinError, self).__init__(rc=1, desc=_desc,
                                                message_id=CQED_UNDAMPED_SPIN_ERROR)

class UnphysicalStateError(CQEDError):
    log_level = logging.DEBUG

    def __init__(self, desc=None, radicand=None):
        """
        Cumulant closure produced a state without a Dicke interpretation.
        """
        self.radicand = radicand
        super(UnphysicalStateError, self).__init__(rc=1, desc=desc,
                                                   message_id=CQED_UNPHYSICAL_STATE_ERROR,
                                                   message_args={"radicand": radicand})

class IntegrationError(CQEDError):
    def __init__(self, desc=None, last_time=None, last_state=None,
                 message_id=CQED_INTEGRATION_ERROR):
        """
        Time integration failed. Carries the last accepted time and state.
        """
        self.last_time = last_time
        self.last_state = last_state
        super(IntegrationError, self).__init__(rc=1, desc=desc, message_id=message_id,
                                               message_args={"last_time": last_time})

class StepUnderflowError(IntegrationError):
    def __init__(self, desc=None, last_time=None, last_state=None):
        super(StepUnderflowError, self).__init__(desc=desc, last_time=last_time,
                                                 last_state=last_state,
                                                 message_id=CQED_STEP_UNDERFLOW_ERROR)

class MaxStepsExceededError(IntegrationError):
    def __init__(self, desc=None, last_time=None, last_state=None):
        super(MaxStepsExceededError, self).__init__(desc=desc, last_time=last_time,
                                                    last_state=last_state,
                                                    message_id=CQED_MAX_STEPS_ERROR)

class NonFiniteStateError(IntegrationError):
    def __init__(self, desc=None, last_time=None, last_state=None):
        super(NonFiniteStateError, self).__init__(desc=desc, last_time=last_time,
                                                  last_state=last_state,
                                                  message_id=CQED_NON_FINITE_STATE_ERROR)

class SteadyStateDivergence(CQEDError):
    def __init__(self, desc=None, last_state=None):
        """
        State norm grew beyond the divergence bound while seeking a fixed point.
        """
        self.last_state = last_state
        super(SteadyStateDivergence, self).__init__(rc=1, desc=desc,
                                                    message_id=CQED_STEADY_STATE_DIVERGED)

class OracleDimensionError(CQEDError):
    def __init__(self, desc=None):
        """
        Exact simulation requested beyond the dense dimension guard.
        """
        _desc = '[%s] %s' %(inspect.stack()[1][3], desc)
        super(OracleDimensionError, self).__init__(rc=1, desc=_desc,
                                                   message_id=CQED_ORACLE_DIMENSION_ERROR)

class PeakCountError(CQEDError):
    log_level = logging.DEBUG

    def __init__(self, desc=None, count=None):
        self.count = count
        super(PeakCountError, self).__init__(rc=1, desc=desc,
                                             message_id=CQED_PEAK_COUNT_ERROR,
                                             message_args={"count": count})

class ConfigError(CQEDError):
    def __init__(self, desc=None, line=None, source=None):
        """
        Invalid experiment configuration. `line` is 1-based when known.
        """
        self.line = line
        self.source = source
        location = ""
        if source is not None:
            location = f"{source}:"
        if line is not None:
            location = f"{location}{line}:"
        _desc = f"{location} {desc}" if location else desc
        super(ConfigError, self).__init__(rc=const.EXIT_CONFIG_ERROR, desc=_desc, message_id=CQED_CONFIG_ERROR)

class ReportIOError(CQEDError):
    def __init__(self, desc=None):
        super(ReportIOError, self).__init__(rc=const.EXIT_IO_ERROR, desc=desc, message_id=CQED_REPORT_IO_ERROR)

class ExperimentError(CQEDError):
    def __init__(self, desc=None):
        _desc = '[%s] %s' %(inspect.stack()[1][3], desc)
        super(ExperimentError, self).__init__(rc=1, desc=_desc, message_id=CQED_EXPERIMENT_ERROR)

class InvalidCommandError(CQEDError):
    def __init__(self, desc=None):
        super(InvalidCommandError, self).__init__(rc=const.EXIT_CONFIG_ERROR, desc=desc,
                                                  message_id=CQED_INVALID_COMMAND_ERROR)
