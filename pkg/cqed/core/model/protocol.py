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

import math
from dataclasses import dataclass
from typing import NamedTuple, Tuple

from cqed.core.error import InvalidParameterError

class DriveSegment(NamedTuple):
    duration: float
    amplitude: float


@dataclass(frozen=True)
class DriveProtocol:
    """
    Piecewise-constant drive amplitudes. The drive frequency is the fixed
    SystemParams.omega_d for the whole protocol; amplitudes are in sqrt(rad/s)
    so that amplitude * sqrt(kappa_1) is an angular Rabi drive.
    """
    segments: Tuple[DriveSegment, ...]

    def __post_init__(self):
        segments = tuple(DriveSegment(float(duration), float(amplitude))
                         for duration, amplitude in self.segments)
        if not segments:
            raise InvalidParameterError("Drive protocol needs at least one segment.")
        for segment in segments:
            if not (segment.duration > 0 and math.isfinite(segment.duration)):
                raise InvalidParameterError(f"Segment duration must be positive and finite: {segment}")
            if not math.isfinite(segment.amplitude):
                raise InvalidParameterError(f"Segment amplitude must be finite: {segment}")
        if not math.isfinite(sum(segment.duration for segment in segments)):
            raise InvalidParameterError("Total protocol duration is not finite.")
        object.__setattr__(self, "segments", segments)

    @classmethod
    def constant(cls, amplitude: float, duration: float) -> "DriveProtocol":
        return cls(segments=(DriveSegment(duration, amplitude),))

    @classmethod
    def pulse(cls, amplitude: float, pulse: float, tail: float) -> "DriveProtocol":
        """
        Square pulse followed by an undriven tail.
        """
        return cls(segments=(DriveSegment(pulse, amplitude), DriveSegment(tail, 0.0)))

    @property
    def total_duration(self) -> float:
        return sum(segment.duration for segment in self.segments)

    def segment_bounds(self) -> list:
        """
        (start, end, amplitude) per segment on the absolute time axis.
        """
        bounds = []
        start = 0.0
        for segment in self.segments:
            end = start + segment.duration
            bounds.append((start, end, segment.amplitude))
            start = end
        return bounds
