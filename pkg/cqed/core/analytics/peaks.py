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
 Description:       Peak extraction from swept spectra, oscillation
                    frequencies of sampled signals and the frequency-sum
                    inversion of a split resonance.
 ****************************************************************************
"""

from dataclasses import dataclass
from typing import List, NamedTuple

import numpy as np
from scipy import signal

from cqed import const
from cqed.core.error import InvalidParameterError, PeakCountError

class Peak(NamedTuple):
    frequency: float
    height: float
    index: int


@dataclass(frozen=True)
class SpectrumPeaks:
    """
    Local maxima of a spectrum, ascending in frequency, refined by a
    three-point parabola.
    """
    peaks: tuple

    def __len__(self) -> int:
        return len(self.peaks)

    @property
    def frequencies(self) -> List[float]:
        return [peak.frequency for peak in self.peaks]

    @property
    def heights(self) -> List[float]:
        return [peak.height for peak in self.peaks]

    def separation(self) -> float:
        if len(self.peaks) != 2:
            raise PeakCountError(f"Separation needs exactly two peaks, found {len(self.peaks)}",
                                 count=len(self.peaks))
        return self.peaks[1].frequency - self.peaks[0].frequency


def _sweep_arrays(sweep):
    data = np.asarray(sweep, dtype=float)
    if data.ndim != 2 or data.shape[1] != 2:
        raise InvalidParameterError("Sweep must be a sequence of (frequency, value) pairs.")
    if data.shape[0] < 5:
        raise InvalidParameterError(f"Sweep needs at least 5 points, got {data.shape[0]}")
    frequencies, values = data[:, 0], data[:, 1]
    if np.any(np.diff(frequencies) <= 0):
        raise InvalidParameterError("Sweep frequencies must be strictly increasing.")
    return frequencies, values


def _parabola_vertex(x: np.ndarray, y: np.ndarray, index: int):
    x0 = x[index]
    coeffs = np.polyfit(x[index - 1:index + 2] - x0, y[index - 1:index + 2], 2)
    curvature, slope, offset = coeffs
    if curvature >= 0:
        return float(x0), float(y[index])
    shift = -slope / (2.0 * curvature)
    # the vertex stays between the neighbouring samples
    shift = min(max(shift, x[index - 1] - x0), x[index + 1] - x0)
    return float(x0 + shift), float(offset + slope * shift + curvature * shift * shift)


def find_peaks(sweep, prominence: float = const.PEAK_PROMINENCE_FRACTION) -> SpectrumPeaks:
    """
    Local maxima with prominence above `prominence` times the global maximum.

    Args:
        sweep: (omega_d, photon number) pairs, strictly increasing in omega_d.
    """
    frequencies, values = _sweep_arrays(sweep)
    top = float(np.max(values))
    if top <= 0:
        return SpectrumPeaks(peaks=())
    indices, _ = signal.find_peaks(values, prominence=prominence * top)
    peaks = []
    for index in indices:
        frequency, height = _parabola_vertex(frequencies, values, int(index))
        if height > 0:
            peaks.append(Peak(frequency, height, int(index)))
    return SpectrumPeaks(peaks=tuple(peaks))


def has_central_dip(sweep, center: float, prominence: float = 1e-3) -> bool:
    """
    True when the spectrum has a local minimum between the outermost maxima
    around `center`, or splits into two or more peaks.
    """
    frequencies, values = _sweep_arrays(sweep)
    top = float(np.max(values))
    if top <= 0:
        return False
    maxima, _ = signal.find_peaks(values, prominence=prominence * top)
    if len(maxima) >= 2:
        return True
    minima, _ = signal.find_peaks(-values, prominence=prominence * top)
    if len(minima) == 0:
        return False
    span = frequencies[-1] - frequencies[0]
    return bool(np.any(np.abs(frequencies[minima] - center) < 0.25 * span))


def infer_spin_frequency(peaks: SpectrumPeaks, omega_c: float) -> float:
    """
    omega_s = omega_plus + omega_minus - omega_c, independent of J and g_s.
    """
    if len(peaks) != 2:
        raise PeakCountError(f"Frequency-sum inversion needs two peaks, found {len(peaks)}",
                             count=len(peaks))
    return peaks.peaks[0].frequency + peaks.peaks[1].frequency - omega_c


def oscillation_frequency(times, values, prominence: float = 0.05) -> float:
    """
    Mean angular frequency of a sampled oscillation, from the spacing of
    its local maxima.
    """
    t = np.asarray(times, dtype=float)
    y = np.asarray(values, dtype=float)
    if t.shape != y.shape or t.size < 5:
        raise InvalidParameterError("Need matching time and value arrays with at least 5 samples.")
    scale = float(np.max(y) - np.min(y))
    if scale <= 0:
        raise PeakCountError("Signal is constant, no oscillation", count=0)
    indices, _ = signal.find_peaks(y, prominence=prominence * scale)
    if len(indices) < 2:
        raise PeakCountError(f"Need two maxima for a frequency, found {len(indices)}",
                             count=len(indices))
    maxima = [_parabola_vertex(t, y, int(index))[0] for index in indices]
    period = (maxima[-1] - maxima[0]) / (len(maxima) - 1)
    return 2.0 * np.pi / period


def modulation_depth(values) -> float:
    """
    Largest drop from a local maximum to the next local minimum, relative
    to the largest magnitude of the signal.
    """
    y = np.asarray(values, dtype=float)
    top = float(np.max(np.abs(y)))
    if top == 0:
        return 0.0
    maxima, _ = signal.find_peaks(y)
    minima, _ = signal.find_peaks(-y)
    if len(maxima) == 0 or len(minima) == 0:
        return 0.0
    depth = 0.0
    for index in maxima:
        lower = minima[minima > index]
        if lower.size:
            depth = max(depth, float(y[index] - y[lower[0]]))
    return depth / top
