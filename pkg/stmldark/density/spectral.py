"""
███████╗████████╗███╗   ███╗██╗     ██████╗  █████╗ ██████╗ ██╗  ██╗
██╔════╝╚══██╔══╝████╗ ████║██║     ██╔══██╗██╔══██╗██╔══██╗██║ ██╔╝
███████╗   ██║   ██╔████╔██║██║     ██║  ██║███████║██████╔╝█████╔╝
╚════██║   ██║   ██║╚██╔╝██║██║     ██║  ██║██╔══██║██╔══██╗██╔═██╗
███████║   ██║   ██║ ╚═╝ ██║███████╗██████╔╝██║  ██║██║  ██║██║  ██╗
╚══════╝   ╚═╝   ╚═╝     ╚═╝╚══════╝╚═════╝ ╚═╝  ╚═╝╚═╝  ╚═╝╚═╝  ╚═╝

STMLDark - STM-induced excitation of molecular dark states.
Licensed under the GNU General Public License v3.0

This program is free software: you can redistribute it and/or modify
it under the terms of the GNU General Public License as published by
the Free Software Foundation, either version 3 of the License, or
(at your option) any later version.

This program is distributed in the hope that it will be useful,
but WITHOUT ANY WARRANTY; without even the implied warranty of
MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the
GNU General Public License for more details.

For a copy of the GNU GPLv3, see <https://www.gnu.org/licenses/>.

Discrete Fourier transforms of gridded fields.

Convention: F(q) = (2 pi)^{-3/2} integral of rho(r) e^{i q.r} d^3r, approximated by
F[m] = dV (2 pi)^{-3/2} sum_n rho[n] e^{+2 pi i m.n / M} with node 0 of the
grid as the phase reference.
"""


# Imports
import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np
import scipy.fft

from stmldark.utils.numerics import is_transform_size
from stmldark.utils.units import BOHR_NM
from .grid import DensityConfigError, GridSpec, ScalarGrid3D


def _prefactor(spec: GridSpec) -> float:
    return spec.cell_volume / (2.0 * math.pi) ** 1.5
# end def _prefactor


def check_transform_dims(spec: GridSpec) -> None:
    """Reject grids whose axis lengths are not 2,3,5,7-smooth.

    Raises:
        DensityConfigError: With the offending dims.
    """
    bad = [n for n in spec.dims if not is_transform_size(n)]
    if bad:
        raise DensityConfigError(
            f"Grid dims {spec.dims} are not products of 2, 3, 5 and 7; "
            f"pad with GridSpec.padded_to_transform() first"
        )
    # end if
# end def check_transform_dims


def reflect(array: np.ndarray) -> np.ndarray:
    """Return ``a[-m mod M]`` along every axis."""
    out = array
    for axis in range(array.ndim):
        out = np.roll(np.flip(out, axis), 1, axis)
    # end for
    return out
# end def reflect


@dataclass(frozen=True, eq=False)
class SpectralField:
    """Fourier amplitudes of a gridded field.

    Attributes:
        spec: Geometry of the source grid.
        amplitudes: Complex array in FFT ordering, shape ``spec.dims``.
        label: Label of the source grid.
    """

    spec: GridSpec
    amplitudes: np.ndarray
    label: str = ""

    # region PROPERTIES

    @property
    def dq(self) -> Tuple[float, float, float]:
        """Wavevector spacing per axis (Bohr^-1)."""
        return tuple(2.0 * math.pi / (n * h) for n, h in zip(self.spec.dims, self.spec.spacing))
    # end def dq

    @property
    def dq_nm(self) -> Tuple[float, float, float]:
        """Wavevector spacing per axis (nm^-1)."""
        return tuple(q / BOHR_NM for q in self.dq)
    # end def dq_nm

    @property
    def dvq(self) -> float:
        """Reciprocal cell volume (Bohr^-3)."""
        return (2.0 * math.pi) ** 3 / (self.spec.size * self.spec.cell_volume)
    # end def dvq

    # endregion PROPERTIES

    def wavevectors(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Broadcastable wavevector components (Bohr^-1) in FFT ordering."""
        axes = [
            2.0 * math.pi * scipy.fft.fftfreq(n, d=h)
            for n, h in zip(self.spec.dims, self.spec.spacing)
        ]
        return np.ix_(*axes)
    # end def wavevectors

    def reflected(self) -> np.ndarray:
        """Amplitudes at -q."""
        return reflect(self.amplitudes)
    # end def reflected

    def conjugate_symmetry_error(self) -> float:
        """max |F(-q) - F(q)*|, zero up to round-off for real sources."""
        return float(np.max(np.abs(self.reflected() - np.conj(self.amplitudes))))
    # end def conjugate_symmetry_error

    def norm_squared(self) -> float:
        """sum |F|^2 dVq, equal to sum |rho|^2 dV (Parseval)."""
        return float(np.sum(np.abs(self.amplitudes) ** 2)) * self.dvq
    # end def norm_squared

# end class SpectralField


def fourier_transform(grid: ScalarGrid3D, workers: int = 1) -> SpectralField:
    """Transform a real grid to the continuum-normalised spectrum.

    Raises:
        DensityConfigError: If the dims are outside the size policy.
    """
    check_transform_dims(grid.spec)
    scale = _prefactor(grid.spec) * grid.spec.size
    amplitudes = scipy.fft.ifftn(grid.values, workers=workers) * scale
    return SpectralField(spec=grid.spec, amplitudes=amplitudes, label=grid.label)
# end def fourier_transform


def inverse_fourier(field: SpectralField, workers: int = 1) -> ScalarGrid3D:
    """Back-transform; the imaginary residue of a real source is dropped."""
    check_transform_dims(field.spec)
    scale = _prefactor(field.spec) * field.spec.size
    values = scipy.fft.fftn(field.amplitudes, workers=workers) / scale
    return ScalarGrid3D(spec=field.spec, values=values.real, label=field.label)
# end def inverse_fourier
