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

Coulomb kernels on zero-padded grids.

Two kernels are available:

* ``isolated``: the sampled 1/|r| Green's function on a grid padded to at
  least twice the source extent per axis, indexed by minimum image so that
  the cyclic convolution equals the open-boundary double sum. The self-cell
  value is the potential at the centre of a uniformly charged cell.
* ``periodic``: the continuum 4 pi / k^2 with the k = 0 term set to 0.
"""


# Imports
import math
from functools import lru_cache
from typing import Tuple

import numpy as np
import scipy.fft

from stmldark.density.grid import GridSpec
from stmldark.errors import StmlDarkError
from stmldark.utils.numerics import next_transform_size


KERNELS = ("isolated", "periodic")


class CouplingError(StmlDarkError):
    """Base error of the coupling package."""
# end class CouplingError


class CouplingConfigError(CouplingError):
    """Raised on unknown kernels or incommensurate grids."""
# end class CouplingConfigError


def check_kernel(kind: str) -> str:
    if kind not in KERNELS:
        raise CouplingConfigError(f"Unknown Coulomb kernel '{kind}', expected one of {KERNELS}")
    # end if
    return kind
# end def check_kernel


def _box_corner_integral(a: float, b: float, c: float) -> float:
    """Integral of 1/r over the box [0,a] x [0,b] x [0,c]."""
    r = math.sqrt(a * a + b * b + c * c)
    return (
        b * c * math.asinh(a / math.hypot(b, c))
        + a * c * math.asinh(b / math.hypot(a, c))
        + a * b * math.asinh(c / math.hypot(a, b))
        - 0.5 * a * a * math.atan(b * c / (a * r))
        - 0.5 * b * b * math.atan(a * c / (b * r))
        - 0.5 * c * c * math.atan(a * b / (c * r))
    )
# end def _box_corner_integral


def cell_self_integral(spacing: Tuple[float, float, float]) -> float:
    """Integral of 1/r over a cell centred on the origin (2.38008 for a unit cube)."""
    hx, hy, hz = spacing
    return 8.0 * _box_corner_integral(0.5 * hx, 0.5 * hy, 0.5 * hz)
# end def cell_self_integral


def self_cell_value(spacing: Tuple[float, float, float]) -> float:
    """Kernel value G(0) replacing 1/0 in the node sums (Bohr^-1)."""
    hx, hy, hz = spacing
    return cell_self_integral(spacing) / (hx * hy * hz)
# end def self_cell_value


def padded_dims(dims: Tuple[int, int, int]) -> Tuple[int, int, int]:
    """Transform lengths of at least twice each axis."""
    return tuple(next_transform_size(2 * n) for n in dims)
# end def padded_dims


def green_function(spec: GridSpec) -> np.ndarray:
    """Minimum-image 1/|r| on the padded grid of ``spec`` (Bohr^-1)."""
    axes = []
    for n, h in zip(padded_dims(spec.dims), spec.spacing):
        index = np.arange(n)
        axes.append(np.minimum(index, n - index) * h)
    # end for
    x, y, z = np.ix_(*axes)
    distance = np.sqrt(x * x + y * y + z * z)
    distance[0, 0, 0] = 1.0
    green = 1.0 / distance
    green[0, 0, 0] = self_cell_value(spec.spacing)
    return green
# end def green_function


def _squared_wavenumbers(spec: GridSpec, real: bool) -> np.ndarray:
    dims = padded_dims(spec.dims)
    axes = [2.0 * math.pi * scipy.fft.fftfreq(n, d=h) for n, h in zip(dims, spec.spacing)]
    if real:
        axes[2] = 2.0 * math.pi * scipy.fft.rfftfreq(dims[2], d=spec.spacing[2])
    # end if
    kx, ky, kz = np.ix_(*axes)
    return kx * kx + ky * ky + kz * kz
# end def _squared_wavenumbers


def _inverse_square(k2: np.ndarray) -> np.ndarray:
    kernel = np.zeros_like(k2)
    nonzero = k2 > 0.0
    kernel[nonzero] = 4.0 * math.pi / k2[nonzero]
    return kernel
# end def _inverse_square


@lru_cache(maxsize=16)
def potential_multiplier(spec: GridSpec, kind: str = "isolated") -> np.ndarray:
    """Half-spectrum multiplier W with phi = irfftn(rfftn(rho) W) on the padded grid.

    Returns:
        np.ndarray: Read-only array of shape ``rfftn`` of the padded grid.
    """
    check_kernel(kind)
    if kind == "isolated":
        multiplier = scipy.fft.rfftn(green_function(spec)).real * spec.cell_volume
    else:
        multiplier = _inverse_square(_squared_wavenumbers(spec, real=True))
    # end if
    multiplier.setflags(write=False)
    return multiplier
# end def potential_multiplier


@lru_cache(maxsize=16)
def kernel_spectrum(spec: GridSpec, kind: str = "isolated") -> np.ndarray:
    """Continuum-normalised kernel K(q) on the full padded reciprocal grid.

    For the isolated kernel K = dV * sum_r G(r) e^{i q.r}, which tends to
    4 pi / q^2 and keeps a finite value at q = 0.
    """
    check_kernel(kind)
    if kind == "isolated":
        spectrum = scipy.fft.fftn(green_function(spec)).real * spec.cell_volume
    else:
        spectrum = _inverse_square(_squared_wavenumbers(spec, real=False))
    # end if
    spectrum.setflags(write=False)
    return spectrum
# end def kernel_spectrum
