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

Electrostatic potential of a gridded charge density.
"""


# Imports
from typing import Optional

import numpy as np
import scipy.fft

from stmldark.density.grid import ScalarGrid3D
from stmldark.density.transition import DEFAULT_NEUTRALITY_TOL, is_neutral
from stmldark.utils.logger import Logger
from .kernel import check_kernel, padded_dims, potential_multiplier


def coulomb_potential(
        source: ScalarGrid3D,
        *,
        kernel: str = "isolated",
        neutrality_tol: Optional[float] = DEFAULT_NEUTRALITY_TOL,
        workers: int = 1,
) -> ScalarGrid3D:
    """Potential phi(r) = int rho(r') / |r - r'| d^3r' on the grid of ``source``.

    The source is zero padded to at least twice its extent per axis, so no
    periodic image contributes with the isolated kernel.

    Args:
        source: Charge per Bohr^3.
        kernel: ``"isolated"`` or ``"periodic"``.
        neutrality_tol: Relative tolerance of the neutrality check; None
            disables it.
        workers: Threads given to ``scipy.fft``.

    Returns:
        ScalarGrid3D: Potential in Hartree per unit charge, same geometry.
    """
    check_kernel(kernel)
    if neutrality_tol is not None and not is_neutral(source, neutrality_tol):
        Logger.get().diagnostic(
            "neutrality",
            f"source '{source.label}' is not charge neutral; the q = 0 handling biases the potential",
            charge_e=f"{source.integral():.6g}",
            kernel=kernel,
        )
    # end if
    shape = padded_dims(source.dims)
    spectrum = scipy.fft.rfftn(source.values, s=shape, workers=workers)
    spectrum *= potential_multiplier(source.spec, kernel)
    potential = scipy.fft.irfftn(spectrum, s=shape, workers=workers)
    nx, ny, nz = source.dims
    return source.with_values(np.ascontiguousarray(potential[:nx, :ny, :nz]), label=f"phi[{source.label}]")
# end def coulomb_potential
