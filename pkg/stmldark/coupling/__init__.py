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

stmldark.coupling package: Coulomb coupling of transition and pair densities.
"""


# Imports
from .kernel import (
    KERNELS,
    CouplingError,
    CouplingConfigError,
    cell_self_integral,
    green_function,
    kernel_spectrum,
    padded_dims,
    potential_multiplier,
    self_cell_value,
)
from .coulomb import coulomb_potential
from .matrix_element import (
    DEFAULT_DIRECT_MAX_PAIRS,
    DirectSizeError,
    MatrixElement,
    matrix_element,
    matrix_element_direct,
)

# ALL
__all__ = [
    # Kernel
    "KERNELS",
    "CouplingError",
    "CouplingConfigError",
    "cell_self_integral",
    "green_function",
    "kernel_spectrum",
    "padded_dims",
    "potential_multiplier",
    "self_cell_value",
    # Potential
    "coulomb_potential",
    # Matrix element
    "DEFAULT_DIRECT_MAX_PAIRS",
    "DirectSizeError",
    "MatrixElement",
    "matrix_element",
    "matrix_element_direct",
]
