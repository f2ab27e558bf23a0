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

Unit conventions for STMLDark.

Internal arithmetic uses atomic units (Hartree, Bohr, e = 1). Interfaces
accept and emit eV, nm and volts through the fixed constants below.
"""


# Imports
from typing import Union

import numpy as np


# Fixed conversion constants
HARTREE_EV = 27.211386
BOHR_NM = 0.052917721


ArrayLike = Union[float, np.ndarray]


def ev_to_hartree(value: ArrayLike) -> ArrayLike:
    """Convert an energy from eV to Hartree."""
    return value / HARTREE_EV
# end def ev_to_hartree


def hartree_to_ev(value: ArrayLike) -> ArrayLike:
    """Convert an energy from Hartree to eV."""
    return value * HARTREE_EV
# end def hartree_to_ev


def nm_to_bohr(value: ArrayLike) -> ArrayLike:
    """Convert a length from nm to Bohr."""
    return value / BOHR_NM
# end def nm_to_bohr


def bohr_to_nm(value: ArrayLike) -> ArrayLike:
    """Convert a length from Bohr to nm."""
    return value * BOHR_NM
# end def bohr_to_nm
