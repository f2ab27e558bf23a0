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

stmldark.density package: transition densities on analytic and gridded forms.
"""


# Imports
from .grid import DensityError, DensityConfigError, GridSpec, ScalarGrid3D, embed_grid
from .gaussian import (
    GaussianDensityParams,
    eval_gaussian_density,
    gaussian_plane_density,
    gaussian_potential,
    gaussian_potential_zero_crossing,
    gaussian_zero_crossing,
    gaussian_zero_crossing_closed_form,
)
from .transition import (
    DEFAULT_NEUTRALITY_TOL,
    NeutralityError,
    TransitionDensity,
    TransitionDipole,
    is_neutral,
    molecular_plane_index,
    neutrality_bound,
    rasterize,
    total_charge,
    transition_dipole,
)
from .cube import CubeParseError, load_cube, read_cube_grid, read_cube_spec, write_cube
from .spectral import SpectralField, check_transform_dims, fourier_transform, inverse_fourier, reflect

# ALL
__all__ = [
    # Grid
    "DensityError",
    "DensityConfigError",
    "GridSpec",
    "ScalarGrid3D",
    "embed_grid",
    # Gaussian
    "GaussianDensityParams",
    "eval_gaussian_density",
    "gaussian_plane_density",
    "gaussian_potential",
    "gaussian_potential_zero_crossing",
    "gaussian_zero_crossing",
    "gaussian_zero_crossing_closed_form",
    # Transition
    "DEFAULT_NEUTRALITY_TOL",
    "NeutralityError",
    "TransitionDensity",
    "TransitionDipole",
    "is_neutral",
    "molecular_plane_index",
    "neutrality_bound",
    "rasterize",
    "total_charge",
    "transition_dipole",
    # Cube
    "CubeParseError",
    "load_cube",
    "read_cube_grid",
    "read_cube_spec",
    "write_cube",
    # Spectral
    "SpectralField",
    "check_transform_dims",
    "fourier_transform",
    "inverse_fourier",
    "reflect",
]
