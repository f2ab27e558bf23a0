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

Transition channels prepared for repeated current evaluation.

A prepared channel holds the potential of its transition density on the
simulation grid. By the exchange symmetry of the Coulomb kernel, every matrix
element is then a single weighted sum of that potential against a pair
density.
"""


# Imports
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from stmldark.coupling import coulomb_potential
from stmldark.coupling.kernel import CouplingConfigError, check_kernel
from stmldark.density import DEFAULT_NEUTRALITY_TOL, GridSpec, TransitionDensity, rasterize
from stmldark.electrodes import ElectrodeModel, PairGeometry, decay_constant_bohr, substrate_amplitude, tip_amplitude
from stmldark.errors import StmlDarkError
from stmldark.utils.numerics import is_transform_size
from stmldark.utils.units import BOHR_NM


class CurrentError(StmlDarkError):
    """Base error of the current package."""
# end class CurrentError


class CurrentConfigError(CurrentError):
    """Raised on invalid quadrature, polarity or channel lists."""
# end class CurrentConfigError


@dataclass(frozen=True, eq=False)
class TransitionChannel:
    """One inelastic channel: a transition density and its gap E_eg."""

    transition: TransitionDensity

    # region PROPERTIES

    @property
    def label(self) -> str:
        return self.transition.label
    # end def label

    @property
    def energy_gap_ev(self) -> float:
        return self.transition.energy_gap_ev
    # end def energy_gap_ev

    # endregion PROPERTIES

# end class TransitionChannel


@dataclass(frozen=True)
class GridSettings:
    """Simulation grid parameters (``[grid]`` table)."""

    spacing_nm: float = 0.1
    lateral_half_extent_nm: float = 6.0
    lateral_margin_nm: float = 3.0

    def __post_init__(self):
        for name in ("spacing_nm", "lateral_half_extent_nm", "lateral_margin_nm"):
            value = float(getattr(self, name))
            if not math.isfinite(value) or value < 0.0 or (name == "spacing_nm" and value == 0.0):
                raise CurrentConfigError(f"'{name}' must be a positive length, got {value}")
            # end if
            object.__setattr__(self, name, value)
        # end for
    # end def __post_init__

# end class GridSettings


def plan_simulation_grid(
        model: ElectrodeModel,
        transitions: Sequence[TransitionDensity],
        settings: GridSettings = GridSettings(),
) -> GridSpec:
    """Grid shared by all channels and pair densities.

    Analytic channels only: a cubic lattice with a node plane at z = 0,
    symmetric about x = y = 0 with at least
    +/- ``lateral_half_extent_nm`` laterally (an odd accepted transform
    length, so padding keeps the symmetry), and z from the lattice plane at
    or below the substrate surface to the last plane at or below the apex.

    With cube channels: the lattice of the first cube, extended by
    ``lateral_margin_nm`` on each lateral side and in z to cover the gap.

    The result is padded to accepted transform lengths.
    """
    eps = 1e-9
    cubes = [t.grid for t in transitions if t.grid is not None]
    if not cubes:
        h = settings.spacing_nm
        n_lat = math.ceil(settings.lateral_half_extent_nm / h - eps)
        while not is_transform_size(2 * n_lat + 1):
            n_lat += 1
        # end while
        k_lo = -math.ceil(-model.substrate_z_nm / h - eps)
        k_hi = math.floor(model.tip_height_nm / h + eps)
        spec = GridSpec.lattice(
            start=(-n_lat, -n_lat, k_lo),
            dims=(2 * n_lat + 1, 2 * n_lat + 1, k_hi - k_lo + 1),
            spacing_nm=h,
        )
        return spec.padded_to_transform()
    # end if

    ref = cubes[0].spec
    hx, hy, hz = ref.spacing
    margin = settings.lateral_margin_nm / BOHR_NM
    mx, my = math.ceil(margin / hx - eps), math.ceil(margin / hy - eps)
    surface = model.substrate_z_nm / BOHR_NM
    apex = model.tip_height_nm / BOHR_NM
    k_lo = min(0, math.floor((surface - ref.origin[2]) / hz + eps))
    k_hi = max(ref.dims[2] - 1, math.floor((apex - ref.origin[2]) / hz + eps))
    spec = GridSpec(
        origin=(ref.origin[0] - mx * hx, ref.origin[1] - my * hy, ref.origin[2] + k_lo * hz),
        spacing=ref.spacing,
        dims=(ref.dims[0] + 2 * mx, ref.dims[1] + 2 * my, k_hi - k_lo + 1),
    )
    return spec.padded_to_transform()
# end def plan_simulation_grid


@dataclass(frozen=True, eq=False)
class PreparedChannel:
    """Channel with the potential of its transition density cached.

    Attributes:
        channel: Source channel.
        spec: Simulation grid.
        potential: phi_T on ``spec`` (Hartree per unit charge), read-only.
        kernel: Coulomb kernel used.
    """

    channel: TransitionChannel
    spec: GridSpec
    potential: np.ndarray
    kernel: str = "isolated"

    # region PROPERTIES

    @property
    def label(self) -> str:
        return self.channel.label
    # end def label

    @property
    def energy_gap_ev(self) -> float:
        return self.channel.energy_gap_ev
    # end def energy_gap_ev

    # endregion PROPERTIES

    def matrix_elements(
            self,
            geometry: PairGeometry,
            substrate_energies_ev: Sequence[float],
            tip_energies_ev: Sequence[float],
    ) -> np.ndarray:
        """N (Hartree) for each (E_n, xi_k) pair at the tip position of ``geometry``."""
        if not geometry.spec.same_geometry(self.spec):
            raise CouplingConfigError(f"Pair geometry grid does not match channel '{self.label}'")
        # end if
        slab = geometry.slab
        potential = self.potential[:, :, slab]
        distance = geometry.tip_distance[:, :, slab]
        height = geometry.height[:, :, slab]
        values = []
        for substrate_ev, tip_ev in zip(substrate_energies_ev, tip_energies_ev):
            tip = tip_amplitude(decay_constant_bohr(tip_ev), geometry.tip_radius, distance)
            substrate = substrate_amplitude(decay_constant_bohr(substrate_ev), height)
            values.append(float(np.sum(potential * tip * substrate)) * self.spec.cell_volume)
        # end for
        return np.asarray(values)
    # end def matrix_elements

# end class PreparedChannel


def prepare_channel(
        channel: TransitionChannel,
        spec: GridSpec,
        *,
        kernel: str = "isolated",
        neutrality_tol: Optional[float] = DEFAULT_NEUTRALITY_TOL,
        workers: int = 1,
) -> PreparedChannel:
    """Rasterize a channel on ``spec`` and cache its potential.

    Raises:
        CouplingConfigError: If the rasterized grid differs from ``spec``.
    """
    check_kernel(kernel)
    grid = rasterize(channel.transition, spec)
    if not grid.spec.same_geometry(spec):
        raise CouplingConfigError(
            f"Channel '{channel.label}' rasterizes to {grid.dims}, expected {spec.dims}; "
            f"use a grid with accepted transform lengths"
        )
    # end if
    potential = coulomb_potential(grid, kernel=kernel, neutrality_tol=neutrality_tol, workers=workers).values
    return PreparedChannel(channel=channel, spec=spec, potential=potential, kernel=kernel)
# end def prepare_channel


def prepare_channels(
        channels: Sequence[TransitionChannel],
        model: ElectrodeModel,
        settings: GridSettings = GridSettings(),
        *,
        kernel: str = "isolated",
        neutrality_tol: Optional[float] = DEFAULT_NEUTRALITY_TOL,
        workers: int = 1,
) -> list:
    """Plan a common grid and prepare every channel on it."""
    if not channels:
        raise CurrentConfigError("At least one transition channel is required")
    # end if
    spec = plan_simulation_grid(model, [c.transition for c in channels], settings)
    return [
        prepare_channel(c, spec, kernel=kernel, neutrality_tol=neutrality_tol, workers=workers)
        for c in channels
    ]
# end def prepare_channels
