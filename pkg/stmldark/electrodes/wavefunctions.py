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

Model electrode states and their pair densities.

Tip: s-wave state decaying from a sphere, e^{-kappa (s - R)} R / s.
Substrate: laterally uniform evanescent state, e^{-kappa (z - z_s)}.
Both equal 1 on their electrode surface and are clamped to 1 inside it.
"""


# Imports
import math
from dataclasses import dataclass
from typing import Iterable, Tuple

import numpy as np

from stmldark.density.grid import GridSpec, ScalarGrid3D
from stmldark.utils.logger import Logger
from stmldark.utils.units import BOHR_NM, ev_to_hartree
from .model import ElectrodeModel, ElectrodeModelError


# Relative slack under which a point counts as on the tip sphere
_SURFACE_SLACK = 1e-12


def decay_constant_bohr(energy_ev: float) -> float:
    """Vacuum decay constant sqrt(2|E|) in Bohr^-1 (atomic units)."""
    if not math.isfinite(energy_ev) or energy_ev >= 0.0:
        raise ElectrodeModelError(f"Decay constant needs a bound state energy (< 0 eV), got {energy_ev}")
    # end if
    return math.sqrt(2.0 * ev_to_hartree(-energy_ev))
# end def decay_constant_bohr


def decay_constant(energy_ev: float) -> float:
    """Vacuum decay constant kappa = sqrt(2 m |E|) / hbar.

    Args:
        energy_ev: State energy relative to vacuum (eV, < 0).

    Returns:
        float: kappa in nm^-1 (11.04 nm^-1 at -4.64 eV).

    Raises:
        ElectrodeModelError: If the energy is not negative.
    """
    return decay_constant_bohr(energy_ev) / BOHR_NM
# end def decay_constant


def _point3(point: Iterable[float]) -> Tuple[float, float, float]:
    coords = tuple(float(c) for c in point)
    if len(coords) != 3 or not all(math.isfinite(c) for c in coords):
        raise ElectrodeModelError(f"Point must be a finite 3-vector, got {coords}")
    # end if
    return coords
# end def _point3


def tip_amplitude(kappa: float, radius: float, distance: np.ndarray) -> np.ndarray:
    """Vectorised tip factor; ``kappa``, ``radius`` and ``distance`` in one length unit."""
    distance = np.asarray(distance, dtype=np.float64)
    outside = distance > radius * (1.0 + _SURFACE_SLACK)
    safe = np.where(outside, distance, radius)
    return np.where(outside, np.exp(-kappa * (safe - radius)) * radius / safe, 1.0)
# end def tip_amplitude


def substrate_amplitude(kappa: float, height: np.ndarray) -> np.ndarray:
    """Vectorised substrate factor at ``height`` above the surface."""
    height = np.asarray(height, dtype=np.float64)
    return np.exp(-kappa * np.maximum(height, 0.0))
# end def substrate_amplitude


def tip_wavefunction(
        model: ElectrodeModel,
        state_energy_ev: float,
        tip_lateral_nm: Tuple[float, float],
        point_nm: Iterable[float],
) -> float:
    """Tip state amplitude at a point (nm), 1 on the sphere surface.

    Points inside the sphere evaluate to the surface value and raise a
    ``tip-clamp`` diagnostic.
    """
    x, y, z = _point3(point_nm)
    xa, ya = tip_lateral_nm
    radius = model.tip_radius_nm
    distance = math.sqrt((x - xa) ** 2 + (y - ya) ** 2 + (z - model.tip_height_nm - radius) ** 2)
    if distance < radius * (1.0 - _SURFACE_SLACK):
        Logger.get().diagnostic("tip-clamp", "point inside the tip sphere", point_nm=(x, y, z))
    # end if
    return float(tip_amplitude(decay_constant(state_energy_ev), radius, distance))
# end def tip_wavefunction


def substrate_wavefunction(model: ElectrodeModel, state_energy_ev: float, point_nm: Iterable[float]) -> float:
    """Substrate state amplitude at a point (nm), 1 at the surface.

    Points below the surface evaluate to 1 and raise a ``substrate-clamp``
    diagnostic.
    """
    _, _, z = _point3(point_nm)
    height = z - model.substrate_z_nm
    if height < 0.0:
        Logger.get().diagnostic("substrate-clamp", "point below the substrate surface", z_nm=z)
    # end if
    return float(substrate_amplitude(decay_constant(state_energy_ev), height))
# end def substrate_wavefunction


@dataclass(frozen=True, eq=False)
class PairGeometry:
    """Energy-independent part of the pair density for one tip position.

    All lengths in Bohr. ``gap`` selects the nodes of the slab between the
    substrate surface and the apex plane; other nodes carry no pair density.
    """

    spec: GridSpec
    tip_lateral_nm: Tuple[float, float]
    tip_distance: np.ndarray
    tip_radius: float
    height: np.ndarray
    gap: np.ndarray

    @classmethod
    def build(cls, model: ElectrodeModel, spec: GridSpec, tip_lateral_nm: Tuple[float, float]) -> "PairGeometry":
        x, y, z = spec.mesh()
        xa, ya = (float(c) / BOHR_NM for c in tip_lateral_nm)
        radius = model.tip_radius_nm / BOHR_NM
        apex = model.tip_height_nm / BOHR_NM
        surface = model.substrate_z_nm / BOHR_NM
        slack = 1e-9 * spec.spacing[2]
        distance = np.sqrt((x - xa) ** 2 + (y - ya) ** 2 + (z - apex - radius) ** 2)
        gap = (z >= surface - slack) & (z <= apex + slack)
        return cls(
            spec=spec,
            tip_lateral_nm=(float(tip_lateral_nm[0]), float(tip_lateral_nm[1])),
            tip_distance=distance,
            tip_radius=radius,
            height=z - surface,
            gap=np.broadcast_to(gap, spec.dims),
        )
    # end def build

    @property
    def slab(self) -> slice:
        """z index range of the gap slab (possibly empty)."""
        planes = np.flatnonzero(self.gap[0, 0, :])
        if planes.size == 0:
            return slice(0, 0)
        # end if
        return slice(int(planes[0]), int(planes[-1]) + 1)
    # end def slab

    def values(self, substrate_energy_ev: float, tip_energy_ev: float) -> np.ndarray:
        """phi_k * phi_n on the grid nodes."""
        tip = tip_amplitude(decay_constant_bohr(tip_energy_ev), self.tip_radius, self.tip_distance)
        substrate = substrate_amplitude(decay_constant_bohr(substrate_energy_ev), self.height)
        return np.where(self.gap, tip * substrate, 0.0)
    # end def values

# end class PairGeometry


@dataclass(frozen=True, eq=False)
class PairDensity:
    """Product of one tip and one substrate state on a grid."""

    grid: ScalarGrid3D
    substrate_energy_ev: float
    tip_energy_ev: float
    tip_lateral_nm: Tuple[float, float]

# end class PairDensity


def pair_density(
        model: ElectrodeModel,
        substrate_energy_ev: float,
        tip_energy_ev: float,
        tip_lateral_nm: Tuple[float, float],
        spec: GridSpec,
) -> PairDensity:
    """Sample phi_k(r) phi_n(r) for one (E_n, xi_k) pair.

    Args:
        model: Electrode model.
        substrate_energy_ev: E_n relative to vacuum.
        tip_energy_ev: xi_k relative to vacuum.
        tip_lateral_nm: Tip position (x_A, y_A).
        spec: Grid geometry.

    Returns:
        PairDensity: Zero outside the slab z_s <= z <= d.

    Raises:
        ElectrodeModelError: If an energy is not below vacuum.
    """
    geometry = PairGeometry.build(model, spec, tip_lateral_nm)
    values = geometry.values(substrate_energy_ev, tip_energy_ev)
    grid = ScalarGrid3D(
        spec=spec,
        values=values,
        label=f"pair(E_n={substrate_energy_ev:.4g},xi_k={tip_energy_ev:.4g})",
    )
    return PairDensity(
        grid=grid,
        substrate_energy_ev=float(substrate_energy_ev),
        tip_energy_ev=float(tip_energy_ev),
        tip_lateral_nm=geometry.tip_lateral_nm,
    )
# end def pair_density
