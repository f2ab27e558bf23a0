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

Transition densities: analytic or gridded fields with an energy gap.

Gridded values are charge per Bohr^3, so a grid sum times the cell volume is
a charge (e) and a first moment is a dipole in e*Bohr (atomic units).
"""


# Imports
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from stmldark.utils.logger import Logger
from stmldark.utils.units import BOHR_NM, ev_to_hartree
from .gaussian import GaussianDensityParams, gaussian_plane_density
from .grid import DensityConfigError, DensityError, GridSpec, ScalarGrid3D, embed_grid


# Relative neutrality tolerance: |Q| <= tol * max|rho| * dV * point count
DEFAULT_NEUTRALITY_TOL = 1e-6


class NeutralityError(DensityError):
    """Raised when a gridded transition density carries a net charge."""

    def __init__(self, label: str, charge: float, bound: float):
        super().__init__(
            f"Transition density '{label}' has total charge {charge:.6g} e, "
            f"above the neutrality bound {bound:.3g} e"
        )
        self.label = label
        self.charge = charge
        self.bound = bound
    # end def __init__

# end class NeutralityError


def neutrality_bound(grid: ScalarGrid3D, tol: float = DEFAULT_NEUTRALITY_TOL) -> float:
    """Largest admissible |total charge| of ``grid`` for a relative tolerance."""
    if grid.values.size == 0:
        return 0.0
    # end if
    return tol * float(np.max(np.abs(grid.values))) * grid.spec.cell_volume * grid.spec.size
# end def neutrality_bound


def is_neutral(grid: ScalarGrid3D, tol: float = DEFAULT_NEUTRALITY_TOL) -> bool:
    return abs(grid.integral()) <= neutrality_bound(grid, tol)
# end def is_neutral


@dataclass(frozen=True, eq=False)
class TransitionDensity:
    """Transition density of one molecular transition.

    Exactly one of ``gaussian`` and ``grid`` is set. Use the
    :meth:`analytic` and :meth:`gridded` constructors.

    Attributes:
        energy_gap_ev: Excitation energy E_eg (eV, > 0).
        label: Name used in reports and diagnostics.
        gaussian: Analytic planar parameters.
        grid: Sampled field (charge per Bohr^3).
        amplitude: Scalar prefactor applied to the analytic form.
    """

    energy_gap_ev: float
    label: str = ""
    gaussian: Optional[GaussianDensityParams] = None
    grid: Optional[ScalarGrid3D] = None
    amplitude: float = 1.0

    def __post_init__(self):
        gap = float(self.energy_gap_ev)
        if not math.isfinite(gap) or gap <= 0.0:
            raise DensityConfigError(f"Energy gap of '{self.label}' must be > 0 eV, got {gap}")
        # end if
        object.__setattr__(self, "energy_gap_ev", gap)
        if (self.gaussian is None) == (self.grid is None):
            raise DensityConfigError(f"Transition '{self.label}' needs exactly one of an analytic form or a grid")
        # end if
        if not math.isfinite(float(self.amplitude)):
            raise DensityConfigError(f"Amplitude of '{self.label}' must be finite")
        # end if
    # end def __post_init__

    @classmethod
    def analytic(cls, params: GaussianDensityParams, energy_gap_ev: float, label: str = "gaussian") -> "TransitionDensity":
        return cls(energy_gap_ev=energy_gap_ev, label=label, gaussian=params)
    # end def analytic

    @classmethod
    def gridded(
            cls,
            grid: ScalarGrid3D,
            energy_gap_ev: float,
            label: Optional[str] = None,
            *,
            neutrality_tol: Optional[float] = DEFAULT_NEUTRALITY_TOL,
    ) -> "TransitionDensity":
        """Wrap a grid, checking charge neutrality.

        Args:
            grid: Sampled density.
            energy_gap_ev: Excitation energy (eV).
            label: Defaults to the grid label.
            neutrality_tol: Relative tolerance; None skips the check
                (test charges, normalised blobs).

        Raises:
            NeutralityError: If the net charge exceeds the tolerance.
        """
        name = label if label is not None else (grid.label or "grid")
        if neutrality_tol is not None and not is_neutral(grid, neutrality_tol):
            raise NeutralityError(name, grid.integral(), neutrality_bound(grid, neutrality_tol))
        # end if
        return cls(energy_gap_ev=energy_gap_ev, label=name, grid=grid)
    # end def gridded

    # region PROPERTIES

    @property
    def form(self) -> str:
        """``"analytic-gaussian"`` or ``"gridded"``."""
        return "analytic-gaussian" if self.gaussian is not None else "gridded"
    # end def form

    @property
    def energy_gap_hartree(self) -> float:
        return ev_to_hartree(self.energy_gap_ev)
    # end def energy_gap_hartree

    # endregion PROPERTIES

    def scaled(self, factor: float) -> "TransitionDensity":
        """Density multiplied by ``factor``."""
        if self.grid is not None:
            return TransitionDensity(
                energy_gap_ev=self.energy_gap_ev,
                label=self.label,
                grid=self.grid.scaled(factor),
            )
        # end if
        return TransitionDensity(
            energy_gap_ev=self.energy_gap_ev,
            label=self.label,
            gaussian=self.gaussian,
            amplitude=self.amplitude * float(factor),
        )
    # end def scaled

# end class TransitionDensity


def molecular_plane_index(spec: GridSpec) -> int:
    """Index of the node plane nearest to z = 0.

    Raises:
        DensityConfigError: If z = 0 lies more than half a spacing outside
            the grid.
    """
    hz = spec.spacing[2]
    k = int(round(-spec.origin[2] / hz))
    offset = spec.origin[2] + k * hz
    if k < 0 or k >= spec.dims[2] or abs(offset) > 0.5 * hz:
        raise DensityConfigError(
            f"Molecular plane z = 0 is not covered by the grid (z from {spec.origin_nm[2]:.4g} nm, "
            f"{spec.dims[2]} planes of {spec.spacing_nm[2]:.4g} nm)"
        )
    # end if
    if abs(offset) > 1e-9 * hz:
        Logger.get().diagnostic(
            "plane-snap",
            "molecular plane deposited on the nearest grid plane",
            plane_z_nm=f"{offset * BOHR_NM:.4g}",
        )
    # end if
    return k
# end def molecular_plane_index


def rasterize(density: TransitionDensity, spec: GridSpec) -> ScalarGrid3D:
    """Sample a transition density on a grid.

    Axes whose node count is not an accepted transform length are padded
    with zeros first (:meth:`GridSpec.padded_to_transform`), so the result
    may be larger than ``spec``.

    Args:
        density: Analytic or gridded density.
        spec: Target geometry.

    Returns:
        ScalarGrid3D: Charge per Bohr^3. The planar delta of the analytic
        form is deposited on the nearest plane with weight 1/dz.

    Raises:
        DensityConfigError: If the molecular plane is off the grid, or a
            gridded density is not commensurate with ``spec``.
    """
    target = spec.padded_to_transform()
    if density.grid is not None:
        return embed_grid(density.grid, target)
    # end if

    k = molecular_plane_index(target)
    x_nm = target.axis_nm(0)[:, None]
    y_nm = target.axis_nm(1)[None, :]
    plane = gaussian_plane_density(density.gaussian, x_nm, y_nm) * density.amplitude
    values = np.zeros(target.dims)
    # nm^-2 -> Bohr^-2, then spread over one plane of thickness dz
    values[:, :, k] = plane * (BOHR_NM * BOHR_NM) / target.spacing[2]
    return ScalarGrid3D(spec=target, values=values, label=density.label)
# end def rasterize


def total_charge(density: TransitionDensity) -> float:
    """Integral of the density (e).

    The analytic form integrates to zero exactly since both x terms carry
    unit weight.
    """
    if density.grid is not None:
        return density.grid.integral()
    # end if
    return 0.0
# end def total_charge


@dataclass(frozen=True)
class TransitionDipole:
    """First moment of a transition density."""

    au: Tuple[float, float, float]

    @property
    def e_nm(self) -> Tuple[float, float, float]:
        return tuple(c * BOHR_NM for c in self.au)
    # end def e_nm

    @property
    def norm_au(self) -> float:
        return math.sqrt(sum(c * c for c in self.au))
    # end def norm_au

# end class TransitionDipole


def transition_dipole(density: TransitionDensity) -> TransitionDipole:
    """Dipole ``sum r rho dV`` (midpoint rule) or its closed form.

    The analytic density is even in x and y and lies at z = 0, so every
    component vanishes.
    """
    if density.grid is None:
        return TransitionDipole(au=(0.0, 0.0, 0.0))
    # end if
    grid = density.grid
    dv = grid.spec.cell_volume
    moments = []
    for axis in range(3):
        others = tuple(a for a in range(3) if a != axis)
        marginal = np.sum(grid.values, axis=others)
        moments.append(float(np.sum(marginal * grid.spec.axis(axis))) * dv)
    # end for
    return TransitionDipole(au=tuple(moments))
# end def transition_dipole
