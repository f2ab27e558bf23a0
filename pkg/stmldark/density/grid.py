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

Uniform three dimensional grids.

Geometry is held in Bohr; values are charge (or potential) per grid node
with x as the slowest and z as the fastest varying index, the layout used by
Gaussian cube files.
"""


# Imports
from dataclasses import dataclass, field
from typing import Iterable, Optional, Tuple

import numpy as np

from stmldark.errors import StmlDarkError
from stmldark.utils.numerics import next_transform_size
from stmldark.utils.units import BOHR_NM


Vector3 = Tuple[float, float, float]
Index3 = Tuple[int, int, int]


class DensityError(StmlDarkError):
    """Base error of the density package."""
# end class DensityError


class DensityConfigError(DensityError):
    """Raised when a grid or density is declared inconsistently."""
# end class DensityConfigError


def _as_vector3(values: Iterable[float], name: str) -> Vector3:
    vector = tuple(float(v) for v in values)
    if len(vector) != 3:
        raise DensityConfigError(f"'{name}' needs 3 components, got {len(vector)}")
    # end if
    if not all(np.isfinite(vector)):
        raise DensityConfigError(f"'{name}' must be finite, got {vector}")
    # end if
    return vector
# end def _as_vector3


@dataclass(frozen=True)
class GridSpec:
    """Origin, spacing and node counts of a uniform grid (Bohr).

    Attributes:
        origin: Position of node (0, 0, 0).
        spacing: Step along x, y and z.
        dims: Node count along x, y and z.
    """

    origin: Vector3
    spacing: Vector3
    dims: Index3

    def __post_init__(self):
        object.__setattr__(self, "origin", _as_vector3(self.origin, "origin"))
        object.__setattr__(self, "spacing", _as_vector3(self.spacing, "spacing"))
        dims = tuple(int(n) for n in self.dims)
        if len(dims) != 3:
            raise DensityConfigError(f"'dims' needs 3 components, got {len(dims)}")
        # end if
        if any(h <= 0.0 for h in self.spacing):
            raise DensityConfigError(f"Grid spacing must be strictly positive, got {self.spacing}")
        # end if
        if any(n < 2 for n in dims):
            raise DensityConfigError(f"Grid needs at least 2 nodes per axis, got {dims}")
        # end if
        object.__setattr__(self, "dims", dims)
    # end def __post_init__

    @classmethod
    def from_nm(cls, origin_nm: Iterable[float], spacing_nm: Iterable[float], dims: Iterable[int]) -> "GridSpec":
        """Build a spec from lengths given in nm."""
        origin = tuple(float(v) / BOHR_NM for v in origin_nm)
        spacing = tuple(float(v) / BOHR_NM for v in spacing_nm)
        return cls(origin=origin, spacing=spacing, dims=tuple(dims))
    # end def from_nm

    @classmethod
    def lattice(cls, start: Index3, dims: Index3, spacing_nm: float) -> "GridSpec":
        """Cubic grid whose nodes sit on the lattice ``k * spacing_nm``.

        Args:
            start: Lattice index of node (0, 0, 0) along each axis.
            dims: Node counts.
            spacing_nm: Common step (nm).

        Returns:
            GridSpec: Grid with the plane z = 0 on a node plane whenever
            ``start[2] <= 0 < start[2] + dims[2]``.
        """
        h = float(spacing_nm) / BOHR_NM
        return cls(origin=tuple(k * h for k in start), spacing=(h, h, h), dims=tuple(dims))
    # end def lattice

    # region PROPERTIES

    @property
    def origin_nm(self) -> Vector3:
        return tuple(v * BOHR_NM for v in self.origin)
    # end def origin_nm

    @property
    def spacing_nm(self) -> Vector3:
        return tuple(v * BOHR_NM for v in self.spacing)
    # end def spacing_nm

    @property
    def cell_volume(self) -> float:
        """Volume of one grid cell (Bohr^3)."""
        hx, hy, hz = self.spacing
        return hx * hy * hz
    # end def cell_volume

    @property
    def size(self) -> int:
        nx, ny, nz = self.dims
        return nx * ny * nz
    # end def size

    # endregion PROPERTIES

    def axis(self, index: int) -> np.ndarray:
        """Node coordinates along one axis (Bohr)."""
        return self.origin[index] + self.spacing[index] * np.arange(self.dims[index])
    # end def axis

    def axis_nm(self, index: int) -> np.ndarray:
        """Node coordinates along one axis (nm)."""
        return self.axis(index) * BOHR_NM
    # end def axis_nm

    def mesh(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Broadcastable coordinate arrays (Bohr) of shapes (nx,1,1), (1,ny,1), (1,1,nz)."""
        return np.ix_(self.axis(0), self.axis(1), self.axis(2))
    # end def mesh

    def same_geometry(self, other: "GridSpec") -> bool:
        """Exact equality of origin, spacing and node counts."""
        return self.dims == other.dims and self.origin == other.origin and self.spacing == other.spacing
    # end def same_geometry

    def padded_to_transform(self) -> "GridSpec":
        """Grow every axis to the next accepted transform length.

        The added nodes are split between both ends (the extra one, if any,
        at the upper end), so the original nodes keep their coordinates.
        """
        new_dims = tuple(next_transform_size(n) for n in self.dims)
        origin = tuple(
            o - ((m - n) // 2) * h
            for o, h, n, m in zip(self.origin, self.spacing, self.dims, new_dims)
        )
        return GridSpec(origin=origin, spacing=self.spacing, dims=new_dims)
    # end def padded_to_transform

# end class GridSpec


@dataclass(frozen=True, eq=False)
class ScalarGrid3D:
    """Immutable real field sampled on a :class:`GridSpec`.

    Attributes:
        spec: Grid geometry.
        values: Array of shape ``spec.dims`` (read-only copy).
        label: Free text used in diagnostics.
    """

    spec: GridSpec
    values: np.ndarray
    label: str = field(default="")

    def __post_init__(self):
        values = np.array(self.values, dtype=np.float64, copy=True)
        if values.shape != self.spec.dims:
            raise DensityConfigError(
                f"Grid '{self.label}' holds {values.shape} values, expected {self.spec.dims}"
            )
        # end if
        if not np.all(np.isfinite(values)):
            raise DensityConfigError(f"Grid '{self.label}' contains non-finite values")
        # end if
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
    # end def __post_init__

    # region PROPERTIES

    @property
    def dims(self) -> Index3:
        return self.spec.dims
    # end def dims

    @property
    def origin_nm(self) -> Vector3:
        return self.spec.origin_nm
    # end def origin_nm

    @property
    def spacing_nm(self) -> Vector3:
        return self.spec.spacing_nm
    # end def spacing_nm

    # endregion PROPERTIES

    def integral(self) -> float:
        """Sum of the values times the cell volume."""
        return float(np.sum(self.values)) * self.spec.cell_volume
    # end def integral

    def with_values(self, values: np.ndarray, label: Optional[str] = None) -> "ScalarGrid3D":
        """New grid on the same geometry."""
        return ScalarGrid3D(spec=self.spec, values=values, label=self.label if label is None else label)
    # end def with_values

    def scaled(self, factor: float) -> "ScalarGrid3D":
        return self.with_values(self.values * float(factor))
    # end def scaled

# end class ScalarGrid3D


def embed_grid(grid: ScalarGrid3D, spec: GridSpec, *, rel_tol: float = 1e-9) -> ScalarGrid3D:
    """Copy ``grid`` into a larger, node-aligned grid filled with zeros.

    Args:
        grid: Source field.
        spec: Target geometry. It must share the spacing of ``grid`` and
            contain all its nodes.
        rel_tol: Relative tolerance on spacing equality and node alignment.

    Returns:
        ScalarGrid3D: Field on ``spec``.

    Raises:
        DensityConfigError: If the two grids are not commensurate.
    """
    if grid.spec.same_geometry(spec):
        return grid
    # end if
    offsets = []
    for axis in range(3):
        h_src, h_dst = grid.spec.spacing[axis], spec.spacing[axis]
        if abs(h_src - h_dst) > rel_tol * h_dst:
            raise DensityConfigError(
                f"Cannot embed grid '{grid.label}': spacing {h_src} != {h_dst} Bohr on axis {axis}"
            )
        # end if
        shift = (grid.spec.origin[axis] - spec.origin[axis]) / h_dst
        offset = int(round(shift))
        if abs(shift - offset) > 1e-6:
            raise DensityConfigError(
                f"Cannot embed grid '{grid.label}': nodes misaligned by {shift - offset:.3g} cells on axis {axis}"
            )
        # end if
        if offset < 0 or offset + grid.dims[axis] > spec.dims[axis]:
            raise DensityConfigError(
                f"Cannot embed grid '{grid.label}': target does not contain the source on axis {axis}"
            )
        # end if
        offsets.append(offset)
    # end for
    values = np.zeros(spec.dims)
    ox, oy, oz = offsets
    nx, ny, nz = grid.dims
    values[ox:ox + nx, oy:oy + ny, oz:oz + nz] = grid.values
    return ScalarGrid3D(spec=spec, values=values, label=grid.label)
# end def embed_grid
