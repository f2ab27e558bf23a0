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

Constant-height current maps and their profiles.

Values are stored row-major with shape (ny, nx): rows follow y, columns
follow x. Raw maps hold unnormalised currents; ``linear`` and ``log10``
maps are normalised to the map maximum.
"""


# Imports
from dataclasses import dataclass, field
from typing import Any, Dict, Mapping, Optional, Sequence, Union

import numpy as np

from stmldark.density import ScalarGrid3D, TransitionDensity, gaussian_plane_density, molecular_plane_index
from stmldark.errors import StmlDarkError
from stmldark.utils.logger import Logger


MAP_MODES = ("raw", "linear", "log10")

# log10 value given to zero pixels
DEFAULT_LOG_FLOOR = -12.0


class ScanError(StmlDarkError):
    """Raised when a scan or a map operation fails.

    Attributes:
        x_nm: x of the failing pixel, if any.
        y_nm: y of the failing pixel, if any.
    """

    def __init__(self, message: str, x_nm: Optional[float] = None, y_nm: Optional[float] = None):
        super().__init__(message)
        self.x_nm = x_nm
        self.y_nm = y_nm
    # end def __init__

# end class ScanError


class NormalizationError(ScanError):
    """Raised when a map has no strictly positive pixel."""
# end class NormalizationError


class MapAxisError(ScanError):
    """Raised when maps with different axes are combined."""
# end class MapAxisError


def _check_axis(axis: np.ndarray, name: str) -> np.ndarray:
    axis = np.array(axis, dtype=np.float64, copy=True).reshape(-1)
    if axis.size == 0:
        raise ScanError(f"Axis '{name}' is empty")
    # end if
    if not np.all(np.isfinite(axis)):
        raise ScanError(f"Axis '{name}' contains non-finite values")
    # end if
    if axis.size > 1 and not np.all(np.diff(axis) > 0.0):
        raise ScanError(f"Axis '{name}' must be strictly increasing")
    # end if
    axis.setflags(write=False)
    return axis
# end def _check_axis


def check_uniform_axis(axis: Sequence[float], name: str, rel_tol: float = 1e-9) -> np.ndarray:
    """Validate a nonempty, strictly increasing, uniformly spaced axis."""
    axis = _check_axis(np.asarray(axis), name)
    if axis.size > 2:
        steps = np.diff(axis)
        if np.max(np.abs(steps - steps[0])) > rel_tol * max(abs(steps[0]), np.max(np.abs(axis))):
            raise ScanError(f"Axis '{name}' is not uniformly spaced")
        # end if
    # end if
    return axis
# end def check_uniform_axis


@dataclass(frozen=True, eq=False)
class CurrentMap2D:
    """Raster of currents over lateral tip positions.

    Attributes:
        x_nm: x axis (nm), strictly increasing.
        y_nm: y axis (nm), strictly increasing.
        values: Array (ny, nx).
        mode: ``raw``, ``linear`` or ``log10``.
        metadata: Run parameters (bias, channels, tip height, ...).
        channel_values: Raw per-channel maps keyed by channel label.
    """

    x_nm: np.ndarray
    y_nm: np.ndarray
    values: np.ndarray
    mode: str = "raw"
    metadata: Mapping[str, Any] = field(default_factory=dict)
    channel_values: Mapping[str, np.ndarray] = field(default_factory=dict)

    def __post_init__(self):
        x = _check_axis(self.x_nm, "x")
        y = _check_axis(self.y_nm, "y")
        values = np.array(self.values, dtype=np.float64, copy=True)
        if values.shape != (y.size, x.size):
            raise ScanError(f"Map values have shape {values.shape}, expected {(y.size, x.size)}")
        # end if
        if not np.all(np.isfinite(values)):
            raise ScanError("Map values must be finite")
        # end if
        if self.mode not in MAP_MODES:
            raise ScanError(f"Unknown map mode '{self.mode}', expected one of {MAP_MODES}")
        # end if
        if self.mode == "linear" and (np.min(values) < 0.0 or np.max(values) > 1.0):
            raise ScanError("Linear-normalised map values must lie in [0, 1]")
        # end if
        values.setflags(write=False)
        object.__setattr__(self, "x_nm", x)
        object.__setattr__(self, "y_nm", y)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "metadata", dict(self.metadata))
        object.__setattr__(self, "channel_values", {k: np.asarray(v) for k, v in self.channel_values.items()})
    # end def __post_init__

    # region PROPERTIES

    @property
    def shape(self):
        return self.values.shape
    # end def shape

    # endregion PROPERTIES

    def same_axes(self, other: "CurrentMap2D") -> bool:
        return np.array_equal(self.x_nm, other.x_nm) and np.array_equal(self.y_nm, other.y_nm)
    # end def same_axes

    def argmax_nm(self):
        """(x, y) of the largest pixel (first in row-major order)."""
        j, i = np.unravel_index(int(np.argmax(self.values)), self.values.shape)
        return float(self.x_nm[i]), float(self.y_nm[j])
    # end def argmax_nm

    def value_at(self, x_nm: float, y_nm: float, tol_nm: float = 1e-6) -> float:
        """Pixel value at an axis node.

        Raises:
            ScanError: If (x, y) is not a pixel of the map.
        """
        i = int(np.argmin(np.abs(self.x_nm - x_nm)))
        j = int(np.argmin(np.abs(self.y_nm - y_nm)))
        if abs(self.x_nm[i] - x_nm) > tol_nm or abs(self.y_nm[j] - y_nm) > tol_nm:
            raise ScanError(f"({x_nm}, {y_nm}) nm is not a pixel of the map", x_nm, y_nm)
        # end if
        return float(self.values[j, i])
    # end def value_at

# end class CurrentMap2D


def normalize_map(current_map: CurrentMap2D, mode: str = "linear", floor: float = DEFAULT_LOG_FLOOR) -> CurrentMap2D:
    """Normalise a raw (or linear) map to its maximum.

    Args:
        current_map: Map to normalise.
        mode: ``linear`` divides by the maximum; ``log10`` takes
            log10(value / max) with non-positive pixels and values below
            ``floor`` clamped to ``floor``.
        floor: log10 floor.

    Raises:
        NormalizationError: If no pixel is strictly positive.
        ScanError: On an unknown mode or a log10 input map.
    """
    if mode not in ("linear", "log10"):
        raise ScanError(f"Unknown normalisation mode '{mode}'")
    # end if
    if current_map.mode == "log10":
        raise ScanError("A log10 map cannot be normalised again")
    # end if
    peak = float(np.max(current_map.values))
    if not peak > 0.0:
        raise NormalizationError("Map has no strictly positive pixel (bias below threshold?)")
    # end if
    relative = current_map.values / peak
    if mode == "log10":
        positive = relative > 0.0
        logs = np.full(relative.shape, float(floor))
        logs[positive] = np.log10(relative[positive])
        values = np.maximum(logs, float(floor))
    else:
        values = np.clip(relative, 0.0, 1.0)
    # end if
    metadata = {**current_map.metadata, "normalization": mode, "raw_max": peak}
    if mode == "log10":
        metadata["log_floor"] = float(floor)
    # end if
    return CurrentMap2D(
        x_nm=current_map.x_nm,
        y_nm=current_map.y_nm,
        values=values,
        mode=mode,
        metadata=metadata,
        channel_values=current_map.channel_values,
    )
# end def normalize_map


def sum_maps(maps: Sequence[CurrentMap2D]) -> CurrentMap2D:
    """Pixelwise sum of raw maps sharing their axes.

    Raises:
        MapAxisError: If the axes differ.
        ScanError: If the list is empty or a map is normalised.
    """
    if not maps:
        raise ScanError("No map to sum")
    # end if
    first = maps[0]
    for other in maps[1:]:
        if not first.same_axes(other):
            raise MapAxisError("Cannot sum maps with different axes")
        # end if
    # end for
    if any(m.mode != "raw" for m in maps):
        raise ScanError("Only raw maps can be summed")
    # end if
    total = first.values.copy()
    for other in maps[1:]:
        total = total + other.values
    # end for
    channels: Dict[str, np.ndarray] = {}
    labels = []
    for current_map in maps:
        for label, values in current_map.channel_values.items():
            key, suffix = label, 2
            while key in channels:
                key, suffix = f"{label}#{suffix}", suffix + 1
            # end while
            channels[key] = values
        # end for
        labels.extend(current_map.metadata.get("channels", []))
    # end for
    metadata = {**first.metadata, "channels": labels}
    return CurrentMap2D(x_nm=first.x_nm, y_nm=first.y_nm, values=total, metadata=metadata, channel_values=channels)
# end def sum_maps


@dataclass(frozen=True, eq=False)
class ProfileCut:
    """1D profile along x or y, normalised to its largest magnitude.

    Attributes:
        axis: Axis followed by the cut (``x`` or ``y``).
        offset_nm: Coordinate of the cut line on the other axis.
        requested_offset_nm: Offset asked for before snapping.
        coords_nm: Positions along the cut.
        values: Normalised values (signed for densities).
        raw: Values before normalisation.
    """

    axis: str
    offset_nm: float
    requested_offset_nm: float
    coords_nm: np.ndarray
    values: np.ndarray
    raw: np.ndarray

    def local_minima(self) -> np.ndarray:
        """Positions of strict interior local minima."""
        v = self.values
        inner = (v[1:-1] < v[:-2]) & (v[1:-1] < v[2:])
        return self.coords_nm[1:-1][inner]
    # end def local_minima

    def local_maxima(self) -> np.ndarray:
        """Positions of strict interior local maxima."""
        v = self.values
        inner = (v[1:-1] > v[:-2]) & (v[1:-1] > v[2:])
        return self.coords_nm[1:-1][inner]
    # end def local_maxima

    def zero_crossings(self) -> np.ndarray:
        """Sign changes, located by linear interpolation between samples."""
        v, c = self.values, self.coords_nm
        crossings = []
        for k in range(len(v) - 1):
            if v[k] == 0.0:
                crossings.append(c[k])
            elif v[k] * v[k + 1] < 0.0:
                crossings.append(c[k] - v[k] * (c[k + 1] - c[k]) / (v[k + 1] - v[k]))
            # end if
        # end for
        return np.asarray(crossings)
    # end def zero_crossings

# end class ProfileCut


def _snap(axis: np.ndarray, offset: float, name: str) -> int:
    index = int(np.argmin(np.abs(axis - offset)))
    step = float(axis[1] - axis[0]) if axis.size > 1 else 1.0
    if abs(axis[index] - offset) > 1e-9 * abs(step):
        Logger.get().diagnostic(
            "profile-snap",
            f"profile offset snapped to the nearest {name} line",
            requested_nm=offset,
            used_nm=float(axis[index]),
        )
    # end if
    return index
# end def _snap


def _plane_of(source: Union[ScalarGrid3D, TransitionDensity], samples_nm):
    """Coordinates and 2D values (x, y) of the molecular plane."""
    if isinstance(source, TransitionDensity) and source.grid is None:
        params = source.gaussian
        if samples_nm is None:
            extent = 4.0 * max(params.sigma_nm, params.sigma1_nm, params.sigma2_nm)
            samples_nm = np.linspace(-extent, extent, 801)
        # end if
        samples = _check_axis(np.asarray(samples_nm), "samples")
        plane = gaussian_plane_density(params, samples[:, None], samples[None, :]) * source.amplitude
        return samples, samples, plane
    # end if
    grid = source.grid if isinstance(source, TransitionDensity) else source
    k = molecular_plane_index(grid.spec)
    return grid.spec.axis_nm(0), grid.spec.axis_nm(1), grid.values[:, :, k]
# end def _plane_of


def profile_cut(
        source: Union[CurrentMap2D, ScalarGrid3D, TransitionDensity],
        axis: str = "x",
        offset_nm: float = 0.0,
        *,
        samples_nm: Optional[Sequence[float]] = None,
) -> ProfileCut:
    """Cut a map or the molecular plane of a density along one axis.

    Args:
        source: Current map, gridded field, or transition density.
        axis: ``x`` (cut at y = offset) or ``y`` (cut at x = offset).
        offset_nm: Position of the cut line; snapped to the nearest grid
            line with a diagnostic when off-grid.
        samples_nm: Sample positions for analytic densities.

    Raises:
        ScanError: On an unknown axis.
        NormalizationError: If the cut is identically zero.
    """
    if axis not in ("x", "y"):
        raise ScanError(f"Profile axis must be 'x' or 'y', got '{axis}'")
    # end if
    if isinstance(source, CurrentMap2D):
        x, y, plane = source.x_nm, source.y_nm, source.values.T
    else:
        x, y, plane = _plane_of(source, samples_nm)
    # end if
    # plane is indexed (x, y) from here on
    if axis == "x":
        index = _snap(y, offset_nm, "y")
        coords, raw, used = x, plane[:, index], float(y[index])
    else:
        index = _snap(x, offset_nm, "x")
        coords, raw, used = y, plane[index, :], float(x[index])
    # end if
    scale = float(np.max(np.abs(raw)))
    if scale == 0.0:
        raise NormalizationError(f"Profile along {axis} at {used} nm is identically zero")
    # end if
    return ProfileCut(
        axis=axis,
        offset_nm=used,
        requested_offset_nm=float(offset_nm),
        coords_nm=np.asarray(coords, dtype=np.float64),
        values=np.asarray(raw, dtype=np.float64) / scale,
        raw=np.asarray(raw, dtype=np.float64),
    )
# end def profile_cut
