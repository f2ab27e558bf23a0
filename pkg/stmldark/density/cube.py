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

Gaussian cube files.

Reader contract: two comment lines; ``natoms ox oy oz``; three axis lines
``n vx vy vz`` (Bohr, axis-aligned); |natoms| atom records; for orbital cubes
(negative natoms) one orbital-index record; then the values, z fastest,
then y, then x.
"""


# Imports
from pathlib import Path
from typing import Iterator, List, Optional, Tuple, Union

import numpy as np

from .grid import DensityConfigError, DensityError, GridSpec, ScalarGrid3D
from .transition import DEFAULT_NEUTRALITY_TOL, TransitionDensity


PathLike = Union[str, Path]


class CubeParseError(DensityError):
    """Raised when a cube file does not follow the format.

    Attributes:
        path: File being read.
        line: 1-based line number where the problem was found.
    """

    def __init__(self, path: PathLike, line: int, message: str):
        super().__init__(f"{path}:{line}: {message}")
        self.path = Path(path)
        self.line = line
    # end def __init__

# end class CubeParseError


class _CubeLines:
    """Line cursor keeping track of 1-based line numbers."""

    def __init__(self, path: Path, lines: List[str]):
        self.path = path
        self.lines = lines
        self.position = 0
    # end def __init__

    def next_fields(self, what: str, count: int) -> Tuple[int, List[str]]:
        if self.position >= len(self.lines):
            raise CubeParseError(self.path, self.position + 1, f"unexpected end of file while reading {what}")
        # end if
        self.position += 1
        fields = self.lines[self.position - 1].split()
        if len(fields) < count:
            raise CubeParseError(
                self.path, self.position, f"{what} needs {count} fields, found {len(fields)}"
            )
        # end if
        return self.position, fields
    # end def next_fields

    def remaining(self) -> Iterator[Tuple[int, str]]:
        for offset, text in enumerate(self.lines[self.position:]):
            for token in text.split():
                yield self.position + offset + 1, token
            # end for
        # end for
    # end def remaining

# end class _CubeLines


def _number(path: Path, line: int, token: str, kind=float):
    try:
        return kind(token)
    except ValueError:
        raise CubeParseError(path, line, f"non-numeric token '{token}'") from None
    # end try
# end def _number


def _read_header(path: Path) -> Tuple[_CubeLines, GridSpec]:
    try:
        text = path.read_text()
    except OSError as exc:
        raise CubeParseError(path, 0, f"cannot read file: {exc}") from exc
    # end try
    cursor = _CubeLines(path, text.splitlines())
    cursor.position = 2

    line, fields = cursor.next_fields("atom count and origin", 4)
    natoms = _number(path, line, fields[0], int)
    origin = tuple(_number(path, line, token) for token in fields[1:4])

    dims, spacing = [], []
    for axis in range(3):
        line, fields = cursor.next_fields(f"axis {axis + 1}", 4)
        count = _number(path, line, fields[0], int)
        if count <= 0:
            raise CubeParseError(path, line, f"axis {axis + 1} has non-positive point count {count}")
        # end if
        vector = [_number(path, line, token) for token in fields[1:4]]
        off_axis = [abs(v) for i, v in enumerate(vector) if i != axis]
        if max(off_axis) > 1e-12 * max(abs(vector[axis]), 1e-300) or vector[axis] <= 0.0:
            raise CubeParseError(path, line, f"axis {axis + 1} step {vector} is not a positive axis-aligned vector")
        # end if
        dims.append(count)
        spacing.append(vector[axis])
    # end for

    for index in range(abs(natoms)):
        cursor.next_fields(f"atom record {index + 1}", 5)
    # end for
    if natoms < 0:
        line, fields = cursor.next_fields("orbital index record", 1)
        n_orbitals = _number(path, line, fields[0], int)
        if n_orbitals != 1:
            raise CubeParseError(path, line, f"only single-orbital cube files are supported, found {n_orbitals}")
        # end if
    # end if

    try:
        spec = GridSpec(origin=origin, spacing=tuple(spacing), dims=tuple(dims))
    except DensityConfigError as exc:
        raise CubeParseError(path, 3, str(exc)) from exc
    # end try
    return cursor, spec
# end def _read_header


def read_cube_spec(path: PathLike) -> GridSpec:
    """Read only the grid geometry of a cube file.

    Raises:
        CubeParseError: If the header is malformed.
    """
    _, spec = _read_header(Path(path))
    return spec
# end def read_cube_spec


def read_cube_grid(path: PathLike, label: Optional[str] = None) -> ScalarGrid3D:
    """Read the volumetric data of a cube file.

    Args:
        path: Cube file.
        label: Grid label, defaults to the file stem.

    Returns:
        ScalarGrid3D: Values as stored (atomic units), geometry in Bohr.

    Raises:
        CubeParseError: On syntax errors, non-positive or non axis-aligned
            axes, or a value stream of the wrong length.
    """
    path = Path(path)
    cursor, spec = _read_header(path)

    expected = spec.size
    values = np.empty(expected)
    received = 0
    last_line = cursor.position
    for last_line, token in cursor.remaining():
        if received == expected:
            raise CubeParseError(path, last_line, f"more than the expected {expected} values")
        # end if
        values[received] = _number(path, last_line, token)
        received += 1
    # end for
    if received != expected:
        raise CubeParseError(path, last_line, f"expected {expected} values, received {received}")
    # end if
    return ScalarGrid3D(spec=spec, values=values.reshape(spec.dims), label=label or path.stem)
# end def read_cube_grid


def load_cube(
        path: PathLike,
        energy_gap_ev: float,
        label: Optional[str] = None,
        *,
        neutrality_tol: Optional[float] = DEFAULT_NEUTRALITY_TOL,
) -> TransitionDensity:
    """Load a cube file as a gridded transition density.

    The stored field is taken as the transition density itself.

    Raises:
        CubeParseError: If the file cannot be parsed.
        NeutralityError: If the field is not charge neutral.
    """
    grid = read_cube_grid(path, label)
    return TransitionDensity.gridded(grid, energy_gap_ev, grid.label, neutrality_tol=neutrality_tol)
# end def load_cube


def write_cube(grid: ScalarGrid3D, path: PathLike, comment: str = "") -> Path:
    """Write a grid as a cube file without atom records.

    Values are written 6 per line as ``%13.5E``, restarting a line for each
    (x, y) column. Geometry is written with 12 decimals so that re-read grids
    keep their node alignment.
    """
    path = Path(path)
    spec = grid.spec
    out = ["STMLDark transition density", f" {comment or grid.label}"]
    out.append(f"{0:5d}" + "".join(f"{o:20.12f}" for o in spec.origin))
    for axis in range(3):
        step = [0.0, 0.0, 0.0]
        step[axis] = spec.spacing[axis]
        out.append(f"{spec.dims[axis]:5d}" + "".join(f"{s:20.12f}" for s in step))
    # end for
    nx, ny, nz = spec.dims
    for i in range(nx):
        for j in range(ny):
            column = grid.values[i, j]
            for start in range(0, nz, 6):
                out.append("".join(f"{v:13.5E}" for v in column[start:start + 6]))
            # end for
        # end for
    # end for
    path.write_text("\n".join(out) + "\n")
    return path
# end def write_cube
