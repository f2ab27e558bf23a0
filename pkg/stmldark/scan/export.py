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

Map file formats: CSV, PGM (P2) and PNG quick-looks.
"""


# Imports
from pathlib import Path
from typing import Iterable, Optional, Union

import numpy as np
from PIL import Image

from .map2d import DEFAULT_LOG_FLOOR, MAP_MODES, CurrentMap2D, ScanError, normalize_map


PathLike = Union[str, Path]

# Values per PGM line, keeping lines under 70 characters
_PGM_PER_LINE = 17


def _format(value: float) -> str:
    return f"{value:.15g}"
# end def _format


def map_csv_text(current_map: CurrentMap2D, header_lines: Iterable[str] = ()) -> str:
    """CSV text of a map: comment header, axes, then one row per y."""
    lines = [f"# {line}" for line in header_lines]
    lines.append(f"# mode: {current_map.mode}")
    lines.append("# x_nm: " + ",".join(_format(x) for x in current_map.x_nm))
    lines.append("# y_nm: " + ",".join(_format(y) for y in current_map.y_nm))
    for row in current_map.values:
        lines.append(",".join(_format(v) for v in row))
    # end for
    return "\n".join(lines) + "\n"
# end def map_csv_text


def write_map_csv(current_map: CurrentMap2D, path: PathLike, header_lines: Iterable[str] = ()) -> Path:
    path = Path(path)
    path.write_text(map_csv_text(current_map, header_lines))
    return path
# end def write_map_csv


def read_map_csv(path: PathLike) -> CurrentMap2D:
    """Read a map written by :func:`write_map_csv`.

    Raises:
        ScanError: If the axes are missing or the rows do not match them.
    """
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ScanError(f"Cannot read map '{path}': {exc}") from exc
    # end try
    x_axis = y_axis = None
    mode = "raw"
    rows = []
    for number, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        # end if
        try:
            if line.startswith("# x_nm:"):
                x_axis = [float(v) for v in line[len("# x_nm:"):].split(",")]
            elif line.startswith("# y_nm:"):
                y_axis = [float(v) for v in line[len("# y_nm:"):].split(",")]
            elif line.startswith("# mode:"):
                mode = line[len("# mode:"):].strip()
            elif not line.startswith("#"):
                rows.append([float(v) for v in line.split(",")])
            # end if
        except ValueError as exc:
            raise ScanError(f"{path}:{number}: non-numeric map entry ({exc})") from exc
        # end try
    # end for
    if x_axis is None or y_axis is None:
        raise ScanError(f"Map '{path}' lacks its '# x_nm:' or '# y_nm:' header")
    # end if
    if mode not in MAP_MODES:
        raise ScanError(f"Map '{path}' has unknown mode '{mode}'")
    # end if
    if len(rows) != len(y_axis) or any(len(row) != len(x_axis) for row in rows):
        raise ScanError(f"Map '{path}' rows do not match its axes ({len(y_axis)} x {len(x_axis)})")
    # end if
    return CurrentMap2D(x_nm=np.array(x_axis), y_nm=np.array(y_axis), values=np.array(rows), mode=mode)
# end def read_map_csv


def quicklook_levels(current_map: CurrentMap2D, log10: bool = False, floor: float = DEFAULT_LOG_FLOOR) -> np.ndarray:
    """8-bit grey levels, top row at the largest y.

    Raw maps are normalised first (linear or log10); log10 levels map
    ``floor`` to 0 and 0 to 255.
    """
    if current_map.mode == "raw":
        current_map = normalize_map(current_map, "log10" if log10 else "linear", floor)
    # end if
    values = current_map.values
    if current_map.mode == "log10":
        low = float(current_map.metadata.get("log_floor", floor))
        values = (values - low) / (-low)
    # end if
    levels = np.rint(np.clip(values, 0.0, 1.0) * 255.0).astype(np.uint8)
    return np.ascontiguousarray(levels[::-1, :])
# end def quicklook_levels


def pgm_text(levels: np.ndarray, comment: Optional[str] = None) -> str:
    """Plain (P2) PGM text of an 8-bit image."""
    height, width = levels.shape
    lines = ["P2"]
    if comment:
        lines.append(f"# {comment}")
    # end if
    lines.extend([f"{width} {height}", "255"])
    for row in levels:
        for start in range(0, width, _PGM_PER_LINE):
            lines.append(" ".join(str(int(v)) for v in row[start:start + _PGM_PER_LINE]))
        # end for
    # end for
    return "\n".join(lines) + "\n"
# end def pgm_text


def write_pgm(
        current_map: CurrentMap2D,
        path: PathLike,
        *,
        log10: bool = False,
        floor: float = DEFAULT_LOG_FLOOR,
        comment: Optional[str] = None,
) -> Path:
    path = Path(path)
    path.write_text(pgm_text(quicklook_levels(current_map, log10, floor), comment))
    return path
# end def write_pgm


def write_png(
        current_map: CurrentMap2D,
        path: PathLike,
        *,
        log10: bool = False,
        floor: float = DEFAULT_LOG_FLOOR,
) -> Path:
    """Greyscale PNG quick-look rendered with Pillow."""
    path = Path(path)
    Image.fromarray(quicklook_levels(current_map, log10, floor)).save(path, format="PNG")
    return path
# end def write_png

