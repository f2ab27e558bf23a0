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

stmldark.scan package: constant-height maps, profiles and map files.
"""


# Imports
from .map2d import (
    DEFAULT_LOG_FLOOR,
    MAP_MODES,
    CurrentMap2D,
    MapAxisError,
    NormalizationError,
    ProfileCut,
    ScanError,
    check_uniform_axis,
    normalize_map,
    profile_cut,
    sum_maps,
)
from .scanner import resolve_threads, scan_axis, scan_map
from .export import (
    map_csv_text,
    pgm_text,
    quicklook_levels,
    read_map_csv,
    write_map_csv,
    write_pgm,
    write_png,
)

# ALL
__all__ = [
    # Maps
    "DEFAULT_LOG_FLOOR",
    "MAP_MODES",
    "CurrentMap2D",
    "MapAxisError",
    "NormalizationError",
    "ProfileCut",
    "ScanError",
    "check_uniform_axis",
    "normalize_map",
    "profile_cut",
    "sum_maps",
    # Scanner
    "resolve_threads",
    "scan_axis",
    "scan_map",
    # Export
    "map_csv_text",
    "pgm_text",
    "quicklook_levels",
    "read_map_csv",
    "write_map_csv",
    "write_pgm",
    "write_png",
]
