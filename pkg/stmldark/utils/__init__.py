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

stmldark.utils package: logging, units and numerical helpers.
"""


# Imports
from .logger import Logger, LogLevel, LogEntry, LogFilterRule, setup_logger
from .units import (
    HARTREE_EV,
    BOHR_NM,
    ev_to_hartree,
    hartree_to_ev,
    nm_to_bohr,
    bohr_to_nm,
)
from .numerics import (
    is_transform_size,
    next_transform_size,
    trapezoid_weights,
    compensated_dot,
)

# ALL
__all__ = [
    # Logger
    "Logger",
    "LogLevel",
    "LogEntry",
    "LogFilterRule",
    "setup_logger",
    # Units
    "HARTREE_EV",
    "BOHR_NM",
    "ev_to_hartree",
    "hartree_to_ev",
    "nm_to_bohr",
    "bohr_to_nm",
    # Numerics
    "is_transform_size",
    "next_transform_size",
    "trapezoid_weights",
    "compensated_dot",
]
