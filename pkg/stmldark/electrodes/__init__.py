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

stmldark.electrodes package: tip and substrate model states.
"""


# Imports
from .model import BiasConfig, ElectrodeModel, ElectrodeModelError, EnergyWindow, VacuumLevelError, vacuum_limit_v
from .wavefunctions import (
    PairDensity,
    PairGeometry,
    decay_constant,
    decay_constant_bohr,
    pair_density,
    substrate_amplitude,
    substrate_wavefunction,
    tip_amplitude,
    tip_wavefunction,
)

# ALL
__all__ = [
    # Model
    "BiasConfig",
    "ElectrodeModel",
    "ElectrodeModelError",
    "EnergyWindow",
    "VacuumLevelError",
    "vacuum_limit_v",
    # Wavefunctions
    "PairDensity",
    "PairGeometry",
    "decay_constant",
    "decay_constant_bohr",
    "pair_density",
    "substrate_amplitude",
    "substrate_wavefunction",
    "tip_amplitude",
    "tip_wavefunction",
]
