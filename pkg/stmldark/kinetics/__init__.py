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

stmldark.kinetics package: detection-cycle rate equations.
"""


# Imports
from .rates import (
    STABILITY_LIMIT,
    STATES,
    KineticsError,
    KineticsStabilityError,
    NoStationaryCycleError,
    Populations,
    RateModel,
    Trajectory,
    closed_form_emission_rate,
    closed_form_p17,
    evolve,
    photon_emission_rate,
    rate_generator,
    stationary_residual,
    steady_state,
    steady_state_report,
)

# ALL
__all__ = [
    "STABILITY_LIMIT",
    "STATES",
    "KineticsError",
    "KineticsStabilityError",
    "NoStationaryCycleError",
    "Populations",
    "RateModel",
    "Trajectory",
    "closed_form_emission_rate",
    "closed_form_p17",
    "evolve",
    "photon_emission_rate",
    "rate_generator",
    "stationary_residual",
    "steady_state",
    "steady_state_report",
]
