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

stmldark.current package: inelastic currents and bias sweeps.
"""


# Imports
from .channels import (
    CurrentError,
    CurrentConfigError,
    GridSettings,
    PreparedChannel,
    TransitionChannel,
    plan_simulation_grid,
    prepare_channel,
    prepare_channels,
)
from .inelastic import (
    DEFAULT_CONVERGENCE_TOL,
    DEFAULT_N_ENERGY,
    CurrentResult,
    QuadratureCheck,
    channel_current,
    check_quadrature_convergence,
    ensure_prepared,
    inelastic_current_negative,
    inelastic_current_positive,
    total_inelastic_current,
)
from .sweep import BiasCurve, bias_grid, bias_sweep

# ALL
__all__ = [
    # Channels
    "CurrentError",
    "CurrentConfigError",
    "GridSettings",
    "PreparedChannel",
    "TransitionChannel",
    "plan_simulation_grid",
    "prepare_channel",
    "prepare_channels",
    # Currents
    "DEFAULT_CONVERGENCE_TOL",
    "DEFAULT_N_ENERGY",
    "CurrentResult",
    "QuadratureCheck",
    "channel_current",
    "check_quadrature_convergence",
    "ensure_prepared",
    "inelastic_current_negative",
    "inelastic_current_positive",
    "total_inelastic_current",
    # Sweep
    "BiasCurve",
    "bias_grid",
    "bias_sweep",
]
