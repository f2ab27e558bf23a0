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

Inelastic tunneling currents.

For each channel the substrate energy E_n runs over the bias window and the
tip energy follows as xi_k = E_n + offset (see :class:`EnergyWindow`). The
current is 2 pi rho_s rho_t int |N(E_n, xi_k)|^2 dE_n, integrated with the
composite trapezoid rule and reported in relative units.
"""


# Imports
import math
from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple, Union

import numpy as np

from stmldark.electrodes import BiasConfig, ElectrodeModel, PairGeometry
from stmldark.utils.numerics import compensated_dot, trapezoid_weights
from .channels import (
    CurrentConfigError,
    GridSettings,
    PreparedChannel,
    TransitionChannel,
    prepare_channels,
)


# Energy nodes of the trapezoid rule, endpoints included
DEFAULT_N_ENERGY = 17

# Relative change tolerated between n and 2n - 1 energy nodes
DEFAULT_CONVERGENCE_TOL = 5e-3

ChannelLike = Union[TransitionChannel, PreparedChannel]


@dataclass(frozen=True)
class CurrentResult:
    """Inelastic current at one bias and tip position.

    Attributes:
        channel_currents: (label, current) per channel, in input order.
        total: Sum over channels.
        bias_v: Bias (V).
        tip_lateral_nm: Tip position.
        n_energy: Quadrature nodes per nonempty window.
    """

    channel_currents: Tuple[Tuple[str, float], ...]
    total: float
    bias_v: float
    tip_lateral_nm: Tuple[float, float]
    n_energy: int

    @property
    def by_label(self) -> Dict[str, float]:
        return dict(self.channel_currents)
    # end def by_label

# end class CurrentResult


def ensure_prepared(
        channels: Sequence[ChannelLike],
        model: ElectrodeModel,
        settings: GridSettings = GridSettings(),
        *,
        kernel: str = "isolated",
        workers: int = 1,
) -> list:
    """Return prepared channels sharing one grid, preparing raw channels on demand."""
    if not channels:
        raise CurrentConfigError("At least one transition channel is required")
    # end if
    if all(isinstance(c, PreparedChannel) for c in channels):
        spec = channels[0].spec
        if any(not c.spec.same_geometry(spec) for c in channels):
            raise CurrentConfigError("Prepared channels must share one simulation grid")
        # end if
        return list(channels)
    # end if
    if all(isinstance(c, TransitionChannel) for c in channels):
        return prepare_channels(channels, model, settings, kernel=kernel, workers=workers)
    # end if
    raise CurrentConfigError("Channels must be all prepared or all unprepared")
# end def ensure_prepared


def channel_current(
        prepared: PreparedChannel,
        model: ElectrodeModel,
        bias_v: float,
        geometry: Optional[PairGeometry],
        n_energy: int = DEFAULT_N_ENERGY,
) -> float:
    """Current of one prepared channel; exactly 0 when the window is empty.

    Raises:
        CurrentConfigError: If ``n_energy < 2`` for a nonempty window.
    """
    window = BiasConfig(bias_v).energy_window(model.fermi_energy_ev, prepared.energy_gap_ev)
    if window is None:
        return 0.0
    # end if
    if n_energy < 2:
        raise CurrentConfigError(f"n_energy must be >= 2, got {n_energy}")
    # end if
    if geometry is None:
        raise CurrentConfigError("A pair geometry is required for a nonempty bias window")
    # end if
    substrate = np.linspace(window.lower_ev, window.upper_ev, n_energy)
    tip = substrate + window.tip_offset_ev
    elements = prepared.matrix_elements(geometry, substrate, tip)
    weights = trapezoid_weights(n_energy, window.width_ev)
    return 2.0 * math.pi * model.dos_substrate * model.dos_tip * compensated_dot(weights, elements * elements)
# end def channel_current


def total_inelastic_current(
        channels: Sequence[ChannelLike],
        model: ElectrodeModel,
        bias_v: float,
        tip_lateral_nm: Tuple[float, float] = (0.0, 0.0),
        n_energy: int = DEFAULT_N_ENERGY,
        *,
        settings: GridSettings = GridSettings(),
        kernel: str = "isolated",
        geometry: Optional[PairGeometry] = None,
        workers: int = 1,
) -> CurrentResult:
    """Incoherent sum of the channel currents.

    Zero for |bias| <= min E_eg / e, since every window is then empty.

    Args:
        channels: Raw or prepared channels (at least one).
        model: Electrode model.
        bias_v: Bias (V).
        tip_lateral_nm: Tip position (x_A, y_A).
        n_energy: Trapezoid nodes.
        settings: Grid settings used when channels need preparing.
        kernel: Coulomb kernel used when channels need preparing.
        geometry: Precomputed pair geometry for this tip position.
        workers: Threads given to ``scipy.fft`` while preparing.
    """
    prepared = ensure_prepared(channels, model, settings, kernel=kernel, workers=workers)
    bias = BiasConfig(bias_v)
    tip = (float(tip_lateral_nm[0]), float(tip_lateral_nm[1]))
    open_windows = any(
        bias.energy_window(model.fermi_energy_ev, c.energy_gap_ev) is not None for c in prepared
    )
    if open_windows and geometry is None:
        geometry = PairGeometry.build(model, prepared[0].spec, tip)
    # end if
    currents = tuple(
        (c.label, channel_current(c, model, bias.bias_v, geometry, n_energy))
        for c in prepared
    )
    return CurrentResult(
        channel_currents=currents,
        total=math.fsum(value for _, value in currents),
        bias_v=bias.bias_v,
        tip_lateral_nm=tip,
        n_energy=n_energy,
    )
# end def total_inelastic_current


def _single_polarity(
        sign: int,
        channel: ChannelLike,
        model: ElectrodeModel,
        bias_v: float,
        tip_lateral_nm: Tuple[float, float],
        n_energy: int,
        settings: GridSettings,
        kernel: str,
) -> float:
    if not math.isfinite(bias_v) or (bias_v > 0.0) - (bias_v < 0.0) != sign:
        polarity = "negative" if sign < 0 else "positive"
        raise CurrentConfigError(f"The {polarity} bias current needs a {polarity} bias, got {bias_v} V")
    # end if
    result = total_inelastic_current(
        [channel], model, bias_v, tip_lateral_nm, n_energy, settings=settings, kernel=kernel
    )
    return result.total
# end def _single_polarity


def inelastic_current_negative(
        channel: ChannelLike,
        model: ElectrodeModel,
        bias_v: float,
        tip_lateral_nm: Tuple[float, float] = (0.0, 0.0),
        n_energy: int = DEFAULT_N_ENERGY,
        *,
        settings: GridSettings = GridSettings(),
        kernel: str = "isolated",
) -> float:
    """Current at bias < 0: E_n in [mu0 + eV + E_eg, mu0], xi_k = E_n - eV - E_eg."""
    return _single_polarity(-1, channel, model, bias_v, tip_lateral_nm, n_energy, settings, kernel)
# end def inelastic_current_negative


def inelastic_current_positive(
        channel: ChannelLike,
        model: ElectrodeModel,
        bias_v: float,
        tip_lateral_nm: Tuple[float, float] = (0.0, 0.0),
        n_energy: int = DEFAULT_N_ENERGY,
        *,
        settings: GridSettings = GridSettings(),
        kernel: str = "isolated",
) -> float:
    """Current at bias > 0: E_n in [mu0, mu0 + eV - E_eg], xi_k = E_n - eV + E_eg."""
    return _single_polarity(1, channel, model, bias_v, tip_lateral_nm, n_energy, settings, kernel)
# end def inelastic_current_positive


@dataclass(frozen=True)
class QuadratureCheck:
    """Self-convergence of the energy quadrature."""

    coarse: float
    fine: float
    n_energy: int
    tolerance: float

    @property
    def relative_change(self) -> float:
        if self.fine == 0.0:
            return 0.0 if self.coarse == 0.0 else math.inf
        # end if
        return abs(self.fine - self.coarse) / abs(self.fine)
    # end def relative_change

    @property
    def converged(self) -> bool:
        return self.relative_change <= self.tolerance
    # end def converged

# end class QuadratureCheck


def check_quadrature_convergence(
        channels: Sequence[PreparedChannel],
        model: ElectrodeModel,
        bias_v: float,
        tip_lateral_nm: Tuple[float, float] = (0.0, 0.0),
        n_energy: int = DEFAULT_N_ENERGY,
        tolerance: float = DEFAULT_CONVERGENCE_TOL,
) -> QuadratureCheck:
    """Compare n and 2n - 1 nodes (the step halved) at one bias and tip position."""
    geometry = PairGeometry.build(model, channels[0].spec, tip_lateral_nm)
    coarse = total_inelastic_current(channels, model, bias_v, tip_lateral_nm, n_energy, geometry=geometry)
    fine = total_inelastic_current(channels, model, bias_v, tip_lateral_nm, 2 * n_energy - 1, geometry=geometry)
    return QuadratureCheck(coarse=coarse.total, fine=fine.total, n_energy=n_energy, tolerance=tolerance)
# end def check_quadrature_convergence
