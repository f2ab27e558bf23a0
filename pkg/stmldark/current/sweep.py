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

Bias sweeps at a fixed tip position.
"""


# Imports
import math
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

from stmldark.electrodes import ElectrodeModel, PairGeometry
from .channels import CurrentConfigError, GridSettings
from .inelastic import DEFAULT_N_ENERGY, ChannelLike, ensure_prepared, total_inelastic_current


def bias_grid(start_v: float, stop_v: float, step_v: float) -> List[float]:
    """Inclusive bias list ``start, start + step, ...``.

    Biases are rounded to 12 decimals so that nominal threshold values such
    as 2.0 V are hit exactly.

    Raises:
        CurrentConfigError: On a non-positive step or reversed bounds.
    """
    if not step_v > 0.0:
        raise CurrentConfigError(f"Bias step must be > 0, got {step_v}")
    # end if
    if stop_v < start_v:
        raise CurrentConfigError(f"Bias sweep stop {stop_v} V is below start {start_v} V")
    # end if
    count = int(math.floor((stop_v - start_v) / step_v + 1e-9)) + 1
    return [round(start_v + k * step_v, 12) + 0.0 for k in range(count)]
# end def bias_grid


@dataclass(frozen=True)
class BiasCurve:
    """Total current versus bias.

    Attributes:
        biases_v: Biases in sweep order.
        totals: Total current per bias (relative units, unnormalised).
        channel_currents: Per bias, (label, current) per channel.
        tip_lateral_nm: Tip position.
    """

    biases_v: Tuple[float, ...]
    totals: Tuple[float, ...]
    channel_currents: Tuple[Tuple[Tuple[str, float], ...], ...]
    tip_lateral_nm: Tuple[float, float]

    def current_at(self, bias_v: float) -> float:
        """Total current at a sampled bias.

        Raises:
            CurrentConfigError: If the bias is not part of the sweep.
        """
        for bias, total in zip(self.biases_v, self.totals):
            if abs(bias - bias_v) <= 1e-9:
                return total
            # end if
        # end for
        raise CurrentConfigError(f"Bias {bias_v} V is not part of the sweep")
    # end def current_at

    def asymmetry(self, bias_v: float) -> Optional[float]:
        """I(-|V|) / I(+|V|); inf when only the positive side vanishes, None when both do."""
        negative = self.current_at(-abs(bias_v))
        positive = self.current_at(abs(bias_v))
        if positive == 0.0:
            return None if negative == 0.0 else math.inf
        # end if
        return negative / positive
    # end def asymmetry

    def maximum(self) -> float:
        return max(self.totals) if self.totals else 0.0
    # end def maximum

    def normalized(self) -> Tuple[float, ...]:
        """Totals divided by the curve maximum (zeros when the curve vanishes)."""
        peak = self.maximum()
        if peak <= 0.0:
            return tuple(0.0 for _ in self.totals)
        # end if
        return tuple(value / peak for value in self.totals)
    # end def normalized

# end class BiasCurve


def bias_sweep(
        channels: Sequence[ChannelLike],
        model: ElectrodeModel,
        biases_v: Iterable[float],
        tip_lateral_nm: Tuple[float, float] = (0.0, 0.0),
        n_energy: int = DEFAULT_N_ENERGY,
        *,
        settings: GridSettings = GridSettings(),
        kernel: str = "isolated",
        workers: int = 1,
) -> BiasCurve:
    """Total inelastic current at each bias of ``biases_v``.

    Raises:
        CurrentConfigError: On an empty or non-finite bias list.
    """
    biases = [float(b) for b in biases_v]
    if not biases:
        raise CurrentConfigError("Bias list is empty")
    # end if
    if not all(math.isfinite(b) for b in biases):
        raise CurrentConfigError("Bias list contains non-finite values")
    # end if
    prepared = ensure_prepared(channels, model, settings, kernel=kernel, workers=workers)
    tip = (float(tip_lateral_nm[0]), float(tip_lateral_nm[1]))
    geometry = PairGeometry.build(model, prepared[0].spec, tip)
    results = [
        total_inelastic_current(prepared, model, bias, tip, n_energy, geometry=geometry)
        for bias in biases
    ]
    return BiasCurve(
        biases_v=tuple(biases),
        totals=tuple(r.total for r in results),
        channel_currents=tuple(r.channel_currents for r in results),
        tip_lateral_nm=tip,
    )
# end def bias_sweep
