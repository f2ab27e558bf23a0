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

Electrode geometry, energies and bias bookkeeping.
"""


# Imports
import math
from dataclasses import asdict, dataclass
from typing import Any, Mapping, Optional

from stmldark.errors import StmlDarkError


class ElectrodeModelError(StmlDarkError):
    """Raised on invalid electrode parameters or out-of-domain energies."""
# end class ElectrodeModelError


class VacuumLevelError(ElectrodeModelError):
    """Raised when a bias lifts tunnelling states to or above the vacuum level."""

    def __init__(self, message: str, limit_v: float):
        super().__init__(message)
        self.limit_v = limit_v
    # end def __init__

# end class VacuumLevelError


def vacuum_limit_v(fermi_energy_ev: float, energy_gap_ev: float) -> float:
    """Largest |V| (exclusive) keeping every window state below vacuum."""
    return energy_gap_ev - fermi_energy_ev
# end def vacuum_limit_v


@dataclass(frozen=True)
class ElectrodeModel:
    """Tip sphere above a planar substrate.

    Energies are relative to the vacuum level. The tip sphere of radius
    ``tip_radius_nm`` is centred at (x_A, y_A, tip_height_nm + tip_radius_nm),
    so ``tip_height_nm`` is the apex to molecular-plane gap.
    """

    fermi_energy_ev: float = -4.64
    tip_radius_nm: float = 0.5
    tip_height_nm: float = 1.0
    substrate_z_nm: float = -0.3
    dos_tip: float = 1.0
    dos_substrate: float = 1.0

    def __post_init__(self):
        for name, value in asdict(self).items():
            if not math.isfinite(float(value)):
                raise ElectrodeModelError(f"'{name}' must be finite, got {value}")
            # end if
            object.__setattr__(self, name, float(value))
        # end for
        if self.fermi_energy_ev >= 0.0:
            raise ElectrodeModelError(f"Fermi energy must be below vacuum (< 0 eV), got {self.fermi_energy_ev}")
        # end if
        if self.tip_radius_nm <= 0.0 or self.tip_height_nm <= 0.0:
            raise ElectrodeModelError("Tip radius and tip height must be strictly positive")
        # end if
        if self.substrate_z_nm > 0.0:
            raise ElectrodeModelError(f"Substrate surface must lie at z <= 0, got {self.substrate_z_nm} nm")
        # end if
        if self.dos_tip <= 0.0 or self.dos_substrate <= 0.0:
            raise ElectrodeModelError("Densities of states must be strictly positive")
        # end if
    # end def __post_init__

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "ElectrodeModel":
        """Build a model from an ``[electrodes]`` table, defaults filling gaps."""
        return cls(**dict(data))
    # end def from_dict

    def to_dict(self) -> dict:
        return asdict(self)
    # end def to_dict

    def with_height(self, tip_height_nm: float) -> "ElectrodeModel":
        return ElectrodeModel(**{**asdict(self), "tip_height_nm": tip_height_nm})
    # end def with_height

# end class ElectrodeModel


@dataclass(frozen=True)
class EnergyWindow:
    """Substrate energies able to tunnel inelastically through one transition.

    Attributes:
        lower_ev: Lowest substrate state energy E_n.
        upper_ev: Highest substrate state energy E_n.
        tip_offset_ev: Tip energy is ``xi_k = E_n + tip_offset_ev``.
    """

    lower_ev: float
    upper_ev: float
    tip_offset_ev: float

    @property
    def width_ev(self) -> float:
        return self.upper_ev - self.lower_ev
    # end def width_ev

    def tip_energy(self, substrate_energy_ev: float) -> float:
        return substrate_energy_ev + self.tip_offset_ev
    # end def tip_energy

# end class EnergyWindow


@dataclass(frozen=True)
class BiasConfig:
    """Sample bias (V). The tip levels are shifted by e*V."""

    bias_v: float

    def __post_init__(self):
        if not math.isfinite(float(self.bias_v)):
            raise ElectrodeModelError(f"Bias must be finite, got {self.bias_v}")
        # end if
        object.__setattr__(self, "bias_v", float(self.bias_v))
    # end def __post_init__

    @property
    def polarity(self) -> int:
        return (self.bias_v > 0.0) - (self.bias_v < 0.0)
    # end def polarity

    def energy_window(self, fermi_energy_ev: float, energy_gap_ev: float) -> Optional[EnergyWindow]:
        """Inelastic window for one transition, or None when it is empty.

        Negative bias: E_n in [mu0 + eV + E_eg, mu0], xi_k = E_n - eV - E_eg.
        Positive bias: E_n in [mu0, mu0 + eV - E_eg], xi_k = E_n - eV + E_eg.
        The window is empty when |V| <= E_eg / e. The highest state energy in
        either window is mu0 + |V| - E_eg and must stay below the vacuum level
        (0 eV), which bounds |V| by (E_eg - mu0) / e.

        Raises:
            VacuumLevelError: If the window reaches the vacuum level.
        """
        if abs(self.bias_v) - energy_gap_ev <= 0.0:
            return None
        # end if
        limit_v = vacuum_limit_v(fermi_energy_ev, energy_gap_ev)
        if abs(self.bias_v) >= limit_v:
            top_ev = fermi_energy_ev + abs(self.bias_v) - energy_gap_ev
            raise VacuumLevelError(
                f"Bias {self.bias_v:+g} V lifts the tunnelling window to {top_ev:+.4g} eV, at or above "
                f"the vacuum level (0 eV); |V| must stay below {limit_v:.4g} V",
                limit_v=limit_v,
            )
        # end if
        if self.bias_v < 0.0:
            return EnergyWindow(
                lower_ev=fermi_energy_ev + self.bias_v + energy_gap_ev,
                upper_ev=fermi_energy_ev,
                tip_offset_ev=-self.bias_v - energy_gap_ev,
            )
        # end if
        return EnergyWindow(
            lower_ev=fermi_energy_ev,
            upper_ev=fermi_energy_ev + self.bias_v - energy_gap_ev,
            tip_offset_ev=-self.bias_v + energy_gap_ev,
        )
    # end def energy_window

# end class BiasConfig
