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

Analytic planar dark-state density.

The in-plane factor is

    (1 / 2 pi sigma) [ e^{-x^2/2 sigma1^2} / sigma1 - e^{-x^2/2 sigma2^2} / sigma2 ] e^{-y^2/2 sigma^2}

in nm^-2, multiplied by a delta function in z that confines the density to
the molecular plane. The delta is never sampled here; rasterization deposits
it on a single grid plane.
"""


# Imports
import math
from dataclasses import dataclass
from typing import Any, Iterable, Mapping

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq

from stmldark.utils.units import BOHR_NM

from .grid import DensityConfigError, DensityError


@dataclass(frozen=True)
class GaussianDensityParams:
    """Widths of the planar Gaussian density, in nm."""

    sigma_nm: float = 1.0
    sigma1_nm: float = 0.5
    sigma2_nm: float = 1.0

    def __post_init__(self):
        for name in ("sigma_nm", "sigma1_nm", "sigma2_nm"):
            value = float(getattr(self, name))
            if not math.isfinite(value) or value <= 0.0:
                raise DensityConfigError(f"'{name}' must be strictly positive, got {value}")
            # end if
            object.__setattr__(self, name, value)
        # end for
        if self.sigma1_nm == self.sigma2_nm:
            raise DensityConfigError("'sigma1_nm' and 'sigma2_nm' must differ (the density would vanish)")
        # end if
    # end def __post_init__

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "GaussianDensityParams":
        """Build parameters from a configuration table."""
        unknown = set(data) - {"sigma_nm", "sigma1_nm", "sigma2_nm"}
        if unknown:
            raise DensityConfigError(f"Unknown Gaussian density keys: {sorted(unknown)}")
        # end if
        return cls(**{key: float(value) for key, value in data.items()})
    # end def from_dict

    def to_dict(self) -> dict:
        return {"sigma_nm": self.sigma_nm, "sigma1_nm": self.sigma1_nm, "sigma2_nm": self.sigma2_nm}
    # end def to_dict

# end class GaussianDensityParams


def gaussian_plane_density(params: GaussianDensityParams, x_nm, y_nm) -> np.ndarray:
    """Vectorised in-plane factor (nm^-2) at broadcastable ``x_nm``, ``y_nm``."""
    x = np.asarray(x_nm, dtype=np.float64)
    y = np.asarray(y_nm, dtype=np.float64)
    s, s1, s2 = params.sigma_nm, params.sigma1_nm, params.sigma2_nm
    along_x = np.exp(-x * x / (2.0 * s1 * s1)) / s1 - np.exp(-x * x / (2.0 * s2 * s2)) / s2
    return along_x * np.exp(-y * y / (2.0 * s * s)) / (2.0 * math.pi * s)
# end def gaussian_plane_density


def eval_gaussian_density(params: GaussianDensityParams, point: Iterable[float]) -> float:
    """Evaluate the in-plane factor at a point of the molecular frame.

    Args:
        params: Gaussian widths.
        point: (x, y, z) in nm. The molecule is centred at the origin; z only
            has to be finite since the planar delta is carried separately.

    Returns:
        float: Density factor in nm^-2.

    Raises:
        DensityError: If the point is not a finite 3-vector.
    """
    coords = tuple(float(c) for c in point)
    if len(coords) != 3 or not all(math.isfinite(c) for c in coords):
        raise DensityError(f"Point must be a finite 3-vector, got {coords}")
    # end if
    return float(gaussian_plane_density(params, coords[0], coords[1]))
# end def eval_gaussian_density


def gaussian_zero_crossing(params: GaussianDensityParams) -> float:
    """Positive x at which the density changes sign along y = 0 (nm).

    Solved with a bracketing root finder on the x factor; the closed form
    ``sqrt(2 ln(s2/s1) s1^2 s2^2 / (s2^2 - s1^2))`` is available as
    :func:`gaussian_zero_crossing_closed_form`.
    """
    s1, s2 = params.sigma1_nm, params.sigma2_nm

    def along_x(x: float) -> float:
        return math.exp(-x * x / (2.0 * s1 * s1)) / s1 - math.exp(-x * x / (2.0 * s2 * s2)) / s2
    # end def along_x

    return brentq(along_x, 0.0, 10.0 * max(s1, s2), xtol=1e-15, rtol=4.0 * np.finfo(float).eps)
# end def gaussian_zero_crossing


def gaussian_zero_crossing_closed_form(params: GaussianDensityParams) -> float:
    s1, s2 = params.sigma1_nm, params.sigma2_nm
    return math.sqrt(2.0 * math.log(s2 / s1) * s1 * s1 * s2 * s2 / (s2 * s2 - s1 * s1))
# end def gaussian_zero_crossing_closed_form


def gaussian_potential(params: GaussianDensityParams, point: Iterable[float]) -> float:
    """Coulomb potential of the planar density at a point, without any grid.

    Each Gaussian term carries unit charge, so the potential is the difference
    of two anisotropic Gaussian potentials,

        (2 / sqrt(pi)) int_0^inf exp(-t^2 x^2 / (1 + 2 t^2 sx^2) - t^2 y^2 / (1 + 2 t^2 sy^2) - t^2 z^2)
                                 / sqrt((1 + 2 t^2 sx^2)(1 + 2 t^2 sy^2)) dt

    with z measured from the molecular plane.

    Args:
        params: Gaussian widths.
        point: (x, y, z) in nm.

    Returns:
        float: Potential in Hartree per unit charge.

    Raises:
        DensityError: If the point is not a finite 3-vector.
    """
    coords = tuple(float(c) for c in point)
    if len(coords) != 3 or not all(math.isfinite(c) for c in coords):
        raise DensityError(f"Point must be a finite 3-vector, got {coords}")
    # end if
    x2, y2, z2 = (c * c for c in coords)
    sy2 = params.sigma_nm ** 2

    def term(t: float, sx2: float) -> float:
        t2 = t * t
        ax, ay = 1.0 + 2.0 * t2 * sx2, 1.0 + 2.0 * t2 * sy2
        return math.exp(-t2 * x2 / ax - t2 * y2 / ay - t2 * z2) / math.sqrt(ax * ay)
    # end def term

    def integrand(t: float) -> float:
        return term(t, params.sigma1_nm ** 2) - term(t, params.sigma2_nm ** 2)
    # end def integrand

    # the integrand varies on the scale t ~ 1 / r
    split = 1.0 / max(math.sqrt(x2 + y2 + z2), params.sigma1_nm)
    near, _ = quad(integrand, 0.0, split, epsabs=1e-13, epsrel=1e-11, limit=400)
    far, _ = quad(integrand, split, math.inf, epsabs=1e-13, epsrel=1e-11, limit=400)
    return 2.0 / math.sqrt(math.pi) * (near + far) * BOHR_NM
# end def gaussian_potential


def gaussian_potential_zero_crossing(params: GaussianDensityParams, height_nm: float = 0.0) -> float:
    """Positive x at which the potential changes sign along y = 0 (nm).

    The potential zero lies outside the density zero of
    :func:`gaussian_zero_crossing` and moves further out with the height
    above the molecular plane.
    """
    start = gaussian_zero_crossing(params)
    return brentq(
        lambda x: gaussian_potential(params, (x, 0.0, height_nm)),
        start,
        10.0 * max(params.sigma1_nm, params.sigma2_nm),
        xtol=1e-10,
    )
# end def gaussian_potential_zero_crossing
