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

Transition matrix element between a transition density and a pair density.

N = int int rho_T(r) rho_pair(r') / |r - r'| d^3r d^3r'  (Hartree, e^2 = 1),
evaluated in reciprocal space, through the potential of one factor, or by a
direct double sum used as the reference.
"""


# Imports
import math
from dataclasses import dataclass
from typing import Optional, Tuple, Union

import numpy as np
import scipy.fft
from scipy.spatial.distance import cdist

from stmldark.density.grid import DensityConfigError, ScalarGrid3D
from stmldark.density.spectral import reflect
from stmldark.density.transition import TransitionDensity, rasterize
from stmldark.electrodes.wavefunctions import PairDensity
from stmldark.utils.logger import Logger
from stmldark.utils.units import hartree_to_ev
from .coulomb import coulomb_potential
from .kernel import CouplingConfigError, CouplingError, check_kernel, kernel_spectrum, padded_dims, self_cell_value


# Default cap on node pairs of the direct sum
DEFAULT_DIRECT_MAX_PAIRS = 200_000_000

# Source nodes per cdist block
_DIRECT_CHUNK = 512

TransitionLike = Union[TransitionDensity, ScalarGrid3D]
PairLike = Union[PairDensity, ScalarGrid3D]


class DirectSizeError(CouplingError):
    """Raised when the direct double sum exceeds its pair cap."""

    def __init__(self, pairs: int, cap: int):
        super().__init__(
            f"Direct double sum over {pairs} node pairs refused (cap {cap}); "
            f"use a coarser grid or raise coupling.direct_max_pairs"
        )
        self.pairs = pairs
        self.cap = cap
    # end def __init__

# end class DirectSizeError


@dataclass(frozen=True)
class MatrixElement:
    """Value of N for one transition and one electrode state pair.

    Attributes:
        value: Real part (Hartree).
        imag_residue: Imaginary part left by the spectral route.
        transition_label: Label of the transition density.
        substrate_energy_ev: E_n, if known.
        tip_energy_ev: xi_k, if known.
        tip_lateral_nm: Tip position, if known.
        route: ``spectral``, ``potential`` or ``direct``.
    """

    value: float
    imag_residue: float = 0.0
    transition_label: str = ""
    substrate_energy_ev: Optional[float] = None
    tip_energy_ev: Optional[float] = None
    tip_lateral_nm: Optional[Tuple[float, float]] = None
    route: str = "spectral"

    @property
    def value_ev(self) -> float:
        return hartree_to_ev(self.value)
    # end def value_ev

# end class MatrixElement


def _resolve(transition: TransitionLike, pair: PairLike) -> Tuple[ScalarGrid3D, ScalarGrid3D, dict]:
    """Bring both fields onto the pair grid and collect result metadata."""
    meta = {}
    if isinstance(pair, PairDensity):
        meta.update(
            substrate_energy_ev=pair.substrate_energy_ev,
            tip_energy_ev=pair.tip_energy_ev,
            tip_lateral_nm=pair.tip_lateral_nm,
        )
        pair_grid = pair.grid
    else:
        pair_grid = pair
    # end if

    if isinstance(transition, TransitionDensity):
        meta["transition_label"] = transition.label
        try:
            transition_grid = rasterize(transition, pair_grid.spec)
        except DensityConfigError as exc:
            raise CouplingConfigError(f"Transition '{transition.label}' does not fit the pair grid: {exc}") from exc
        # end try
    else:
        meta["transition_label"] = transition.label
        transition_grid = transition
    # end if

    if not transition_grid.spec.same_geometry(pair_grid.spec):
        raise CouplingConfigError(
            f"Incommensurate grids: transition {transition_grid.dims} at {transition_grid.origin_nm} nm "
            f"vs pair {pair_grid.dims} at {pair_grid.origin_nm} nm "
            f"(spacings {transition_grid.spacing_nm} / {pair_grid.spacing_nm} nm)"
        )
    # end if
    return transition_grid, pair_grid, meta
# end def _resolve


def matrix_element(
        transition: TransitionLike,
        pair: PairLike,
        *,
        route: str = "spectral",
        kernel: str = "isolated",
        workers: int = 1,
) -> MatrixElement:
    """Coulomb coupling of a transition density with a pair density.

    Args:
        transition: Transition density, rasterized onto the pair grid when
            analytic, or a grid with the pair's geometry.
        pair: Pair density (or plain grid).
        route: ``"spectral"`` sums rho_T(q) rho_pair(-q) K(q) over the padded
            reciprocal grid; ``"potential"`` integrates rho_pair against the
            potential of rho_T.
        kernel: ``"isolated"`` or ``"periodic"``.
        workers: Threads given to ``scipy.fft``.

    Returns:
        MatrixElement: N in Hartree.

    Raises:
        CouplingConfigError: On incommensurate grids, unknown route or kernel.
    """
    check_kernel(kernel)
    rho_t, rho_p, meta = _resolve(transition, pair)
    spec = rho_t.spec

    if route == "potential":
        potential = coulomb_potential(rho_t, kernel=kernel, workers=workers)
        value = float(np.sum(rho_p.values * potential.values)) * spec.cell_volume
        return MatrixElement(value=value, route=route, **meta)
    elif route != "spectral":
        raise CouplingConfigError(f"Unknown matrix element route '{route}'")
    # end if

    shape = padded_dims(spec.dims)
    total = math.prod(shape)
    scale = spec.cell_volume / (2.0 * math.pi) ** 1.5 * total
    f_t = scipy.fft.ifftn(rho_t.values, s=shape, workers=workers) * scale
    f_p = scipy.fft.ifftn(rho_p.values, s=shape, workers=workers) * scale
    dvq = (2.0 * math.pi) ** 3 / (total * spec.cell_volume)
    result = np.sum(f_t * reflect(f_p) * kernel_spectrum(spec, kernel)) * dvq
    residue = float(result.imag)
    if abs(residue) > 1e-10 * max(abs(result.real), 1e-300):
        Logger.get().diagnostic(
            "imaginary-residue",
            "spectral matrix element has a large imaginary part",
            real=f"{result.real:.6g}",
            imag=f"{residue:.3g}",
        )
    # end if
    return MatrixElement(value=float(result.real), imag_residue=residue, route=route, **meta)
# end def matrix_element


def matrix_element_direct(
        transition: TransitionLike,
        pair: PairLike,
        *,
        max_pairs: int = DEFAULT_DIRECT_MAX_PAIRS,
) -> MatrixElement:
    """Reference double sum over node pairs.

    Only nodes where a field is nonzero take part. Coincident nodes use the
    self-cell value of the kernel. Block partial sums are combined with
    ``math.fsum``.

    Raises:
        DirectSizeError: If the number of node pairs exceeds ``max_pairs``.
        CouplingConfigError: On incommensurate grids.
    """
    rho_t, rho_p, meta = _resolve(transition, pair)
    spec = rho_t.spec
    x, y, z = spec.mesh()
    coords = np.stack(np.broadcast_arrays(x, y, z), axis=-1)

    mask_t = rho_t.values != 0.0
    mask_p = rho_p.values != 0.0
    pairs = int(np.count_nonzero(mask_t)) * int(np.count_nonzero(mask_p))
    if pairs > max_pairs:
        raise DirectSizeError(pairs, max_pairs)
    # end if
    if pairs == 0:
        return MatrixElement(value=0.0, route="direct", **meta)
    # end if

    charges_t = rho_t.values[mask_t] * spec.cell_volume
    charges_p = rho_p.values[mask_p] * spec.cell_volume
    points_t = coords[mask_t]
    points_p = coords[mask_p]
    g_self = self_cell_value(spec.spacing)

    partials = []
    for start in range(0, len(points_t), _DIRECT_CHUNK):
        distance = cdist(points_t[start:start + _DIRECT_CHUNK], points_p)
        coincident = distance == 0.0
        distance[coincident] = 1.0
        green = 1.0 / distance
        green[coincident] = g_self
        partials.append(float(charges_t[start:start + _DIRECT_CHUNK] @ (green @ charges_p)))
    # end for
    return MatrixElement(value=math.fsum(partials), route="direct", **meta)
# end def matrix_element_direct
