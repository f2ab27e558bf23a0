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

Small numerical helpers shared across packages.
"""


# Imports
import math
from typing import Sequence

import numpy as np


# Prime factors accepted by the transform size policy
TRANSFORM_PRIMES = (2, 3, 5, 7)


def is_transform_size(n: int) -> bool:
    """Check that ``n`` is a product of 2, 3, 5 and 7 only.

    Args:
        n (int): Candidate axis length.

    Returns:
        bool: True when the length is accepted by the transform size policy.
    """
    if n < 1:
        return False
    # end if
    for prime in TRANSFORM_PRIMES:
        while n % prime == 0:
            n //= prime
        # end while
    # end for
    return n == 1
# end def is_transform_size


def next_transform_size(n: int) -> int:
    """Return the smallest accepted transform length that is >= ``n``."""
    candidate = max(int(n), 1)
    while not is_transform_size(candidate):
        candidate += 1
    # end while
    return candidate
# end def next_transform_size


def trapezoid_weights(n: int, width: float) -> np.ndarray:
    """Composite trapezoid weights for ``n`` equally spaced nodes.

    Args:
        n (int): Number of nodes, endpoints included (n >= 2).
        width (float): Length of the integration interval.

    Returns:
        np.ndarray: Weights summing to ``width``.
    """
    if n < 2:
        raise ValueError(f"Trapezoid rule needs at least 2 nodes, got {n}")
    # end if
    step = width / (n - 1)
    weights = np.full(n, step)
    weights[0] = weights[-1] = 0.5 * step
    return weights
# end def trapezoid_weights


def compensated_dot(weights: Sequence[float], values: Sequence[float]) -> float:
    """Weighted sum with exact rounding of the accumulation (``math.fsum``)."""
    return math.fsum(float(w) * float(v) for w, v in zip(weights, values))
# end def compensated_dot
