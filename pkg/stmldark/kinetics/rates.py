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

Three-level detection cycle: S0 -> S3 (dark, pumped by inelastic tunneling)
-> S17 (bright, laser pump) -> S0 (emission, gamma0) or S3 (gamma3).

dP0/dt  = -I P0                  + gamma0 P17
dP3/dt  =  I P0 - eta P3         + gamma3 P17
dP17/dt =         eta P3 - (gamma0 + gamma3) P17

I is the inelastic excitation rate (current over e). The dark state has no
direct decay channel to S0.
"""


# Imports
import math
from dataclasses import dataclass
from typing import Any, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from stmldark.errors import StmlDarkError


STATES = ("S0", "S3", "S17")

# Largest dt * rate accepted by the explicit integrator
STABILITY_LIMIT = 0.1


class KineticsError(StmlDarkError):
    """Base error of the kinetics package."""
# end class KineticsError


class KineticsStabilityError(KineticsError):
    """Raised when the requested time step is too large for the rates."""

    def __init__(self, dt_s: float, max_rate: float):
        self.dt_s = dt_s
        self.max_rate = max_rate
        self.suggested_dt_s = STABILITY_LIMIT / max_rate
        super().__init__(
            f"Time step {dt_s:.3g} s is unstable for a largest rate of {max_rate:.3g} 1/s "
            f"(dt * rate = {dt_s * max_rate:.3g} > {STABILITY_LIMIT}); use dt <= {self.suggested_dt_s:.3g} s"
        )
    # end def __init__

# end class KineticsStabilityError


class NoStationaryCycleError(KineticsError):
    """Raised when population piles up in a state with no way out."""

    def __init__(self, state: str):
        self.state = state
        super().__init__(f"No stationary detection cycle: state {state} has no decay path")
    # end def __init__

# end class NoStationaryCycleError


@dataclass(frozen=True)
class RateModel:
    """Rates of the detection cycle, all in 1/s.

    Attributes:
        pump_rate_ies_per_s: S0 -> S3 inelastic excitation rate (I / e).
        laser_pump_per_s: S3 -> S17 laser pump (eta).
        gamma0_per_s: S17 -> S0 emission.
        gamma3_per_s: S17 -> S3 decay; defaults to ``gamma0_per_s``.
    """

    pump_rate_ies_per_s: float = 0.0
    laser_pump_per_s: float = 1e8
    gamma0_per_s: float = 4e4
    gamma3_per_s: Optional[float] = None

    def __post_init__(self):
        if self.gamma3_per_s is None:
            object.__setattr__(self, "gamma3_per_s", self.gamma0_per_s)
        # end if
        for name in ("pump_rate_ies_per_s", "laser_pump_per_s", "gamma0_per_s", "gamma3_per_s"):
            value = float(getattr(self, name))
            if not math.isfinite(value) or value < 0.0:
                raise KineticsError(f"Rate '{name}' must be finite and >= 0, got {value}")
            # end if
            object.__setattr__(self, name, value)
        # end for
    # end def __post_init__

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "RateModel":
        keys = ("pump_rate_ies_per_s", "laser_pump_per_s", "gamma0_per_s", "gamma3_per_s")
        return cls(**{key: data[key] for key in keys if key in data})
    # end def from_dict

    @property
    def max_rate(self) -> float:
        """Largest total outflow of any state."""
        return max(self.pump_rate_ies_per_s, self.laser_pump_per_s, self.gamma0_per_s + self.gamma3_per_s)
    # end def max_rate

# end class RateModel


@dataclass(frozen=True)
class Populations:
    """Occupation probabilities of S0, S3 and S17."""

    p0: float
    p3: float
    p17: float

    def __post_init__(self):
        values = (float(self.p0), float(self.p3), float(self.p17))
        if not all(math.isfinite(v) and -1e-15 <= v <= 1.0 + 1e-15 for v in values):
            raise KineticsError(f"Populations must lie in [0, 1], got {values}")
        # end if
        if abs(math.fsum(values) - 1.0) > 1e-12:
            raise KineticsError(f"Populations must sum to 1, got {math.fsum(values)!r}")
        # end if
        object.__setattr__(self, "p0", values[0])
        object.__setattr__(self, "p3", values[1])
        object.__setattr__(self, "p17", values[2])
    # end def __post_init__

    @classmethod
    def from_vector(cls, vector: Sequence[float]) -> "Populations":
        """Clip round-off negatives and renormalise."""
        values = np.clip(np.asarray(vector, dtype=np.float64), 0.0, None)
        total = math.fsum(values)
        if not total > 0.0:
            raise KineticsError("Population vector has no weight")
        # end if
        values = values / total
        return cls(*(float(v) for v in values))
    # end def from_vector

    @classmethod
    def ground(cls) -> "Populations":
        return cls(1.0, 0.0, 0.0)
    # end def ground

    def as_array(self) -> np.ndarray:
        return np.array([self.p0, self.p3, self.p17])
    # end def as_array

# end class Populations


def rate_generator(model: RateModel) -> np.ndarray:
    """Generator G with dP/dt = G P; every column sums to zero.

    G[i, j] is the rate from state j to state i in the order of ``STATES``.
    """
    pump, eta = model.pump_rate_ies_per_s, model.laser_pump_per_s
    g0, g3 = model.gamma0_per_s, model.gamma3_per_s
    return np.array([
        [-pump, 0.0, g0],
        [pump, -eta, g3],
        [0.0, eta, -(g0 + g3)],
    ])
# end def rate_generator


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Recorded populations; ``populations[k]`` holds (p0, p3, p17) at ``times_s[k]``."""

    times_s: np.ndarray
    populations: np.ndarray

    @property
    def final(self) -> Populations:
        return Populations.from_vector(self.populations[-1])
    # end def final

    def max_sum_error(self) -> float:
        return float(np.max(np.abs(self.populations.sum(axis=1) - 1.0)))
    # end def max_sum_error

# end class Trajectory


def _transfer_matrix(generator: np.ndarray, dt: float) -> np.ndarray:
    """One classical Runge-Kutta step of a linear system, as a matrix."""
    step = generator * dt
    identity = np.eye(generator.shape[0])
    result = identity.copy()
    term = identity
    for order in range(1, 5):
        term = term @ step / order
        result = result + term
    # end for
    return result
# end def _transfer_matrix


def evolve(
        model: RateModel,
        p_init: Populations,
        t_final_s: float,
        dt_s: float,
        record_every: int = 1,
) -> Trajectory:
    """Integrate the rate equations with fourth order Runge-Kutta steps.

    The last step is shortened to land on ``t_final_s``.

    Args:
        model: Rates.
        p_init: Initial populations.
        t_final_s: End time (s, >= 0).
        dt_s: Step (s, > 0).
        record_every: Record one state every this many steps (the final state
            is always recorded).

    Raises:
        KineticsError: On invalid times or ``record_every``.
        KineticsStabilityError: If dt * max_rate exceeds the stability limit.
    """
    if not (math.isfinite(dt_s) and dt_s > 0.0):
        raise KineticsError(f"Time step must be > 0, got {dt_s}")
    # end if
    if not (math.isfinite(t_final_s) and t_final_s >= 0.0):
        raise KineticsError(f"Final time must be >= 0, got {t_final_s}")
    # end if
    if record_every < 1:
        raise KineticsError(f"record_every must be >= 1, got {record_every}")
    # end if
    generator = rate_generator(model)
    max_rate = float(np.max(np.abs(np.diag(generator))))
    if dt_s * max_rate > STABILITY_LIMIT:
        raise KineticsStabilityError(dt_s, max_rate)
    # end if

    full_steps = int(math.floor(t_final_s / dt_s * (1.0 + 1e-12)))
    remainder = t_final_s - full_steps * dt_s
    if remainder <= 1e-12 * dt_s:
        remainder = 0.0
    # end if
    transfer = _transfer_matrix(generator, dt_s)

    state = p_init.as_array()
    times: List[float] = [0.0]
    states: List[np.ndarray] = [state]
    for step in range(1, full_steps + 1):
        state = transfer @ state
        if step % record_every == 0 or (step == full_steps and remainder == 0.0):
            times.append(step * dt_s)
            states.append(state)
        # end if
    # end for
    if remainder > 0.0:
        state = _transfer_matrix(generator, remainder) @ state
        times.append(t_final_s)
        states.append(state)
    # end if
    return Trajectory(times_s=np.asarray(times), populations=np.vstack(states))
# end def evolve


class _Blocked(Exception):
    def __init__(self, index: int):
        self.index = index
    # end def __init__
# end class _Blocked


def _state_reduction(rates: np.ndarray) -> np.ndarray:
    """Stationary vector by subtraction-free state reduction.

    ``rates[i, j]`` is the rate from state i to state j (diagonal ignored).
    States are eliminated from the last to the second.
    """
    a = rates.astype(np.float64).copy()
    np.fill_diagonal(a, 0.0)
    n = a.shape[0]
    for k in range(n - 1, 0, -1):
        outflow = math.fsum(a[k, :k])
        if not outflow > 0.0:
            raise _Blocked(k)
        # end if
        a[:k, k] /= outflow
        a[:k, :k] += np.outer(a[:k, k], a[k, :k])
    # end for
    pi = np.zeros(n)
    pi[0] = 1.0
    for j in range(1, n):
        pi[j] = math.fsum(pi[:j] * a[:j, j])
    # end for
    return pi / math.fsum(pi)
# end def _state_reduction


def steady_state(model: RateModel) -> Populations:
    """Stationary populations of the cycle.

    Returns (1, 0, 0) when the inelastic pump is off.

    Raises:
        NoStationaryCycleError: If population would pile up in a state with
            no outgoing rate (e.g. S3 when the laser pump is off).
    """
    if model.pump_rate_ies_per_s == 0.0:
        return Populations.ground()
    # end if
    generator = rate_generator(model)
    rates = generator.T
    try:
        return Populations.from_vector(_state_reduction(rates))
    except _Blocked as blocked:
        outflow = -generator[blocked.index, blocked.index]
        if not outflow > 0.0:
            raise NoStationaryCycleError(STATES[blocked.index]) from None
        # end if
    # end try
    # S0 is transient (no emission back to it): reduce with S3 kept last
    order = [1, 2, 0]
    try:
        reduced = _state_reduction(rates[np.ix_(order, order)])
    except _Blocked as blocked:
        raise NoStationaryCycleError(STATES[order[blocked.index]]) from None
    # end try
    pi = np.zeros(3)
    pi[order] = reduced
    return Populations.from_vector(pi)
# end def steady_state


def photon_emission_rate(model: RateModel) -> float:
    """Detected photon rate gamma0 * P17 at steady state (1/s)."""
    return model.gamma0_per_s * steady_state(model).p17
# end def photon_emission_rate


def closed_form_p17(model: RateModel) -> float:
    """P17 = I / (gamma0 + I (gamma0 + gamma3 + eta) / eta)."""
    pump = model.pump_rate_ies_per_s
    if pump == 0.0:
        return 0.0
    # end if
    eta = model.laser_pump_per_s
    if eta == 0.0:
        raise NoStationaryCycleError("S3")
    # end if
    return pump / (model.gamma0_per_s + pump * (model.gamma0_per_s + model.gamma3_per_s + eta) / eta)
# end def closed_form_p17


def closed_form_emission_rate(model: RateModel) -> float:
    return model.gamma0_per_s * closed_form_p17(model)
# end def closed_form_emission_rate


def stationary_residual(model: RateModel, populations: Populations) -> float:
    """max |G p|, zero at a fixed point."""
    return float(np.max(np.abs(rate_generator(model) @ populations.as_array())))
# end def stationary_residual


def steady_state_report(model: RateModel) -> Tuple[Tuple[str, float], ...]:
    """Key-value pairs of the steady state (gamma_emission_per_s, p0, p3, p17)."""
    populations = steady_state(model)
    return (
        ("gamma_emission_per_s", model.gamma0_per_s * populations.p17),
        ("p0", populations.p0),
        ("p3", populations.p3),
        ("p17", populations.p17),
    )
# end def steady_state_report
