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

Constant-height raster scans.

Pixels are split into rows, evaluated by a thread pool, and written back by
index. Every pixel is computed by the same deterministic code path, so the
map does not depend on the thread count or on scheduling.
"""


# Imports
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Sequence, Tuple

import numpy as np

from stmldark.current import (
    DEFAULT_N_ENERGY,
    GridSettings,
    ensure_prepared,
    total_inelastic_current,
)
from stmldark.current.inelastic import ChannelLike
from stmldark.electrodes import BiasConfig, ElectrodeModel
from stmldark.errors import StmlDarkError
from stmldark.utils.logger import Logger
from .map2d import CurrentMap2D, ScanError, check_uniform_axis


def resolve_threads(threads: int) -> int:
    """Thread count, with 0 meaning one per CPU."""
    if threads < 0:
        raise ScanError(f"Thread count must be >= 0, got {threads}")
    # end if
    return threads or (os.cpu_count() or 1)
# end def resolve_threads


def scan_axis(min_nm: float, max_nm: float, count: int) -> np.ndarray:
    """Uniform axis of ``count`` pixels from ``min_nm`` to ``max_nm`` inclusive."""
    if count < 1:
        raise ScanError(f"Pixel count must be >= 1, got {count}")
    # end if
    if count == 1:
        if min_nm != max_nm:
            raise ScanError("A single-pixel axis needs min == max")
        # end if
        return np.array([float(min_nm)])
    # end if
    if not max_nm > min_nm:
        raise ScanError(f"Axis maximum {max_nm} must exceed minimum {min_nm}")
    # end if
    return np.linspace(float(min_nm), float(max_nm), int(count))
# end def scan_axis


def scan_map(
        channels: Sequence[ChannelLike],
        model: ElectrodeModel,
        bias_v: float,
        x_axis_nm: Sequence[float],
        y_axis_nm: Sequence[float],
        n_energy: int = DEFAULT_N_ENERGY,
        *,
        settings: GridSettings = GridSettings(),
        kernel: str = "isolated",
        threads: int = 1,
) -> CurrentMap2D:
    """Total inelastic current at every tip position of the raster.

    Args:
        channels: Raw or prepared channels.
        model: Electrode model (fixed tip height).
        bias_v: Bias (V).
        x_axis_nm: Uniform x positions.
        y_axis_nm: Uniform y positions.
        n_energy: Trapezoid nodes per window.
        settings: Grid settings used when channels need preparing.
        kernel: Coulomb kernel used when channels need preparing.
        threads: Worker threads, 0 for one per CPU.

    Returns:
        CurrentMap2D: Raw map with per-channel raw maps attached.

    Raises:
        ScanError: If a pixel fails; the message names its coordinates.
    """
    logger = Logger.get()
    x_axis = check_uniform_axis(x_axis_nm, "x")
    y_axis = check_uniform_axis(y_axis_nm, "y")
    workers = resolve_threads(threads)
    prepared = ensure_prepared(channels, model, settings, kernel=kernel, workers=workers)
    labels = [c.label for c in prepared]
    bias = BiasConfig(bias_v)

    ny, nx = y_axis.size, x_axis.size
    per_channel = np.zeros((len(prepared), ny, nx))
    open_windows = any(bias.energy_window(model.fermi_energy_ev, c.energy_gap_ev) is not None for c in prepared)

    def scan_row(j: int) -> Tuple[int, np.ndarray]:
        row = np.zeros((len(prepared), nx))
        for i in range(nx):
            tip = (float(x_axis[i]), float(y_axis[j]))
            try:
                result = total_inelastic_current(prepared, model, bias.bias_v, tip, n_energy)
            except StmlDarkError as exc:
                raise ScanError(f"Pixel (x={tip[0]:.6g} nm, y={tip[1]:.6g} nm) failed: {exc}", *tip) from exc
            # end try
            row[:, i] = [value for _, value in result.channel_currents]
        # end for
        return j, row
    # end def scan_row

    if open_windows:
        logger.info(f"Scanning {nx}x{ny} pixels at {bias.bias_v:+.3f} V with {workers} thread(s)")
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for j, row in pool.map(scan_row, range(ny)):
                per_channel[:, j, :] = row
            # end for
        # end with
    else:
        logger.info(f"Bias {bias.bias_v:+.3f} V is below every channel threshold; map is zero")
    # end if

    total = per_channel[0].copy()
    for k in range(1, len(prepared)):
        total = total + per_channel[k]
    # end for
    metadata = {
        "bias_v": bias.bias_v,
        "tip_height_nm": model.tip_height_nm,
        "n_energy": n_energy,
        "kernel": prepared[0].kernel,
        "channels": labels,
        "energy_gaps_ev": [c.energy_gap_ev for c in prepared],
    }
    channel_values = {}
    for k, label in enumerate(labels):
        key, suffix = label, 2
        while key in channel_values:
            key, suffix = f"{label}#{suffix}", suffix + 1
        # end while
        channel_values[key] = per_channel[k]
    # end for
    return CurrentMap2D(x_nm=x_axis, y_nm=y_axis, values=total, metadata=metadata, channel_values=channel_values)
# end def scan_map
