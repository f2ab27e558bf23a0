"""Shared fixtures for the STMLDark test-suite."""

from __future__ import annotations

import numpy as np
import pytest

from stmldark.current import GridSettings, TransitionChannel, prepare_channels
from stmldark.density import GaussianDensityParams, GridSpec, ScalarGrid3D, TransitionDensity
from stmldark.electrodes import ElectrodeModel
from stmldark.utils.logger import Logger


@pytest.fixture(autouse=True)
def reset_logger():
    """Ensure each test works with a fresh singleton instance."""

    Logger._instance = None
    yield
    Logger._instance = None


@pytest.fixture()
def dark_params() -> GaussianDensityParams:
    return GaussianDensityParams()


@pytest.fixture()
def dark_transition(dark_params) -> TransitionDensity:
    return TransitionDensity.analytic(dark_params, 2.0, "dark")


@pytest.fixture()
def electrodes() -> ElectrodeModel:
    return ElectrodeModel()


@pytest.fixture()
def coarse_settings() -> GridSettings:
    """0.1 nm lattice over +/- 2 nm: fast, still resolving the density nodes."""
    return GridSettings(spacing_nm=0.1, lateral_half_extent_nm=2.0)


@pytest.fixture(scope="module")
def prepared_dark():
    """Dark Gaussian channel prepared once per module on the coarse grid."""
    transition = TransitionDensity.analytic(GaussianDensityParams(), 2.0, "dark")
    settings = GridSettings(spacing_nm=0.1, lateral_half_extent_nm=2.0)
    return prepare_channels([TransitionChannel(transition)], ElectrodeModel(), settings)


def _centred_spec(n: int, spacing: float) -> GridSpec:
    start = -0.5 * (n - 1) * spacing
    return GridSpec(origin=(start, start, start), spacing=(spacing, spacing, spacing), dims=(n, n, n))


@pytest.fixture()
def make_dipole_grid():
    """Factory for a z-odd density with unit z dipole (a.u.), zero beyond ``radius`` nodes."""

    def _make(n: int = 16, spacing: float = 0.5, radius: float = 5.0) -> ScalarGrid3D:
        spec = _centred_spec(n, spacing)
        x, y, z = spec.mesh()
        r2 = x * x + y * y + z * z
        values = z * np.exp(-r2 / 2.0) * (r2 <= (radius * spacing) ** 2)
        values = np.broadcast_to(values, spec.dims)
        moment = float(np.sum(values * z)) * spec.cell_volume
        return ScalarGrid3D(spec=spec, values=values / moment, label="dipole")
    # end def _make

    return _make


@pytest.fixture()
def make_blob_grid():
    """Factory for a positive Gaussian blob centred off-axis, zero beyond ``radius`` nodes."""

    def _make(n: int = 16, spacing: float = 0.5, radius: float = 5.0, centre=(1.0, -0.5, 1.5)) -> ScalarGrid3D:
        spec = _centred_spec(n, spacing)
        x, y, z = spec.mesh()
        cx, cy, cz = centre
        r2 = (x - cx) ** 2 + (y - cy) ** 2 + (z - cz) ** 2
        values = np.exp(-r2 / 1.5) * (r2 <= (radius * spacing) ** 2)
        return ScalarGrid3D(spec=spec, values=np.broadcast_to(values, spec.dims), label="blob")
    # end def _make

    return _make
