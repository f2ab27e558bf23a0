"""Tests for the continuum-normalised Fourier transform."""

from __future__ import annotations

import warnings
from pathlib import Path

import numpy as np
import pytest

import stmldark
from stmldark.density import (
    DensityConfigError,
    GridSpec,
    ScalarGrid3D,
    fourier_transform,
    inverse_fourier,
    reflect,
)


def _gaussian_grid(n=32, h=0.5):
    start = -0.5 * (n - 1) * h
    spec = GridSpec(origin=(start, start, start), spacing=(h, h, h), dims=(n, n, n))
    x, y, z = spec.mesh()
    return ScalarGrid3D(spec=spec, values=np.exp(-(x * x + y * y + z * z) / 2.0), label="gauss")


def test_gaussian_transform_magnitude():
    h = 0.5
    field = fourier_transform(_gaussian_grid(h=h))
    qx, qy, qz = field.wavevectors()
    expected = np.exp(-(qx * qx + qy * qy + qz * qz) / 2.0)
    # Near the Nyquist wavevector the aliased tail is about exp(-(pi / h) ** 2 / 2)
    inner = np.maximum(np.maximum(np.abs(qx), np.abs(qy)), np.abs(qz)) <= np.pi / (2.0 * h)
    assert inner.sum() > 1000
    assert np.max(np.abs(np.abs(field.amplitudes) - expected)[inner]) < 1e-10


def test_round_trip_and_parseval():
    rng = np.random.default_rng(7)
    spec = GridSpec(origin=(-1.0, 0.5, 2.0), spacing=(0.3, 0.4, 0.5), dims=(12, 10, 14))
    grid = ScalarGrid3D(spec=spec, values=rng.normal(size=spec.dims))

    field = fourier_transform(grid)
    back = inverse_fourier(field)
    assert np.max(np.abs(back.values - grid.values)) < 1e-12
    assert field.norm_squared() == pytest.approx(float(np.sum(grid.values ** 2)) * spec.cell_volume, rel=1e-10)
    assert field.conjugate_symmetry_error() < 1e-12


def test_transform_with_workers_matches_serial():
    grid = _gaussian_grid(n=16)
    assert np.allclose(fourier_transform(grid, workers=2).amplitudes, fourier_transform(grid).amplitudes)


def test_rejects_non_smooth_dims():
    spec = GridSpec(origin=(0, 0, 0), spacing=(1, 1, 1), dims=(11, 4, 4))
    with pytest.raises(DensityConfigError, match="padded_to_transform"):
        fourier_transform(ScalarGrid3D(spec=spec, values=np.zeros(spec.dims)))


def test_reflect_indices():
    assert reflect(np.arange(6)).tolist() == [0, 5, 4, 3, 2, 1]
    cube = np.arange(27).reshape(3, 3, 3)
    assert reflect(cube)[1, 2, 0] == cube[2, 1, 0]


def test_spacings_of_reciprocal_grid():
    field = fourier_transform(_gaussian_grid(n=16))
    assert field.dq == pytest.approx((2 * np.pi / 8.0,) * 3)
    assert field.dvq == pytest.approx((2 * np.pi / 8.0) ** 3)


def test_package_sources_compile_without_warnings():
    root = Path(stmldark.__file__).parent
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        for path in sorted(root.rglob("*.py")):
            compile(path.read_text(encoding="utf-8"), str(path), "exec")
