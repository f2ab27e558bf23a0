"""Tests for the cube file reader and writer."""

from __future__ import annotations

import math

import numpy as np
import pytest

from stmldark.density import (
    CubeParseError,
    GaussianDensityParams,
    GridSpec,
    NeutralityError,
    ScalarGrid3D,
    TransitionDensity,
    eval_gaussian_density,
    load_cube,
    rasterize,
    read_cube_grid,
    read_cube_spec,
    write_cube,
)
from stmldark.utils.units import BOHR_NM


def _field(x, y, z):
    return z * np.exp(-(x * x + 2.0 * y * y + z * z))


def _cube_text(dims=(4, 5, 6), spacing=0.4, natoms=1, extra=None, orbital=None, per_line=5):
    origin = tuple(-0.5 * (n - 1) * spacing for n in dims)
    lines = ["fixture cube", "z-odd test field"]
    lines.append(f"{natoms:5d} {origin[0]:.17e} {origin[1]:.17e} {origin[2]:.17e}")
    for axis in range(3):
        step = [0.0, 0.0, 0.0]
        step[axis] = spacing
        lines.append(f"{dims[axis]:5d} {step[0]:.17e} {step[1]:.17e} {step[2]:.17e}")
    for _ in range(abs(natoms)):
        lines.append("    6    6.000000    0.000000    0.000000    0.000000")
    if orbital is not None:
        lines.append(orbital)
    values = []
    for i in range(dims[0]):
        for j in range(dims[1]):
            for k in range(dims[2]):
                values.append(_field(origin[0] + i * spacing, origin[1] + j * spacing, origin[2] + k * spacing))
    values += extra or []
    for start in range(0, len(values), per_line):
        lines.append(" ".join(f"{v:.17e}" for v in values[start:start + per_line]))
    return "\n".join(lines) + "\n", origin


def _dark_plane_cube_text(n=35, nz=5, spacing_nm=0.1):
    """Dark density on the plane z = 0, written without any package helper."""
    bohr_nm = 0.052917721
    h = spacing_nm / bohr_nm
    origin = (-0.5 * (n - 1) * h, -0.5 * (n - 1) * h, -0.5 * (nz - 1) * h)
    lines = ["dark plane", "planar delta on one node plane"]
    lines.append(f"    0 {origin[0]:.17e} {origin[1]:.17e} {origin[2]:.17e}")
    for axis, count in enumerate((n, n, nz)):
        step = [0.0, 0.0, 0.0]
        step[axis] = h
        lines.append(f"{count:5d} {step[0]:.17e} {step[1]:.17e} {step[2]:.17e}")
    for i in range(n):
        x = (i - (n - 1) // 2) * spacing_nm
        for j in range(n):
            y = (j - (n - 1) // 2) * spacing_nm
            along_x = math.exp(-x * x / 0.5) / 0.5 - math.exp(-x * x / 2.0)
            plane = along_x * math.exp(-y * y / 2.0) / (2.0 * math.pi)
            column = [0.0] * nz
            # nm^-2 to Bohr^-2, then the delta weight 1 / dz
            column[(nz - 1) // 2] = plane * bohr_nm ** 2 / h
            lines.append(" ".join(f"{v:.17e}" for v in column))
        # end for
    # end for
    return "\n".join(lines) + "\n"

def test_reads_header_and_values(tmp_path):
    text, origin = _cube_text()
    path = tmp_path / "dark.cube"
    path.write_text(text)

    grid = read_cube_grid(path)
    assert grid.label == "dark"
    assert grid.dims == (4, 5, 6)
    assert grid.spec.origin == pytest.approx(origin)
    assert grid.spec.spacing == pytest.approx((0.4, 0.4, 0.4))

    x, y, z = grid.spec.mesh()
    assert grid.values == pytest.approx(np.broadcast_to(_field(x, y, z), grid.dims), abs=1e-12)
    assert read_cube_spec(path) == grid.spec


def test_value_layout_does_not_depend_on_line_breaks(tmp_path):
    a_text, _ = _cube_text(per_line=6)
    b_text, _ = _cube_text(per_line=1)
    (tmp_path / "a.cube").write_text(a_text)
    (tmp_path / "b.cube").write_text(b_text)
    assert np.array_equal(read_cube_grid(tmp_path / "a.cube").values, read_cube_grid(tmp_path / "b.cube").values)


def test_single_orbital_record_is_accepted(tmp_path):
    text, _ = _cube_text(natoms=-1, orbital="    1    7")
    path = tmp_path / "orbital.cube"
    path.write_text(text)
    assert read_cube_grid(path).dims == (4, 5, 6)


def test_multi_orbital_cube_is_rejected(tmp_path):
    text, _ = _cube_text(natoms=-1, orbital="    2    7    8")
    path = tmp_path / "orbitals.cube"
    path.write_text(text)
    with pytest.raises(CubeParseError, match="single-orbital"):
        read_cube_grid(path)


def test_truncated_stream_is_rejected(tmp_path):
    text, _ = _cube_text()
    path = tmp_path / "short.cube"
    path.write_text("\n".join(text.splitlines()[:-2]) + "\n")
    with pytest.raises(CubeParseError, match="expected 120 values"):
        read_cube_grid(path)
    # the header alone is still readable
    assert read_cube_spec(path).dims == (4, 5, 6)


def test_extra_values_are_rejected(tmp_path):
    text, _ = _cube_text(extra=[1.0])
    path = tmp_path / "long.cube"
    path.write_text(text)
    with pytest.raises(CubeParseError, match="more than the expected 120"):
        read_cube_grid(path)


def test_non_numeric_token_reports_line(tmp_path):
    text, _ = _cube_text()
    lines = text.splitlines()
    lines[8] = lines[8].replace(lines[8].split()[0], "abc", 1)
    path = tmp_path / "bad.cube"
    path.write_text("\n".join(lines) + "\n")
    with pytest.raises(CubeParseError) as info:
        read_cube_grid(path)
    assert info.value.line == 9
    assert "abc" in str(info.value)


def test_skewed_axis_is_rejected(tmp_path):
    text, _ = _cube_text()
    lines = text.splitlines()
    lines[4] = "    5  1.0e-01  4.0e-01  0.0"
    path = tmp_path / "skew.cube"
    path.write_text("\n".join(lines) + "\n")
    with pytest.raises(CubeParseError) as info:
        read_cube_grid(path)
    assert info.value.line == 5


def test_missing_file_is_a_parse_error(tmp_path):
    with pytest.raises(CubeParseError):
        read_cube_grid(tmp_path / "missing.cube")


def test_write_then_load(tmp_path, make_dipole_grid):
    grid = make_dipole_grid()
    path = write_cube(grid, tmp_path / "dipole.cube")
    density = load_cube(path, 2.0)
    assert density.label == "dipole"
    assert density.grid.spec.origin == pytest.approx(grid.spec.origin, abs=1e-12)
    assert density.grid.values == pytest.approx(grid.values, rel=1e-4, abs=1e-9)


def test_load_cube_checks_neutrality(tmp_path, make_blob_grid):
    path = write_cube(make_blob_grid(), tmp_path / "blob.cube")
    with pytest.raises(NeutralityError):
        load_cube(path, 2.0)
    assert load_cube(path, 2.0, neutrality_tol=None).energy_gap_ev == 2.0


def test_writer_restarts_lines_per_column(tmp_path):
    spec = GridSpec(origin=(0.0, 0.0, 0.0), spacing=(1.0, 1.0, 1.0), dims=(2, 2, 8))
    grid = ScalarGrid3D(spec=spec, values=np.ones(spec.dims), label="ones")
    lines = write_cube(grid, tmp_path / "ones.cube").read_text().splitlines()
    data = lines[6:]
    assert len(data) == 2 * 2 * 2
    assert [len(line.split()) for line in data[:2]] == [6, 2]


def test_loaded_dark_plane_matches_analytic_density(tmp_path):
    path = tmp_path / "dark_plane.cube"
    path.write_text(_dark_plane_cube_text())
    params = GaussianDensityParams()

    density = load_cube(path, 2.0, neutrality_tol=None)
    grid = density.grid
    assert grid.dims == (35, 35, 5)
    k = 2
    assert grid.spec.axis_nm(2)[k] == pytest.approx(0.0, abs=1e-12)
    assert np.count_nonzero(np.delete(grid.values, k, axis=2)) == 0

    xs, ys = grid.spec.axis_nm(0), grid.spec.axis_nm(1)
    dz_bohr = grid.spec.spacing[2]
    loaded = grid.values[:, :, k] * dz_bohr / BOHR_NM ** 2
    expected = np.array([[eval_gaussian_density(params, (x, y, 0.0)) for y in ys] for x in xs])
    np.testing.assert_allclose(loaded, expected, rtol=1e-12, atol=0.0)

    # same convention as the rasterised analytic density
    rasterized = rasterize(TransitionDensity.analytic(params, 2.0, "dark"), grid.spec)
    assert rasterized.dims == grid.dims
    np.testing.assert_allclose(grid.values, rasterized.values, rtol=1e-12, atol=0.0)
