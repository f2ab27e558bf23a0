"""Tests for raster scans, map operations, profile cuts and map export."""

from __future__ import annotations

import numpy as np
import pytest
from PIL import Image

from stmldark.current import TransitionChannel, prepare_channel
from stmldark.density import TransitionDensity, gaussian_potential_zero_crossing, gaussian_zero_crossing, rasterize
from stmldark.electrodes import ElectrodeModel
from stmldark.scan import (
    CurrentMap2D,
    MapAxisError,
    NormalizationError,
    ProfileCut,
    ScanError,
    check_uniform_axis,
    map_csv_text,
    normalize_map,
    pgm_text,
    profile_cut,
    quicklook_levels,
    read_map_csv,
    resolve_threads,
    scan_axis,
    scan_map,
    sum_maps,
    write_map_csv,
    write_pgm,
    write_png,
)
from stmldark.utils.logger import setup_logger


AXIS = np.linspace(-0.6, 0.6, 5)


def _map(values, mode="raw", x=None, y=None):
    values = np.asarray(values, dtype=float)
    ny, nx = values.shape
    return CurrentMap2D(
        x_nm=np.linspace(0.0, 1.0, nx) if x is None else x,
        y_nm=np.linspace(0.0, 2.0, ny) if y is None else y,
        values=values,
        mode=mode,
    )


@pytest.fixture(scope="module")
def dark_map(prepared_dark):
    return scan_map(prepared_dark, ElectrodeModel(), -2.5, AXIS, AXIS)


def test_scan_map_is_mirror_symmetric(dark_map):
    values = dark_map.values
    scale = np.max(values)
    assert scale > 0.0
    assert np.max(np.abs(values - values[:, ::-1])) <= 1e-8 * scale
    assert np.max(np.abs(values - values[::-1, :])) <= 1e-8 * scale
    assert dark_map.mode == "raw"
    assert dark_map.metadata["bias_v"] == -2.5
    assert dark_map.metadata["channels"] == ["dark"]
    assert np.array_equal(dark_map.channel_values["dark"], values)


def test_dark_map_cuts_have_central_maximum_and_outer_minima(dark_transition, dark_params, electrodes):
    x = np.linspace(-1.5, 1.5, 41)
    current_map = scan_map([TransitionChannel(dark_transition)], electrodes, -2.5, x, np.array([0.0, 0.4]))
    x0 = gaussian_zero_crossing(dark_params)
    in_plane = gaussian_potential_zero_crossing(dark_params)
    pixel = x[1] - x[0]

    for offset in (0.0, 0.4):
        cut = profile_cut(current_map, "x", offset)
        assert cut.local_maxima() == pytest.approx([0.0], abs=1e-9)
        minima = cut.local_minima()
        assert minima == pytest.approx([-1.125, 1.125], abs=pixel)
        # minima follow the potential zero above the plane, not the density zero
        assert np.all(np.abs(minima) > in_plane - pixel)
        assert np.all(np.abs(minima) - x0 > 0.2)
    # end for


def test_scan_is_identical_across_thread_counts(prepared_dark, electrodes, dark_map):
    threaded = scan_map(prepared_dark, electrodes, -2.5, AXIS, AXIS, threads=2)
    assert np.array_equal(threaded.values, dark_map.values)


def test_map_below_threshold_is_zero(prepared_dark, electrodes):
    current_map = scan_map(prepared_dark, electrodes, -2.0, AXIS, AXIS)
    assert np.all(current_map.values == 0.0)
    with pytest.raises(NormalizationError):
        normalize_map(current_map)


def test_degenerate_pair_map_has_square_symmetry(prepared_dark, electrodes):
    base = prepared_dark[0]
    spec = base.spec
    grid = rasterize(base.channel.transition, spec)
    rotated = grid.with_values(np.transpose(grid.values, (1, 0, 2)), label="dark-y")
    channels = [
        base,
        prepare_channel(
            TransitionChannel(TransitionDensity.gridded(rotated, 2.0, neutrality_tol=None)),
            spec,
            neutrality_tol=None,
        ),
    ]
    current_map = scan_map(channels, electrodes, -2.5, AXIS, AXIS)
    values = current_map.values
    scale = np.max(values)
    assert np.max(np.abs(values - values.T)) <= 1e-9 * scale
    assert np.max(np.abs(values - np.rot90(values))) <= 1e-9 * scale
    assert set(current_map.channel_values) == {"dark", "dark-y"}
    assert values == pytest.approx(current_map.channel_values["dark"] + current_map.channel_values["dark-y"])


def test_duplicate_channel_labels_are_suffixed(prepared_dark, electrodes):
    current_map = scan_map([prepared_dark[0], prepared_dark[0]], electrodes, -2.5, [0.0], [0.0])
    assert set(current_map.channel_values) == {"dark", "dark#2"}
    assert current_map.values[0, 0] == pytest.approx(2.0 * current_map.channel_values["dark"][0, 0])


def test_normalize_map_modes():
    raw = _map([[0.0, 2.0], [4.0, 1e-20]])
    linear = normalize_map(raw)
    assert linear.values.tolist() == [[0.0, 0.5], [1.0, 2.5e-21]]
    assert linear.metadata["raw_max"] == 4.0

    logged = normalize_map(raw, "log10", floor=-10.0)
    assert logged.values[0, 0] == -10.0
    assert logged.values[1, 1] == -10.0
    assert logged.values[0, 1] == pytest.approx(np.log10(0.5))
    assert logged.metadata["log_floor"] == -10.0

    with pytest.raises(ScanError):
        normalize_map(logged)
    with pytest.raises(ScanError):
        normalize_map(raw, "sqrt")


def test_map_validation():
    with pytest.raises(ScanError):
        _map([[1.0, 2.0]], x=np.array([0.0, 1.0, 2.0]))
    with pytest.raises(ScanError):
        _map([[1.0, 2.0]], x=np.array([1.0, 0.0]))
    with pytest.raises(ScanError):
        _map([[1.0, 2.0]], mode="linear")
    with pytest.raises(ScanError):
        _map([[np.nan, 2.0]])
    with pytest.raises(ScanError):
        _map([[1.0, 2.0]], mode="percent")


def test_value_at_and_argmax():
    current_map = _map([[0.0, 2.0], [4.0, 1.0]])
    assert current_map.value_at(0.0, 2.0) == 4.0
    assert current_map.argmax_nm() == (0.0, 2.0)
    with pytest.raises(ScanError) as info:
        current_map.value_at(0.5, 0.0)
    assert info.value.x_nm == 0.5


def test_sum_maps():
    a = _map([[1.0, 2.0]])
    b = _map([[0.5, 0.5]])
    assert sum_maps([a, b]).values.tolist() == [[1.5, 2.5]]
    with pytest.raises(MapAxisError):
        sum_maps([a, _map([[1.0, 2.0]], x=np.array([0.0, 2.0]))])
    with pytest.raises(ScanError):
        sum_maps([a, normalize_map(b)])
    with pytest.raises(ScanError):
        sum_maps([])


def test_profile_of_analytic_density_crosses_zero(dark_transition, dark_params):
    cut = profile_cut(dark_transition, "x", 0.0)
    x0 = gaussian_zero_crossing(dark_params)
    assert cut.zero_crossings() == pytest.approx([-x0, x0], abs=1e-3)
    assert cut.local_maxima() == pytest.approx([0.0], abs=1e-9)
    assert np.max(np.abs(cut.values)) == pytest.approx(1.0)

    along_y = profile_cut(dark_transition, "y", 0.0)
    assert along_y.zero_crossings().size == 0


def test_profile_of_map_snaps_offset(monkeypatch):
    logger = setup_logger()
    monkeypatch.setattr(logger._console, "log", lambda *a, **k: None)
    current_map = _map([[1.0, 3.0, 2.0], [0.0, 5.0, 1.0]])

    cut = profile_cut(current_map, "x", 1.7)
    assert cut.offset_nm == 2.0
    assert cut.requested_offset_nm == 1.7
    assert cut.raw.tolist() == [0.0, 5.0, 1.0]
    assert cut.local_maxima().tolist() == [0.5]
    assert logger.diagnostics() == {"profile-snap": 1}

    column = profile_cut(current_map, "y", 0.5)
    assert column.raw.tolist() == [3.0, 5.0]

    with pytest.raises(ScanError):
        profile_cut(current_map, "z")
    with pytest.raises(NormalizationError):
        profile_cut(_map([[0.0, 0.0], [0.0, 1.0]]), "x", 0.0)


def test_profile_extrema_and_crossings():
    coords = np.arange(7, dtype=float)
    values = np.array([1.0, -0.5, 0.2, 0.1, 0.4, -1.0, 0.3])
    cut = ProfileCut("x", 0.0, 0.0, coords, values, values)
    assert cut.local_minima().tolist() == [1.0, 3.0, 5.0]
    assert cut.local_maxima().tolist() == [2.0, 4.0]
    assert cut.zero_crossings() == pytest.approx([2.0 / 3.0, 1.0 + 0.5 / 0.7, 4.0 + 0.4 / 1.4, 5.0 + 1.0 / 1.3])


def test_axes_and_threads():
    assert scan_axis(-1.0, 1.0, 5).tolist() == [-1.0, -0.5, 0.0, 0.5, 1.0]
    assert scan_axis(0.3, 0.3, 1).tolist() == [0.3]
    with pytest.raises(ScanError):
        scan_axis(0.0, 1.0, 1)
    with pytest.raises(ScanError):
        scan_axis(1.0, 0.0, 3)
    with pytest.raises(ScanError):
        check_uniform_axis([0.0, 0.1, 0.3], "x")
    assert resolve_threads(3) == 3
    assert resolve_threads(0) >= 1
    with pytest.raises(ScanError):
        resolve_threads(-1)


def test_csv_round_trip(tmp_path):
    current_map = _map([[0.25, 1.5, 3.0], [0.0, 2.0, 1e-30]])
    path = write_map_csv(current_map, tmp_path / "map.csv", ["STMLDark 1.0.0"])
    text = path.read_text()
    assert text.startswith("# STMLDark 1.0.0\n# mode: raw\n# x_nm: 0,0.5,1\n")

    back = read_map_csv(path)
    assert back.mode == "raw"
    assert np.array_equal(back.values, current_map.values)
    assert np.array_equal(back.x_nm, current_map.x_nm)


def test_csv_reader_rejects_bad_files(tmp_path):
    text = map_csv_text(_map([[1.0, 2.0]]))
    (tmp_path / "short.csv").write_text(text.replace("1,2\n", "1\n"))
    with pytest.raises(ScanError, match="rows do not match"):
        read_map_csv(tmp_path / "short.csv")
    (tmp_path / "no_axes.csv").write_text("1,2\n")
    with pytest.raises(ScanError, match="lacks"):
        read_map_csv(tmp_path / "no_axes.csv")
    (tmp_path / "text.csv").write_text(text.replace("1,2\n", "1,two\n"))
    with pytest.raises(ScanError, match="non-numeric"):
        read_map_csv(tmp_path / "text.csv")
    with pytest.raises(ScanError):
        read_map_csv(tmp_path / "missing.csv")


def test_quicklook_levels_put_largest_y_on_top():
    linear = _map([[0.0, 0.5], [1.0, 0.25]], mode="linear")
    assert quicklook_levels(linear).tolist() == [[255, 64], [0, 128]]

    raw = _map([[1e-13, 1e-6], [1.0, 0.0]])
    assert quicklook_levels(raw, log10=True).tolist() == [[255, 0], [0, 128]]


def test_pgm_and_png(tmp_path):
    levels = np.array([[0, 255, 7]], dtype=np.uint8)
    assert pgm_text(levels, "bias -2.5 V") == "P2\n# bias -2.5 V\n3 1\n255\n0 255 7\n"

    current_map = _map([[0.0, 1.0, 2.0], [3.0, 4.0, 5.0]])
    path = write_png(current_map, tmp_path / "map.png")
    with Image.open(path) as image:
        assert image.size == (3, 2)
        assert image.mode == "L"
        assert image.getpixel((2, 0)) == 255

    pgm = write_pgm(current_map, tmp_path / "map.pgm", comment="linear")
    assert pgm.read_text() == "P2\n# linear\n3 2\n255\n153 204 255\n0 51 102\n"
