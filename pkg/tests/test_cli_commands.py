"""End-to-end tests of the command line on a coarse grid."""

from __future__ import annotations

from pathlib import Path

import pytest
from typer.testing import CliRunner

from stmldark.cli import app
from stmldark.density import write_cube

runner = CliRunner()

COARSE = """
schema = 1
bias_v = {bias}
threads = 1

[grid]
spacing_nm = 0.1
lateral_half_extent_nm = 2.0

[scan]
x_min_nm = -0.6
x_max_nm = 0.6
nx = 5
y_min_nm = -0.6
y_max_nm = 0.6
ny = 5
profile_offsets_nm = [0.0, 0.3]

[sweep]
biases = {biases}
{extra}
"""


def _config(tmp_path: Path, bias: float = -2.5, biases=(-2.5, -2.0, 2.0, 2.5), extra: str = "", name="run.toml") -> Path:
    path = tmp_path / name
    path.write_text(COARSE.format(bias=bias, biases=list(biases), extra=extra))
    return path


def _invoke(command: str, config: Path, out: Path, *options: str, **kwargs):
    return runner.invoke(app, [command, "--config", str(config), "--out", str(out), *options], **kwargs)


def _key_values(path: Path) -> dict:
    values = {}
    for line in path.read_text().splitlines():
        if line.startswith("#") or " = " not in line:
            continue
        key, value = line.split(" = ", 1)
        values[key] = value
    return values


def test_map_writes_all_outputs(tmp_path):
    out = tmp_path / "out"
    result = _invoke("map", _config(tmp_path), out)

    assert result.exit_code == 0, result.stdout
    assert "Inelastic current map" in result.stdout
    for name in ("effective_config.json", "map_raw.csv", "map_normalized.csv", "map.pgm", "map.png", "profiles.txt"):
        assert (out / name).is_file(), name

    raw = (out / "map_raw.csv").read_text()
    assert raw.startswith("# STMLDark ")
    assert "# command: map" in raw
    assert "# config_hash: " in raw
    assert "# mode: raw" in raw
    assert "# mode: linear" in (out / "map_normalized.csv").read_text()
    assert (out / "map.pgm").read_text().startswith("P2\n")
    assert _key_values(out / "profiles.txt")["quadrature_converged"] == "True"


def test_map_is_identical_across_thread_counts(tmp_path):
    config = _config(tmp_path)
    single = _invoke("map", config, tmp_path / "one", "--threads", "1")
    env = _invoke("map", config, tmp_path / "env", env={"STML_THREADS": "2"})

    assert single.exit_code == 0
    assert env.exit_code == 0
    assert (tmp_path / "one" / "map_raw.csv").read_bytes() == (tmp_path / "env" / "map_raw.csv").read_bytes()


def test_map_log10_option(tmp_path):
    out = tmp_path / "out"
    result = _invoke("map", _config(tmp_path), out, "--log10")

    assert result.exit_code == 0
    assert "# mode: log10" in (out / "map_normalized.csv").read_text()
    assert "# mode: raw" in (out / "map_raw.csv").read_text()


def test_map_below_threshold(tmp_path):
    result = _invoke("map", _config(tmp_path, bias=-1.5), tmp_path / "out")

    assert result.exit_code == 5
    assert "below-threshold" in result.stdout
    assert not (tmp_path / "out").exists()


def test_sweep_above_vacuum_level_is_a_schema_error(tmp_path):
    result = _invoke("bias-sweep", _config(tmp_path, biases=(-2.5, 7.0)), tmp_path / "out")

    assert result.exit_code == 4
    assert "VacuumLevelError" in result.stdout


def test_missing_config_is_a_usage_error(tmp_path):
    result = _invoke("map", tmp_path / "missing.toml", tmp_path / "out")

    assert result.exit_code == 2


def test_bad_log_filter_is_a_usage_error(tmp_path):
    result = _invoke("kinetics", _config(tmp_path), tmp_path / "out", "--log-filter", "colour=red")

    assert result.exit_code == 2


def test_unparsable_config(tmp_path):
    path = tmp_path / "broken.toml"
    path.write_text("schema = = 1\n")
    result = _invoke("kinetics", path, tmp_path / "out")

    assert result.exit_code == 3
    assert "ConfigParseError" in result.stdout


def test_schema_violation(tmp_path):
    result = _invoke("kinetics", _config(tmp_path, extra="[kinetics]\nwobble = 1\n"), tmp_path / "out")

    assert result.exit_code == 4
    assert "wobble" in result.stdout


def test_truncated_cube_is_a_parse_error(tmp_path, make_dipole_grid):
    cube = write_cube(make_dipole_grid(), tmp_path / "dipole.cube")
    lines = cube.read_text().splitlines()
    cube.write_text("\n".join(lines[:-3]) + "\n")
    extra = '[[channels]]\ne_eg_ev = 2.0\ndensity = { kind = "cube", path = "dipole.cube" }\n'

    result = _invoke("density-info", _config(tmp_path, extra=extra), tmp_path / "out")

    assert result.exit_code == 3
    assert "CubeParseError" in result.stdout


def test_charged_cube_is_rejected(tmp_path, make_blob_grid):
    write_cube(make_blob_grid(), tmp_path / "blob.cube")
    extra = '[[channels]]\ne_eg_ev = 2.0\ndensity = { kind = "cube", path = "blob.cube" }\n'

    result = _invoke("density-info", _config(tmp_path, extra=extra), tmp_path / "out")

    assert result.exit_code == 4
    assert "NeutralityError" in result.stdout


def test_density_info_reports_dipole(tmp_path, make_dipole_grid):
    write_cube(make_dipole_grid(), tmp_path / "dipole.cube")
    extra = (
        '[[channels]]\nlabel = "dark"\ne_eg_ev = 2.0\ndensity = { kind = "gaussian" }\n'
        '[[channels]]\ne_eg_ev = 2.2\ndensity = { kind = "cube", path = "dipole.cube" }\n'
    )
    out = tmp_path / "from_config"
    config = _config(tmp_path, extra=extra)
    config.write_text(f'output = "{out.as_posix()}"\n' + config.read_text())

    result = runner.invoke(app, ["density-info", "--config", str(config)])

    assert result.exit_code == 0, result.stdout
    values = _key_values(out / "density_info.txt")
    assert values["dark.form"] == "analytic-gaussian"
    assert float(values["dark.total_charge_e"]) == 0.0
    dipole = [float(v) for v in values["dipole.dipole_au"].split(",")]
    assert dipole == pytest.approx([0.0, 0.0, 1.0], abs=1e-3)
    assert values["dipole.form"] == "gridded"


def test_bias_sweep(tmp_path):
    out = tmp_path / "out"
    result = _invoke("bias-sweep", _config(tmp_path), out)

    assert result.exit_code == 0, result.stdout
    assert "Negative bias dominates" in result.stdout
    rows = [line for line in (out / "bias_curve.csv").read_text().splitlines() if not line.startswith("#")]
    assert rows[0] == "-2.5,1"
    assert rows[1] == "-2,0"
    assert rows[2] == "2,0"
    assert 0.0 < float(rows[3].split(",")[1]) < 1.0

    summary = _key_values(out / "bias_summary.txt")
    assert float(summary["asymmetry_neg_over_pos"]) > 1.0
    assert float(summary["lowest_negative_onset_v"]) == -2.5
    assert float(summary["lowest_positive_onset_v"]) == 2.5


def test_bias_sweep_oracle(tmp_path):
    out = tmp_path / "out"
    result = _invoke("bias-sweep", _config(tmp_path, biases=(-2.5,)), out, "--oracle")

    assert result.exit_code == 0, result.stdout
    summary = _key_values(out / "bias_summary.txt")
    assert float(summary["oracle_relative_difference"]) < 1e-8
    assert summary["asymmetry_neg_over_pos"] == "n/a"


def test_bias_sweep_oracle_refuses_large_direct_sums(tmp_path):
    config = _config(tmp_path, biases=(-2.5,), extra="[coupling]\ndirect_max_pairs = 1000\n")
    result = _invoke("bias-sweep", config, tmp_path / "out", "--oracle")

    assert result.exit_code == 6
    assert "DirectSizeError" in result.stdout


def test_bias_sweep_empty_list(tmp_path):
    result = _invoke("bias-sweep", _config(tmp_path, biases=()), tmp_path / "out")

    assert result.exit_code == 2


def test_bias_sweep_below_threshold(tmp_path):
    result = _invoke("bias-sweep", _config(tmp_path, biases=(-1.0, 1.0)), tmp_path / "out")

    assert result.exit_code == 5


def test_kinetics_default_rates(tmp_path):
    out = tmp_path / "out"
    result = _invoke("kinetics", _config(tmp_path), out)

    assert result.exit_code == 0, result.stdout
    values = _key_values(out / "steady_state.txt")
    assert float(values["gamma_emission_per_s"]) == pytest.approx(12.9958, abs=1e-4)
    assert float(values["gamma_closed_form_per_s"]) == pytest.approx(float(values["gamma_emission_per_s"]), rel=1e-12)
    assert not (out / "trajectory.csv").exists()


def test_kinetics_trajectory(tmp_path):
    extra = "[kinetics]\ntrajectory = true\nt_final_s = 1e-7\ndt_s = 5e-10\nrecord_every = 20\n"
    out = tmp_path / "out"
    result = _invoke("kinetics", _config(tmp_path, extra=extra), out)

    assert result.exit_code == 0, result.stdout
    rows = [line for line in (out / "trajectory.csv").read_text().splitlines() if not line.startswith("#")]
    assert len(rows) == 11
    assert rows[0] == "0,1,0,0"
    assert float(_key_values(out / "steady_state.txt")["trajectory_max_sum_error"]) < 1e-12


def test_kinetics_unstable_step(tmp_path):
    extra = "[kinetics]\ntrajectory = true\ndt_s = 1e-8\n"
    result = _invoke("kinetics", _config(tmp_path, extra=extra), tmp_path / "out")

    assert result.exit_code == 6
    assert "KineticsStabilityError" in result.stdout


def test_kinetics_pump_from_map(tmp_path):
    (tmp_path / "map_raw.csv").write_text("# mode: raw\n# x_nm: -0.5,0,0.5\n# y_nm: 0\n1,2,1\n")
    extra = '[kinetics.pump_from_map]\npath = "map_raw.csv"\nx_nm = 0.0\ny_nm = 0.0\nscale_per_s = 6.5\n'
    out = tmp_path / "out"
    result = _invoke("kinetics", _config(tmp_path, extra=extra), out)

    assert result.exit_code == 0, result.stdout
    values = _key_values(out / "steady_state.txt")
    assert float(values["pump_rate_ies_per_s"]) == 13.0
    assert float(values["gamma_emission_per_s"]) == pytest.approx(12.9958, abs=1e-4)


def test_kinetics_pump_requires_raw_map(tmp_path):
    (tmp_path / "map.csv").write_text("# mode: linear\n# x_nm: 0\n# y_nm: 0\n1\n")
    extra = '[kinetics.pump_from_map]\npath = "map.csv"\nscale_per_s = 1.0\n'
    result = _invoke("kinetics", _config(tmp_path, extra=extra), tmp_path / "out")

    assert result.exit_code == 4
