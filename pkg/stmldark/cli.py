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

stmldark.cli module for STMLDark.

Exit codes: 0 success, 2 usage error, 3 parse error, 4 schema error,
5 below threshold, 6 numerical failure.
"""


# Imports
import dataclasses
import re
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator, List, Optional, Sequence

import typer
from rich.console import Console
from rich.markup import escape
from rich.table import Table
from rich.traceback import install

from stmldark.core import (
    ConfigParseError,
    ConfigSchemaError,
    OutputWriter,
    RunConfig,
    curve_csv_text,
    header_lines,
    key_value_text,
    load_run_config,
    trajectory_csv_text,
)
from stmldark.coupling import matrix_element, matrix_element_direct
from stmldark.current import PreparedChannel, TransitionChannel, bias_sweep, check_quadrature_convergence, prepare_channels
from stmldark.density import (
    CubeParseError,
    NeutralityError,
    TransitionDensity,
    total_charge,
    transition_dipole,
)
from stmldark.electrodes import BiasConfig, VacuumLevelError, pair_density
from stmldark.errors import StmlDarkError
from stmldark.kinetics import (
    Populations,
    closed_form_emission_rate,
    evolve,
    stationary_residual,
    steady_state,
    steady_state_report,
)
from stmldark.scan import (
    map_csv_text,
    normalize_map,
    pgm_text,
    profile_cut,
    quicklook_levels,
    read_map_csv,
    resolve_threads,
    scan_map,
    write_png,
)
from stmldark.utils import Logger, setup_logger


# Install rich traceback
install(show_locals=True)


# New app
app = typer.Typer(help="Simulate STM-induced excitation of molecular dark states.")
console = Console()

DEFAULT_OUTPUT_DIR = Path("stmldark_output")

# Exit codes
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_SCHEMA = 4
EXIT_BELOW_THRESHOLD = 5
EXIT_NUMERICAL = 6


class BelowThresholdError(StmlDarkError):
    """Raised when no channel can be excited at the requested bias."""

    def __init__(self, bias_v: float, min_gap_ev: float):
        self.bias_v = bias_v
        self.min_gap_ev = min_gap_ev
        super().__init__(
            f"below-threshold: |V| = {abs(bias_v):.3g} V does not exceed the minimal E_eg/e = {min_gap_ev:.3g} V"
        )
    # end def __init__

# end class BelowThresholdError


def _exit_code(exc: StmlDarkError) -> int:
    """Map an error family to its documented exit code."""
    if isinstance(exc, (ConfigParseError, CubeParseError)):
        return EXIT_PARSE
    elif isinstance(exc, (ConfigSchemaError, NeutralityError, VacuumLevelError)):
        return EXIT_SCHEMA
    elif isinstance(exc, BelowThresholdError):
        return EXIT_BELOW_THRESHOLD
    # end if
    return EXIT_NUMERICAL
# end def _exit_code


@contextmanager
def _run_guard() -> Iterator[None]:
    """Turn library errors into a red message and a documented exit code."""
    try:
        yield
    except StmlDarkError as exc:
        console.print(f"[red]{type(exc).__name__}: {escape(str(exc))}[/red]")
        raise typer.Exit(code=_exit_code(exc)) from exc
    # end try
# end def _run_guard


def _build_logger(
        level: str,
        filters: Sequence[str]
) -> Logger:
    """Configure the shared logger with CLI validation.

    Args:
        level (str): Logging level (`DEBUG`, `INFO`, `WARNING`, `ERROR`).
        filters (list[str]): Optional regex filters applied to log level/source/message.

    Returns:
        Logger: Shared logger instance.
    """
    try:
        return setup_logger(level=level, filters=list(filters) or None)
    except ValueError as exc:
        raise typer.BadParameter(str(exc), param_hint="--log-filter") from exc
    # end try
# end def _build_logger


def _output_dir(out: Optional[Path], config: RunConfig) -> Path:
    if out is not None:
        return out
    elif config.output is not None:
        return Path(config.output)
    # end if
    return DEFAULT_OUTPUT_DIR
# end def _output_dir


def _threads(threads: Optional[int], config: RunConfig) -> int:
    return config.threads if threads is None else threads
# end def _threads


def _fmt(values: Sequence[float], digits: int = 4) -> str:
    return ", ".join(f"{v:.{digits}g}" for v in values) or "-"
# end def _fmt


def _safe_name(label: str) -> str:
    return re.sub(r"[^A-Za-z0-9_.-]+", "_", label)
# end def _safe_name


def _print_diagnostics() -> None:
    counts = Logger.get().diagnostics()
    if not counts:
        return
    # end if
    table = Table(title="Numerical diagnostics")
    table.add_column("Kind", style="magenta")
    table.add_column("Count", justify="right")
    for kind, count in sorted(counts.items()):
        table.add_row(kind, str(count))
    # end for
    console.print(table)
# end def _print_diagnostics


def _check_threshold(config: RunConfig, bias_v: float) -> None:
    bias = BiasConfig(bias_v)
    fermi = config.electrodes.fermi_energy_ev
    if all(bias.energy_window(fermi, c.e_eg_ev) is None for c in config.channels):
        raise BelowThresholdError(bias_v, config.min_energy_gap_ev)
    # end if
# end def _check_threshold


def _check_vacuum(config: RunConfig, biases_v: Sequence[float]) -> None:
    fermi = config.electrodes.fermi_energy_ev
    for bias_v in biases_v:
        for c in config.channels:
            BiasConfig(bias_v).energy_window(fermi, c.e_eg_ev)
        # end for
    # end for
# end def _check_vacuum


def _grid_summary(transition: TransitionDensity) -> str:
    if transition.grid is None:
        g = transition.gaussian
        return f"analytic sigma={g.sigma_nm:g} sigma1={g.sigma1_nm:g} sigma2={g.sigma2_nm:g} nm"
    # end if
    grid = transition.grid
    dims = "x".join(str(n) for n in grid.dims)
    spacing = _fmt(grid.spacing_nm)
    return f"{dims} nodes, h=({spacing}) nm, min={grid.values.min():.3e}, max={grid.values.max():.3e}"
# end def _grid_summary


def _oracle_check(run: RunConfig, channel: PreparedChannel, bias_v: float) -> float:
    """Relative gap between the spectral and direct N at the window centre."""
    window = BiasConfig(bias_v).energy_window(run.electrodes.fermi_energy_ev, channel.energy_gap_ev)
    substrate_ev = 0.5 * (window.lower_ev + window.upper_ev)
    pair = pair_density(
        run.electrodes, substrate_ev, window.tip_energy(substrate_ev), run.sweep.tip_lateral_nm, channel.spec
    )
    transition = channel.channel.transition
    spectral = matrix_element(transition, pair, kernel=run.kernel).value
    direct = matrix_element_direct(transition, pair, max_pairs=run.direct_max_pairs).value
    Logger.get().info(f"Oracle check at {bias_v:+.3g} V: spectral {spectral:.10e}, direct {direct:.10e} Ha")
    return abs(spectral - direct) / max(abs(direct), 1e-300)
# end def _oracle_check


@app.command("density-info")
def density_info(
        config: Path = typer.Option(..., "--config", "-c", exists=True, dir_okay=False, help="Run configuration (TOML or JSON)."),
        out: Optional[Path] = typer.Option(None, "--out", "-o", help="Output directory."),
        log_level: str = typer.Option("INFO", help="Logging level : DEBUG, INFO, WARNING, ERROR"),
        log_filter: List[str] = typer.Option(
            (),
            "--log-filter",
            "-lf",
            help="Regex filter for the logs (ex: 'type=WARNING,source=coulomb.*'). Repeat to combine.",
            show_default=False,
        ),
) -> None:
    """Report total charge, transition dipole and grid statistics per channel.

    Args:
        config (Path): Run configuration file.
        out (Path | None): Output directory, overrides the configuration.
        log_level (str): Logging level (`DEBUG`, `INFO`, `WARNING`, `ERROR`).
        log_filter (list[str]): Optional regex filters applied to log level/source/message.
    """
    logger = _build_logger(log_level, log_filter)
    with _run_guard():
        run = load_run_config(config)
        logger.info(f"Loaded {config} (hash {run.config_hash()})")
        transitions = run.load_transitions()

        table = Table(title="Transition densities")
        table.add_column("Channel", style="cyan")
        table.add_column("E_eg (eV)", justify="right")
        table.add_column("Charge (e)", justify="right")
        table.add_column("Dipole (a.u.)")
        table.add_column("Dipole (e nm)")
        table.add_column("Grid")
        report = []
        for transition in transitions:
            charge = total_charge(transition)
            dipole = transition_dipole(transition)
            table.add_row(
                transition.label,
                f"{transition.energy_gap_ev:g}",
                f"{charge:.3e}",
                _fmt(dipole.au),
                _fmt(dipole.e_nm),
                _grid_summary(transition),
            )
            report.extend([
                (f"{transition.label}.e_eg_ev", transition.energy_gap_ev),
                (f"{transition.label}.form", transition.form),
                (f"{transition.label}.total_charge_e", charge),
                (f"{transition.label}.dipole_au", ",".join(f"{c:.15g}" for c in dipole.au)),
                (f"{transition.label}.dipole_e_nm", ",".join(f"{c:.15g}" for c in dipole.e_nm)),
                (f"{transition.label}.grid", _grid_summary(transition)),
            ])
        # end for

        writer = OutputWriter(_output_dir(out, run), run)
        writer.add_text("density_info.txt", key_value_text(report, header_lines(run, "density-info")))
        writer.commit()
    # end with
    console.print(table)
    _print_diagnostics()
# end def density_info


@app.command("map")
def map_command(
        config: Path = typer.Option(..., "--config", "-c", exists=True, dir_okay=False, help="Run configuration (TOML or JSON)."),
        out: Optional[Path] = typer.Option(None, "--out", "-o", help="Output directory."),
        threads: Optional[int] = typer.Option(
            None,
            "--threads",
            "-t",
            envvar="STML_THREADS",
            min=0,
            help="Worker threads for the pixel loop, 0 for one per CPU. Defaults to the configuration.",
        ),
        log10: bool = typer.Option(False, "--log10", help="Write the normalized map and quick-looks on a log10 scale."),
        log_level: str = typer.Option("INFO", help="Logging level : DEBUG, INFO, WARNING, ERROR"),
        log_filter: List[str] = typer.Option(
            (),
            "--log-filter",
            "-lf",
            help="Regex filter for the logs (ex: 'type=WARNING,source=coulomb.*'). Repeat to combine.",
            show_default=False,
        ),
) -> None:
    """Compute the inelastic current map at the configured bias.

    Args:
        config (Path): Run configuration file.
        out (Path | None): Output directory, overrides the configuration.
        threads (int | None): Worker threads, overrides the configuration.
        log10 (bool): Use log10 normalization regardless of the configuration.
        log_level (str): Logging level (`DEBUG`, `INFO`, `WARNING`, `ERROR`).
        log_filter (list[str]): Optional regex filters applied to log level/source/message.
    """
    logger = _build_logger(log_level, log_filter)
    with _run_guard():
        run = load_run_config(config)
        logger.info(f"Loaded {config} (hash {run.config_hash()})")
        _check_threshold(run, run.bias_v)
        transitions = run.load_transitions()
        workers = resolve_threads(_threads(threads, run))
        channels = prepare_channels(
            [TransitionChannel(t) for t in transitions],
            run.electrodes,
            run.grid,
            kernel=run.kernel,
            neutrality_tol=run.neutrality_tol,
            workers=workers,
        )
        mode = "log10" if log10 else run.scan.normalization
        raw = scan_map(
            channels,
            run.electrodes,
            run.bias_v,
            run.scan.x_axis(),
            run.scan.y_axis(),
            run.n_energy,
            settings=run.grid,
            kernel=run.kernel,
            threads=workers,
        )
        if not (raw.values > 0.0).any():
            raise BelowThresholdError(run.bias_v, run.min_energy_gap_ev)
        # end if
        x_max, y_max = raw.argmax_nm()
        quadrature = check_quadrature_convergence(
            channels, run.electrodes, run.bias_v, (x_max, y_max), run.n_energy, run.convergence_tol
        )
        if not quadrature.converged:
            logger.diagnostic(
                "quadrature",
                "energy quadrature not converged at the map maximum",
                relative_change=f"{quadrature.relative_change:.3g}",
                n_energy=run.n_energy,
            )
        # end if
        normalized = normalize_map(raw, mode, run.scan.log_floor)

        profiles = Table(title="Profile cuts along x")
        profiles.add_column("y (nm)", justify="right")
        profiles.add_column("Current minima x (nm)")
        profiles.add_column("Current maxima x (nm)")
        profiles.add_column(f"Density nodes x (nm) [{transitions[0].label}]")
        profile_report = [
            ("quadrature_relative_change", quadrature.relative_change),
            ("quadrature_converged", quadrature.converged),
        ]
        for offset in run.scan.profile_offsets_nm:
            current_cut = profile_cut(raw, "x", offset)
            density_cut = profile_cut(transitions[0], "x", current_cut.offset_nm)
            minima = current_cut.local_minima()
            maxima = current_cut.local_maxima()
            nodes = density_cut.zero_crossings()
            profiles.add_row(f"{current_cut.offset_nm:.4g}", _fmt(minima), _fmt(maxima), _fmt(nodes))
            key = f"y={current_cut.offset_nm:.6g}"
            profile_report.extend([
                (f"{key}.current_minima_nm", ",".join(f"{v:.15g}" for v in minima)),
                (f"{key}.current_maxima_nm", ",".join(f"{v:.15g}" for v in maxima)),
                (f"{key}.density_zero_crossings_nm", ",".join(f"{v:.15g}" for v in nodes)),
            ])
        # end for

        header = header_lines(run, "map")
        log_scale = mode == "log10"
        levels = quicklook_levels(raw, log_scale, run.scan.log_floor)
        writer = OutputWriter(_output_dir(out, run), run)
        writer.add_text("map_raw.csv", map_csv_text(raw, header))
        writer.add_text("map_normalized.csv", map_csv_text(normalized, header))
        writer.add_text("map.pgm", pgm_text(levels, f"STMLDark config_hash {run.config_hash()}"))
        writer.add("map.png", lambda path: write_png(raw, path, log10=log_scale, floor=run.scan.log_floor))
        if len(raw.channel_values) > 1:
            for label, values in raw.channel_values.items():
                channel_map = dataclasses.replace(raw, values=values, channel_values={})
                writer.add_text(f"map_raw_{_safe_name(label)}.csv", map_csv_text(channel_map, [*header, f"channel: {label}"]))
            # end for
        # end if
        writer.add_text("profiles.txt", key_value_text(profile_report, header))
        writer.commit()
    # end with

    summary = Table(title=f"Inelastic current map at {run.bias_v:+.3g} V")
    summary.add_column("Quantity", style="cyan")
    summary.add_column("Value")
    summary.add_row("Pixels", f"{raw.x_nm.size} x {raw.y_nm.size}")
    summary.add_row("Channels", ", ".join(t.label for t in transitions))
    summary.add_row("Maximum (raw)", f"{raw.values.max():.6e}")
    summary.add_row("Maximum at (nm)", f"({x_max:.4g}, {y_max:.4g})")
    summary.add_row("Normalization", mode)
    summary.add_row("Quadrature change (n -> 2n-1)", f"{quadrature.relative_change:.3e}")
    summary.add_row("Config hash", run.config_hash())
    console.print(summary)
    console.print(profiles)
    _print_diagnostics()
# end def map_command


@app.command("bias-sweep")
def bias_sweep_command(
        config: Path = typer.Option(..., "--config", "-c", exists=True, dir_okay=False, help="Run configuration (TOML or JSON)."),
        out: Optional[Path] = typer.Option(None, "--out", "-o", help="Output directory."),
        threads: Optional[int] = typer.Option(
            None,
            "--threads",
            "-t",
            envvar="STML_THREADS",
            min=0,
            help="FFT worker threads, 0 for one per CPU. Defaults to the configuration.",
        ),
        oracle: bool = typer.Option(
            False,
            "--oracle",
            help="Cross-check one matrix element against the direct real-space double sum.",
        ),
        log_level: str = typer.Option("INFO", help="Logging level : DEBUG, INFO, WARNING, ERROR"),
        log_filter: List[str] = typer.Option(
            (),
            "--log-filter",
            "-lf",
            help="Regex filter for the logs (ex: 'type=WARNING,source=coulomb.*'). Repeat to combine.",
            show_default=False,
        ),
) -> None:
    """Sweep the bias at a fixed tip position and write the current curve.

    Args:
        config (Path): Run configuration file.
        out (Path | None): Output directory, overrides the configuration.
        threads (int | None): FFT worker threads, overrides the configuration.
        oracle (bool): Compare the spectral and direct matrix elements at the strongest bias.
        log_level (str): Logging level (`DEBUG`, `INFO`, `WARNING`, `ERROR`).
        log_filter (list[str]): Optional regex filters applied to log level/source/message.
    """
    logger = _build_logger(log_level, log_filter)
    with _run_guard():
        run = load_run_config(config)
    # end with
    if not run.sweep.biases_v:
        raise typer.BadParameter("The bias list is empty.", param_hint="sweep.biases")
    # end if
    with _run_guard():
        _check_vacuum(run, run.sweep.biases_v)
    # end with
    with _run_guard():
        logger.info(f"Loaded {config} (hash {run.config_hash()})")
        transitions = run.load_transitions()
        workers = resolve_threads(_threads(threads, run))
        channels = prepare_channels(
            [TransitionChannel(t) for t in transitions],
            run.electrodes,
            run.grid,
            kernel=run.kernel,
            neutrality_tol=run.neutrality_tol,
            workers=workers,
        )
        curve = bias_sweep(
            channels,
            run.electrodes,
            run.sweep.biases_v,
            run.sweep.tip_lateral_nm,
            run.n_energy,
            settings=run.grid,
            kernel=run.kernel,
            workers=workers,
        )
        if curve.maximum() <= 0.0:
            raise BelowThresholdError(max(curve.biases_v, key=abs), run.min_energy_gap_ev)
        # end if
        v_asym = run.sweep.asymmetry_bias_v
        sampled = {round(b, 9) for b in curve.biases_v}
        asymmetry = curve.asymmetry(v_asym) if {round(v_asym, 9), round(-v_asym, 9)} <= sampled else None
        onset = [b for b, value in zip(curve.biases_v, curve.totals) if value > 0.0]
        summary = [
            ("tip_x_nm", curve.tip_lateral_nm[0]),
            ("tip_y_nm", curve.tip_lateral_nm[1]),
            ("max_current_raw", curve.maximum()),
            ("min_energy_gap_ev", run.min_energy_gap_ev),
            ("lowest_negative_onset_v", max((b for b in onset if b < 0.0), default=float("nan"))),
            ("lowest_positive_onset_v", min((b for b in onset if b > 0.0), default=float("nan"))),
            ("asymmetry_bias_v", v_asym),
            ("asymmetry_neg_over_pos", asymmetry if asymmetry is not None else "n/a"),
        ]
        if oracle:
            strongest = max(zip(curve.totals, curve.biases_v))[1]
            open_channel = next(
                c for c in channels
                if BiasConfig(strongest).energy_window(run.electrodes.fermi_energy_ev, c.energy_gap_ev) is not None
            )
            summary.append(("oracle_relative_difference", _oracle_check(run, open_channel, strongest)))
        # end if

        header = header_lines(run, "bias-sweep")
        writer = OutputWriter(_output_dir(out, run), run)
        writer.add_text("bias_curve.csv", curve_csv_text(curve, header))
        writer.add_text("bias_summary.txt", key_value_text(summary, header))
        writer.commit()
    # end with

    table = Table(title=f"Bias sweep at tip ({curve.tip_lateral_nm[0]:g}, {curve.tip_lateral_nm[1]:g}) nm")
    table.add_column("Quantity", style="cyan")
    table.add_column("Value")
    for key, value in summary:
        table.add_row(key, f"{value:.6g}" if isinstance(value, float) else str(value))
    # end for
    console.print(table)
    if asymmetry is not None and asymmetry > 1.0:
        console.print(f"[green]Negative bias dominates: I(-{v_asym:g} V) / I(+{v_asym:g} V) = {asymmetry:.4g}[/green]")
    # end if
    _print_diagnostics()
# end def bias_sweep_command


@app.command("kinetics")
def kinetics_command(
        config: Path = typer.Option(..., "--config", "-c", exists=True, dir_okay=False, help="Run configuration (TOML or JSON)."),
        out: Optional[Path] = typer.Option(None, "--out", "-o", help="Output directory."),
        log_level: str = typer.Option("INFO", help="Logging level : DEBUG, INFO, WARNING, ERROR"),
        log_filter: List[str] = typer.Option(
            (),
            "--log-filter",
            "-lf",
            help="Regex filter for the logs (ex: 'type=WARNING,source=rates.*'). Repeat to combine.",
            show_default=False,
        ),
) -> None:
    """Solve the detection-cycle rate equations and report the emission rate.

    Args:
        config (Path): Run configuration file.
        out (Path | None): Output directory, overrides the configuration.
        log_level (str): Logging level (`DEBUG`, `INFO`, `WARNING`, `ERROR`).
        log_filter (list[str]): Optional regex filters applied to log level/source/message.
    """
    logger = _build_logger(log_level, log_filter)
    with _run_guard():
        run = load_run_config(config)
        logger.info(f"Loaded {config} (hash {run.config_hash()})")
        settings = run.kinetics
        rates = settings.rates
        pump_source = "configuration"
        if settings.pump_from_map is not None:
            source = settings.pump_from_map
            current_map = read_map_csv(source.path)
            if current_map.mode != "raw":
                raise ConfigSchemaError(f"'kinetics.pump_from_map.path' must be a raw map, got mode '{current_map.mode}'")
            # end if
            pixel = current_map.value_at(source.x_nm, source.y_nm)
            rates = dataclasses.replace(rates, pump_rate_ies_per_s=pixel * source.scale_per_s)
            pump_source = f"{Path(source.path).name} at ({source.x_nm:g}, {source.y_nm:g}) nm"
        # end if

        report = list(steady_state_report(rates))
        report.append(("gamma_closed_form_per_s", closed_form_emission_rate(rates)))
        report.append(("stationary_residual", stationary_residual(rates, steady_state(rates))))
        report.insert(0, ("pump_rate_ies_per_s", rates.pump_rate_ies_per_s))

        header = header_lines(run, "kinetics")
        writer = OutputWriter(_output_dir(out, run), run)
        if settings.trajectory:
            trajectory = evolve(rates, Populations.ground(), settings.t_final_s, settings.dt_s, settings.record_every)
            report.append(("trajectory_max_sum_error", trajectory.max_sum_error()))
            writer.add_text("trajectory.csv", trajectory_csv_text(trajectory, header))
        # end if
        writer.add_text("steady_state.txt", key_value_text(report, header))
        writer.commit()
    # end with

    table = Table(title=f"Detection cycle (pump from {pump_source})")
    table.add_column("Quantity", style="cyan")
    table.add_column("Value", justify="right")
    for key, value in report:
        table.add_row(key, f"{value:.10g}")
    # end for
    console.print(table)
    _print_diagnostics()
# end def kinetics_command
