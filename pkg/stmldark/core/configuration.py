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

Run configuration files.

A run configuration is a TOML (or JSON) document with a top-level
``schema = 1``. Every section is optional; missing keys take the defaults
below and unknown keys are rejected. Relative paths are resolved against the
directory of the configuration file.
"""


# Imports
import hashlib
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Tuple, Union

import numpy as np
import toml

from stmldark.coupling import KERNELS
from stmldark.current import GridSettings, TransitionChannel, bias_grid
from stmldark.density import CubeParseError, GaussianDensityParams, TransitionDensity, load_cube, read_cube_spec
from stmldark.electrodes import ElectrodeModel
from stmldark.errors import StmlDarkError
from stmldark.kinetics import RateModel
from stmldark.scan import MAP_MODES, scan_axis
from stmldark.utils.units import BOHR_NM


PathLike = Union[str, Path]

SCHEMA_VERSION = 1

# Keys left out of the configuration hash
UNHASHED_KEYS = ("threads", "output")

_REQUIRED = object()


class ConfigError(StmlDarkError):
    """Base class for run configuration errors."""
# end class ConfigError


class ConfigParseError(ConfigError):
    """Raised when a configuration file is not valid TOML/JSON."""
# end class ConfigParseError


class ConfigSchemaError(ConfigError):
    """Raised on unknown, missing or invalid keys and on missing files."""
# end class ConfigSchemaError


# Section schemas: key -> (kind, default)
_TOP = {
    "schema": ("int", _REQUIRED),
    "bias_v": ("float", -2.5),
    "threads": ("int", 0),
    "output": ("str", None),
}
_ELECTRODES = {
    "fermi_energy_ev": ("float", -4.64),
    "tip_radius_nm": ("float", 0.5),
    "tip_height_nm": ("float", 1.0),
    "substrate_z_nm": ("float", -0.3),
    "dos_tip": ("float", 1.0),
    "dos_substrate": ("float", 1.0),
}
_GRID = {
    "spacing_nm": ("float", 0.1),
    "lateral_half_extent_nm": ("float", 6.0),
    "lateral_margin_nm": ("float", 3.0),
}
_COUPLING = {
    "neutrality_tol": ("float", 1e-6),
    "kernel": ("str", "isolated"),
    "direct_max_pairs": ("int", 200_000_000),
}
_QUADRATURE = {
    "n_energy": ("int", 17),
    "convergence_tol": ("float", 5e-3),
}
_CHANNEL = {
    "label": ("str", None),
    "e_eg_ev": ("float", 2.0),
    "density": ("table", _REQUIRED),
}
_GAUSSIAN = {
    "kind": ("str", _REQUIRED),
    "sigma_nm": ("float", 1.0),
    "sigma1_nm": ("float", 0.5),
    "sigma2_nm": ("float", 1.0),
}
_CUBE = {
    "kind": ("str", _REQUIRED),
    "path": ("path", _REQUIRED),
}
_SCAN = {
    "x_min_nm": ("float", None),
    "x_max_nm": ("float", None),
    "nx": ("int", None),
    "y_min_nm": ("float", None),
    "y_max_nm": ("float", None),
    "ny": ("int", None),
    "normalization": ("str", "linear"),
    "log_floor": ("float", -12.0),
    "profile_offsets_nm": ("floats", [0.0, 0.4]),
}
_SWEEP = {
    "start_v": ("float", -3.0),
    "stop_v": ("float", 3.0),
    "step_v": ("float", 0.1),
    "biases": ("floats", None),
    "tip_x_nm": ("float", 0.0),
    "tip_y_nm": ("float", 0.0),
    "asymmetry_bias_v": ("float", 2.5),
}
_KINETICS = {
    "pump_rate_ies_per_s": ("float", 13.0),
    "laser_pump_per_s": ("float", 1e8),
    "gamma0_per_s": ("float", 4e4),
    "gamma3_per_s": ("float", None),
    "t_final_s": ("float", 1e-5),
    "dt_s": ("float", 5e-10),
    "record_every": ("int", 100),
    "trajectory": ("bool", False),
    "pump_from_map": ("table", None),
}
_PUMP_FROM_MAP = {
    "path": ("path", _REQUIRED),
    "x_nm": ("float", 0.0),
    "y_nm": ("float", 0.0),
    "scale_per_s": ("float", _REQUIRED),
}
_SECTIONS = ("electrodes", "grid", "coupling", "quadrature", "channels", "scan", "sweep", "kinetics")


def _convert(kind: str, value: Any, where: str, base_dir: Path) -> Any:
    """Check and normalise a single value of the given kind."""
    if kind == "float":
        if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
            raise ConfigSchemaError(f"'{where}' must be a finite number, got {value!r}")
        # end if
        return float(value)
    elif kind == "int":
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigSchemaError(f"'{where}' must be an integer, got {value!r}")
        # end if
        return int(value)
    elif kind == "str":
        if not isinstance(value, str):
            raise ConfigSchemaError(f"'{where}' must be a string, got {value!r}")
        # end if
        return value
    elif kind == "bool":
        if not isinstance(value, bool):
            raise ConfigSchemaError(f"'{where}' must be true or false, got {value!r}")
        # end if
        return value
    elif kind == "floats":
        if not isinstance(value, list):
            raise ConfigSchemaError(f"'{where}' must be a list of numbers, got {value!r}")
        # end if
        return [_convert("float", item, f"{where}[{i}]", base_dir) for i, item in enumerate(value)]
    elif kind == "path":
        path = Path(_convert("str", value, where, base_dir)).expanduser()
        path = (path if path.is_absolute() else base_dir / path).resolve()
        if not path.is_file():
            raise ConfigSchemaError(f"'{where}' refers to a missing file: {path}")
        # end if
        return str(path)
    elif kind == "table":
        if not isinstance(value, dict):
            raise ConfigSchemaError(f"'{where}' must be a table, got {value!r}")
        # end if
        return value
    # end if
    raise ConfigSchemaError(f"'{where}' has unsupported kind {kind}")
# end def _convert


def _read_table(raw: Any, schema: Mapping[str, Tuple[str, Any]], where: str, base_dir: Path) -> Dict[str, Any]:
    """Validate a table against a schema and fill in defaults."""
    if raw is None:
        raw = {}
    # end if
    if not isinstance(raw, dict):
        raise ConfigSchemaError(f"'{where}' must be a table")
    # end if
    unknown = sorted(set(raw) - set(schema))
    if unknown:
        raise ConfigSchemaError(f"Unknown key(s) in '{where}': {', '.join(unknown)}")
    # end if
    table = {}
    for key, (kind, default) in schema.items():
        name = f"{where}.{key}" if where else key
        if key in raw:
            table[key] = _convert(kind, raw[key], name, base_dir)
        elif default is _REQUIRED:
            raise ConfigSchemaError(f"Missing required key '{name}'")
        else:
            table[key] = list(default) if isinstance(default, list) else default
        # end if
    # end for
    return table
# end def _read_table


def _load_document(path: Path) -> Dict[str, Any]:
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigParseError(f"Unable to read '{path}': {exc}") from exc
    # end try
    try:
        if path.suffix.lower() == ".json":
            document = json.loads(text)
        else:
            document = toml.loads(text)
        # end if
    except (toml.TomlDecodeError, json.JSONDecodeError) as exc:
        raise ConfigParseError(f"Unable to parse '{path}': {exc}") from exc
    # end try
    if not isinstance(document, dict):
        raise ConfigParseError(f"'{path}' must contain a table at top level")
    # end if
    return document
# end def _load_document


@dataclass(frozen=True)
class ChannelConfig:
    """One ``[[channels]]`` entry."""

    label: str
    e_eg_ev: float
    kind: str
    gaussian: Optional[GaussianDensityParams] = None
    path: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        if self.kind == "gaussian":
            density = {"kind": "gaussian", **self.gaussian.to_dict()}
        else:
            density = {"kind": "cube", "path": self.path}
        # end if
        return {"label": self.label, "e_eg_ev": self.e_eg_ev, "density": density}
    # end def to_dict

# end class ChannelConfig


@dataclass(frozen=True)
class ScanConfig:
    """Resolved ``[scan]`` table."""

    x_min_nm: float
    x_max_nm: float
    nx: int
    y_min_nm: float
    y_max_nm: float
    ny: int
    normalization: str = "linear"
    log_floor: float = -12.0
    profile_offsets_nm: Tuple[float, ...] = (0.0, 0.4)

    def x_axis(self) -> np.ndarray:
        return scan_axis(self.x_min_nm, self.x_max_nm, self.nx)
    # end def x_axis

    def y_axis(self) -> np.ndarray:
        return scan_axis(self.y_min_nm, self.y_max_nm, self.ny)
    # end def y_axis

# end class ScanConfig


@dataclass(frozen=True)
class SweepConfig:
    """Resolved ``[sweep]`` table."""

    biases_v: Tuple[float, ...]
    tip_lateral_nm: Tuple[float, float]
    asymmetry_bias_v: float
# end class SweepConfig


@dataclass(frozen=True)
class PumpFromMap:
    """Pump rate taken from a raw map pixel: I(x, y) * scale."""

    path: str
    x_nm: float
    y_nm: float
    scale_per_s: float
# end class PumpFromMap


@dataclass(frozen=True)
class KineticsConfig:
    """Resolved ``[kinetics]`` table."""

    rates: RateModel
    t_final_s: float
    dt_s: float
    record_every: int
    trajectory: bool
    pump_from_map: Optional[PumpFromMap] = None
# end class KineticsConfig


@dataclass(frozen=True)
class RunConfig:
    """Validated run configuration with every default applied.

    Attributes:
        source: Configuration file the run was loaded from.
        effective: Canonical dictionary form (defaults applied, absolute paths).
    """

    source: Path
    bias_v: float
    threads: int
    output: Optional[str]
    electrodes: ElectrodeModel
    grid: GridSettings
    kernel: str
    neutrality_tol: float
    direct_max_pairs: int
    n_energy: int
    convergence_tol: float
    channels: Tuple[ChannelConfig, ...]
    scan: ScanConfig
    sweep: SweepConfig
    kinetics: KineticsConfig
    effective: Mapping[str, Any]

    # region PROPERTIES

    @property
    def has_cubes(self) -> bool:
        return any(c.kind == "cube" for c in self.channels)
    # end def has_cubes

    @property
    def min_energy_gap_ev(self) -> float:
        return min(c.e_eg_ev for c in self.channels)
    # end def min_energy_gap_ev

    # endregion PROPERTIES

    def config_hash(self) -> str:
        """First 16 hex digits of SHA-256 over the canonical effective config."""
        return config_hash(self.effective)
    # end def config_hash

    def effective_json(self) -> str:
        return json.dumps(self.effective, indent=2, sort_keys=True) + "\n"
    # end def effective_json

    def load_transitions(self) -> List[TransitionDensity]:
        """Build the transition density of every channel (cubes are read here).

        Raises:
            CubeParseError: If a cube file is malformed.
            NeutralityError: If a cube density is not charge neutral.
        """
        transitions = []
        for channel in self.channels:
            if channel.kind == "gaussian":
                transitions.append(TransitionDensity.analytic(channel.gaussian, channel.e_eg_ev, channel.label))
            else:
                transitions.append(
                    load_cube(channel.path, channel.e_eg_ev, channel.label, neutrality_tol=self.neutrality_tol)
                )
            # end if
        # end for
        return transitions
    # end def load_transitions

    def load_channels(self) -> List[TransitionChannel]:
        return [TransitionChannel(t) for t in self.load_transitions()]
    # end def load_channels

# end class RunConfig


def _drop_none(value: Any) -> Any:
    """Remove keys whose value is unset."""
    if isinstance(value, dict):
        return {k: _drop_none(v) for k, v in value.items() if v is not None}
    # end if
    return value
# end def _drop_none


def config_hash(effective: Mapping[str, Any]) -> str:
    """Hash of an effective configuration, ignoring thread count and output."""
    hashed = {k: v for k, v in effective.items() if k not in UNHASHED_KEYS}
    canonical = json.dumps(hashed, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()[:16]
# end def config_hash


def _build_channels(raw: Any, base_dir: Path) -> Tuple[ChannelConfig, ...]:
    if raw is None:
        return (ChannelConfig(label="dark", e_eg_ev=2.0, kind="gaussian", gaussian=GaussianDensityParams()),)
    # end if
    if not isinstance(raw, list) or not raw:
        raise ConfigSchemaError("'channels' must be a non-empty array of tables")
    # end if
    channels, labels = [], set()
    for index, entry in enumerate(raw):
        where = f"channels[{index}]"
        table = _read_table(entry, _CHANNEL, where, base_dir)
        density = table["density"]
        kind = density.get("kind")
        if kind == "gaussian":
            params = _read_table(density, _GAUSSIAN, f"{where}.density", base_dir)
            del params["kind"]
            gaussian, path = GaussianDensityParams(**params), None
        elif kind == "cube":
            params = _read_table(density, _CUBE, f"{where}.density", base_dir)
            gaussian, path = None, params["path"]
        else:
            raise ConfigSchemaError(f"'{where}.density.kind' must be 'gaussian' or 'cube', got {kind!r}")
        # end if
        label = table["label"] or (Path(path).stem if path else f"channel{index + 1}")
        if label in labels:
            raise ConfigSchemaError(f"Duplicate channel label '{label}'")
        # end if
        labels.add(label)
        if table["e_eg_ev"] <= 0.0:
            raise ConfigSchemaError(f"'{where}.e_eg_ev' must be positive, got {table['e_eg_ev']}")
        # end if
        channels.append(ChannelConfig(label=label, e_eg_ev=table["e_eg_ev"], kind=kind, gaussian=gaussian, path=path))
    # end for
    return tuple(channels)
# end def _build_channels


def _build_scan(table: Dict[str, Any], channels: Tuple[ChannelConfig, ...]) -> ScanConfig:
    cubes = [c for c in channels if c.kind == "cube"]
    if cubes:
        spec = read_cube_spec(cubes[0].path)
        x_extent = (spec.origin[0] * BOHR_NM, (spec.origin[0] + (spec.dims[0] - 1) * spec.spacing[0]) * BOHR_NM)
        y_extent = (spec.origin[1] * BOHR_NM, (spec.origin[1] + (spec.dims[1] - 1) * spec.spacing[1]) * BOHR_NM)
        defaults = {"x": (*x_extent, 61), "y": (*y_extent, 61)}
    else:
        defaults = {"x": (-1.5, 1.5, 41), "y": (-1.5, 1.5, 41)}
    # end if
    for axis in ("x", "y"):
        for key, value in zip((f"{axis}_min_nm", f"{axis}_max_nm", f"n{axis}"), defaults[axis]):
            if table[key] is None:
                table[key] = value
            # end if
        # end for
        if table[f"n{axis}"] < 1:
            raise ConfigSchemaError(f"'scan.n{axis}' must be at least 1")
        # end if
        if table[f"{axis}_max_nm"] < table[f"{axis}_min_nm"]:
            raise ConfigSchemaError(f"'scan.{axis}_max_nm' is below 'scan.{axis}_min_nm'")
        # end if
    # end for
    if table["normalization"] not in MAP_MODES:
        raise ConfigSchemaError(f"'scan.normalization' must be one of {MAP_MODES}, got {table['normalization']!r}")
    # end if
    return ScanConfig(**{**table, "profile_offsets_nm": tuple(table["profile_offsets_nm"])})
# end def _build_scan


def _build_sweep(table: Dict[str, Any]) -> SweepConfig:
    if table["biases"] is not None:
        biases = tuple(table["biases"])
    else:
        if table["step_v"] <= 0.0 or table["stop_v"] < table["start_v"]:
            raise ConfigSchemaError("'sweep' needs step_v > 0 and stop_v >= start_v")
        # end if
        biases = tuple(bias_grid(table["start_v"], table["stop_v"], table["step_v"]))
    # end if
    return SweepConfig(
        biases_v=biases,
        tip_lateral_nm=(table["tip_x_nm"], table["tip_y_nm"]),
        asymmetry_bias_v=abs(table["asymmetry_bias_v"]),
    )
# end def _build_sweep


def _build_kinetics(table: Dict[str, Any], base_dir: Path) -> KineticsConfig:
    pump = None
    if table["pump_from_map"] is not None:
        pump_table = _read_table(table["pump_from_map"], _PUMP_FROM_MAP, "kinetics.pump_from_map", base_dir)
        if pump_table["scale_per_s"] < 0.0:
            raise ConfigSchemaError("'kinetics.pump_from_map.scale_per_s' must be non-negative")
        # end if
        pump = PumpFromMap(**pump_table)
        table["pump_from_map"] = pump_table
    # end if
    if table["gamma3_per_s"] is None:
        table["gamma3_per_s"] = table["gamma0_per_s"]
    # end if
    if table["t_final_s"] <= 0.0 or table["dt_s"] <= 0.0 or table["record_every"] < 1:
        raise ConfigSchemaError("'kinetics' needs t_final_s > 0, dt_s > 0 and record_every >= 1")
    # end if
    rates = RateModel(
        pump_rate_ies_per_s=table["pump_rate_ies_per_s"],
        laser_pump_per_s=table["laser_pump_per_s"],
        gamma0_per_s=table["gamma0_per_s"],
        gamma3_per_s=table["gamma3_per_s"],
    )
    return KineticsConfig(
        rates=rates,
        t_final_s=table["t_final_s"],
        dt_s=table["dt_s"],
        record_every=table["record_every"],
        trajectory=table["trajectory"],
        pump_from_map=pump,
    )
# end def _build_kinetics


def parse_run_config(document: Mapping[str, Any], base_dir: PathLike, source: Optional[PathLike] = None) -> RunConfig:
    """Validate an already parsed configuration document.

    Args:
        document: Parsed TOML/JSON content.
        base_dir: Directory relative paths are resolved against.
        source: File the document came from, for reporting.

    Returns:
        RunConfig: Configuration with defaults applied.

    Raises:
        ConfigSchemaError: On unknown, missing or invalid keys, or missing files.
        CubeParseError: If the header of the first cube file is malformed.
    """
    base_dir = Path(base_dir).resolve()
    document = dict(document)
    sections = {name: document.pop(name, None) for name in _SECTIONS}
    top = _read_table(document, _TOP, "", base_dir)
    if top["schema"] != SCHEMA_VERSION:
        raise ConfigSchemaError(f"Unsupported schema version {top['schema']}, expected {SCHEMA_VERSION}")
    # end if
    if top["threads"] < 0:
        raise ConfigSchemaError("'threads' must be >= 0 (0 = one per CPU)")
    # end if

    electrodes = _read_table(sections["electrodes"], _ELECTRODES, "electrodes", base_dir)
    grid = _read_table(sections["grid"], _GRID, "grid", base_dir)
    coupling = _read_table(sections["coupling"], _COUPLING, "coupling", base_dir)
    quadrature = _read_table(sections["quadrature"], _QUADRATURE, "quadrature", base_dir)
    scan = _read_table(sections["scan"], _SCAN, "scan", base_dir)
    sweep = _read_table(sections["sweep"], _SWEEP, "sweep", base_dir)
    kinetics = _read_table(sections["kinetics"], _KINETICS, "kinetics", base_dir)

    if coupling["kernel"] not in KERNELS:
        raise ConfigSchemaError(f"'coupling.kernel' must be one of {KERNELS}, got {coupling['kernel']!r}")
    # end if
    if coupling["neutrality_tol"] <= 0.0 or coupling["direct_max_pairs"] < 1:
        raise ConfigSchemaError("'coupling' needs neutrality_tol > 0 and direct_max_pairs >= 1")
    # end if
    if quadrature["n_energy"] < 2 or quadrature["convergence_tol"] <= 0.0:
        raise ConfigSchemaError("'quadrature' needs n_energy >= 2 and convergence_tol > 0")
    # end if

    try:
        channels = _build_channels(sections["channels"], base_dir)
        electrode_model = ElectrodeModel(**electrodes)
        grid_settings = GridSettings(**grid)
        scan_config = _build_scan(scan, channels)
        sweep_config = _build_sweep(sweep)
        kinetics_config = _build_kinetics(kinetics, base_dir)
    except (ConfigError, CubeParseError):
        raise
    except StmlDarkError as exc:
        raise ConfigSchemaError(str(exc)) from exc
    # end try

    effective = _drop_none({
        "schema": SCHEMA_VERSION,
        "bias_v": top["bias_v"],
        "threads": top["threads"],
        "output": top["output"],
        "electrodes": electrodes,
        "grid": grid,
        "coupling": coupling,
        "quadrature": quadrature,
        "channels": [c.to_dict() for c in channels],
        "scan": scan,
        "sweep": {**sweep, "biases": list(sweep_config.biases_v)},
        "kinetics": kinetics,
    })
    return RunConfig(
        source=Path(source).resolve() if source is not None else base_dir,
        bias_v=top["bias_v"],
        threads=top["threads"],
        output=top["output"],
        electrodes=electrode_model,
        grid=grid_settings,
        kernel=coupling["kernel"],
        neutrality_tol=coupling["neutrality_tol"],
        direct_max_pairs=coupling["direct_max_pairs"],
        n_energy=quadrature["n_energy"],
        convergence_tol=quadrature["convergence_tol"],
        channels=channels,
        scan=scan_config,
        sweep=sweep_config,
        kinetics=kinetics_config,
        effective=effective,
    )
# end def parse_run_config


def load_run_config(path: PathLike) -> RunConfig:
    """Load and validate a run configuration file.

    Raises:
        ConfigParseError: If the file cannot be read or parsed.
        ConfigSchemaError: If the content does not match the schema.
    """
    path = Path(path)
    return parse_run_config(_load_document(path), path.resolve().parent, path)
# end def load_run_config
