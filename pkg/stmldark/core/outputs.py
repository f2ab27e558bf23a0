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

Output directory writer.

Files are staged in memory and only written by :meth:`OutputWriter.commit`,
so a run that fails leaves no partial outputs. Every text output starts with
a header naming the tool version and the configuration hash.
"""


# Imports
from pathlib import Path
from typing import Callable, Iterable, List, Sequence, Tuple, Union

from stmldark import __version__
from stmldark.current import BiasCurve
from stmldark.kinetics import Trajectory
from stmldark.utils.logger import Logger
from .configuration import RunConfig


PathLike = Union[str, Path]

EFFECTIVE_CONFIG_NAME = "effective_config.json"


def _format(value: float) -> str:
    return f"{value:.15g}"
# end def _format


def header_lines(config: RunConfig, command: str) -> List[str]:
    """Provenance lines shared by all text outputs (without the comment marker)."""
    return [
        f"STMLDark {__version__}",
        f"command: {command}",
        f"config_hash: {config.config_hash()}",
    ]
# end def header_lines


def _commented(lines: Iterable[str]) -> List[str]:
    return [f"# {line}" for line in lines]
# end def _commented


def curve_csv_text(curve: BiasCurve, header: Sequence[str] = ()) -> str:
    """Bias curve normalised by its maximum: ``bias_V,current_rel`` rows."""
    lines = _commented(header)
    lines.append(f"# tip_nm: {_format(curve.tip_lateral_nm[0])},{_format(curve.tip_lateral_nm[1])}")
    lines.append("# bias_V,current_rel")
    for bias, value in zip(curve.biases_v, curve.normalized()):
        lines.append(f"{_format(bias)},{_format(value)}")
    # end for
    return "\n".join(lines) + "\n"
# end def curve_csv_text


def trajectory_csv_text(trajectory: Trajectory, header: Sequence[str] = ()) -> str:
    lines = _commented(header)
    lines.append("# t_s,p0,p3,p17")
    for t, row in zip(trajectory.times_s, trajectory.populations):
        lines.append(",".join(_format(v) for v in (t, *row)))
    # end for
    return "\n".join(lines) + "\n"
# end def trajectory_csv_text


def key_value_text(items: Iterable[Tuple[str, object]], header: Sequence[str] = ()) -> str:
    """``key = value`` lines, floats with 15 significant digits."""
    lines = _commented(header)
    for key, value in items:
        text = _format(value) if isinstance(value, float) else str(value)
        lines.append(f"{key} = {text}")
    # end for
    return "\n".join(lines) + "\n"
# end def key_value_text


class OutputWriter:
    """Collects the files of a run and writes them in one go.

    Args:
        directory: Output directory, created on commit.
        config: Run configuration, echoed as ``effective_config.json``.
    """

    def __init__(self, directory: PathLike, config: RunConfig):
        self._directory = Path(directory)
        self._config = config
        self._staged: List[Tuple[str, Callable[[Path], object]]] = []
    # end def __init__

    # region PROPERTIES

    @property
    def directory(self) -> Path:
        return self._directory
    # end def directory

    @property
    def names(self) -> List[str]:
        return [name for name, _ in self._staged]
    # end def names

    # endregion PROPERTIES

    def add_text(self, name: str, text: str) -> None:
        self._staged.append((name, lambda path: path.write_text(text)))
    # end def add_text

    def add(self, name: str, writer: Callable[[Path], object]) -> None:
        """Stage a file produced by ``writer(path)``."""
        self._staged.append((name, writer))
    # end def add

    def commit(self) -> List[Path]:
        """Write the effective configuration and every staged file.

        Returns:
            list[Path]: Written files, configuration echo first.
        """
        self._directory.mkdir(parents=True, exist_ok=True)
        written = [self._directory / EFFECTIVE_CONFIG_NAME]
        written[0].write_text(self._config.effective_json())
        for name, writer in self._staged:
            path = self._directory / name
            writer(path)
            written.append(path)
        # end for
        Logger.get().info(f"Wrote {len(written)} file(s) to {self._directory}")
        return written
    # end def commit

# end class OutputWriter
