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

Console logger used by STMLDark.

Numerical diagnostics (neutrality, clamped wavefunctions, grid snapping) are
routed through :meth:`Logger.diagnostic` so that they are both printed and
counted per kind.
"""


# Imports
from collections import Counter
from dataclasses import dataclass
from enum import IntEnum
import inspect
import re
import threading
from typing import Optional, Sequence

from rich.console import Console
from rich.markup import escape


class LogLevel(IntEnum):
    """Logging severities supported by STMLDark."""

    DEBUG = 10
    INFO = 20
    WARNING = 30
    ERROR = 40
    CRITICAL = 50

# end class LogLevel


@dataclass(frozen=True)
class LogEntry:
    """Structured representation of a single log line.

    Attributes:
        level: Severity of the log entry.
        label: Text shown in the level column (``DIAG`` for diagnostics).
        source: Origin of the log (class or module name).
        message: Rendered message text.
    """

    level: LogLevel
    label: str
    source: str
    message: str
# end class LogEntry


class LogFilterRule:
    """AND-combination of regex criteria over level, source and message."""

    _KEY_MAP = {
        "type": "level",
        "level": "level",
        "source": "source",
        "module": "source",
        "message": "message",
        "msg": "message",
    }

    def __init__(
            self,
            *,
            level_pattern: Optional[re.Pattern] = None,
            source_pattern: Optional[re.Pattern] = None,
            message_pattern: Optional[re.Pattern] = None,
            raw: str = "",
    ) -> None:
        """Create a rule.

        Args:
            level_pattern: Regex matched against the level label.
            source_pattern: Regex matched against the source column.
            message_pattern: Regex matched against the message body.
            raw: Original specification, kept for display.

        Raises:
            ValueError: If no criterion is given.
        """
        if not any((level_pattern, source_pattern, message_pattern)):
            raise ValueError("A filter rule must declare at least one criterion")
        # end if
        self.level_pattern = level_pattern
        self.source_pattern = source_pattern
        self.message_pattern = message_pattern
        self.raw = raw
    # end def __init__

    @classmethod
    def from_spec(cls, spec: str) -> "LogFilterRule":
        """Parse a ``key=regex[,key=regex...]`` CLI specification.

        Keys are ``level`` (alias ``type``), ``source`` (alias ``module``) and
        ``message`` (alias ``msg``). Level patterns are case-insensitive.

        Args:
            spec: Raw specification, e.g. ``"level=DIAG,source=coupling.*"``.

        Returns:
            LogFilterRule: Parsed rule.

        Raises:
            ValueError: On empty, malformed or unknown criteria and bad regexes.
        """
        tokens = [token.strip() for token in re.split(r"[;,]", spec or "") if token.strip()]
        if not tokens:
            raise ValueError("Empty filter specification")
        # end if

        patterns: dict[str, re.Pattern] = {}
        for token in tokens:
            key, sep, value = token.partition("=")
            if not sep:
                raise ValueError(f"Invalid token '{token}'. Expected key=regex pairs")
            # end if
            field = cls._KEY_MAP.get(key.strip().lower())
            if field is None:
                raise ValueError(f"Unknown filter field '{key.strip()}' in '{spec}'")
            # end if
            value = value.strip()
            if not value:
                raise ValueError(f"Missing regex for '{key.strip()}' in '{spec}'")
            # end if
            try:
                patterns[field] = re.compile(value, re.IGNORECASE if field == "level" else 0)
            except re.error as exc:
                raise ValueError(f"Invalid regex '{value}': {exc}") from exc
            # end try
        # end for

        return cls(
            level_pattern=patterns.get("level"),
            source_pattern=patterns.get("source"),
            message_pattern=patterns.get("message"),
            raw=spec,
        )
    # end def from_spec

    def matches(self, entry: LogEntry) -> bool:
        """Return True when every configured criterion matches ``entry``."""
        if self.level_pattern and not self.level_pattern.search(entry.label):
            return False
        # end if
        if self.source_pattern and not self.source_pattern.search(entry.source):
            return False
        # end if
        if self.message_pattern and not self.message_pattern.search(entry.message):
            return False
        # end if
        return True
    # end def matches

    def __repr__(self) -> str:
        return f"<LogFilterRule raw={self.raw!r}>"
    # end def __repr__

# end class LogFilterRule


class Logger:
    """Process-wide rich logger writing to stderr.

    The logger is a singleton so that the CLI configures it once and every
    library module reaches the same instance through :meth:`get`.
    """

    _instance = None
    _lock = threading.Lock()

    _LEVEL_STYLES = {
        LogLevel.DEBUG: "green",
        LogLevel.INFO: None,
        LogLevel.WARNING: "yellow",
        LogLevel.ERROR: "red",
        LogLevel.CRITICAL: "red bold",
    }
    _LEVEL_COL_WIDTH = 8
    _SOURCE_COL_WIDTH = 24

    def __new__(cls, level: LogLevel = LogLevel.INFO):
        """Create (or return) the singleton instance."""
        with cls._lock:
            if cls._instance is None:
                instance = super().__new__(cls)
                instance._console = Console(stderr=True)
                instance._level = level
                instance._filters = []
                instance._diagnostics = Counter()
                cls._instance = instance
            # end if
        # end with
        return cls._instance
    # end def __new__

    @classmethod
    def get(cls) -> "Logger":
        """Return the singleton, creating it with defaults if needed."""
        return cls._instance if cls._instance is not None else cls()
    # end def get

    # region PUBLIC

    def set_level(self, level: LogLevel) -> None:
        """Set the minimum severity that is printed."""
        self._level = level
    # end def set_level

    def get_level(self) -> LogLevel:
        """Return the minimum severity that is printed."""
        return self._level
    # end def get_level

    def configure_filters(self, specs: Optional[Sequence[str]]) -> None:
        """Replace the include filters with rules parsed from ``specs``.

        Raises:
            ValueError: If a specification is invalid.
        """
        self._filters = [LogFilterRule.from_spec(spec) for spec in (specs or [])]
    # end def configure_filters

    def debug(self, msg, *, source: Optional[str] = None) -> None:
        """Log a debug message."""
        self._log(msg, LogLevel.DEBUG, source=source)
    # end def debug

    def info(self, msg, *, source: Optional[str] = None) -> None:
        """Log an info message."""
        self._log(msg, LogLevel.INFO, source=source)
    # end def info

    def warning(self, msg, *, source: Optional[str] = None) -> None:
        """Log a warning."""
        self._log(msg, LogLevel.WARNING, source=source)
    # end def warning

    def error(self, msg, *, source: Optional[str] = None) -> None:
        """Log an error that does not stop the run."""
        self._log(msg, LogLevel.ERROR, source=source)
    # end def error

    def critical(self, msg, *, source: Optional[str] = None) -> None:
        """Log an error that ends the run."""
        self._log(msg, LogLevel.CRITICAL, source=source)
    # end def critical

    def diagnostic(
            self,
            kind: str,
            message: str,
            *,
            source: Optional[str] = None,
            **params
    ) -> None:
        """Record and print a numerical diagnostic.

        Args:
            kind: Short identifier counted in :meth:`diagnostics`
                (e.g. ``"neutrality"``, ``"tip-clamp"``).
            message: Human readable description.
            source: Optional source override.
            **params: Extra ``key:value`` pairs appended to the message.
        """
        with self._lock:
            self._diagnostics[kind] += 1
        # end with
        details = ", ".join(f"{key}:{value}" for key, value in params.items())
        text = f"{kind}: {message}" + (f" ({details})" if details else "")
        self._log(text, LogLevel.WARNING, source=source, label="DIAG", style="magenta")
    # end def diagnostic

    def diagnostics(self) -> dict[str, int]:
        """Return a snapshot of the diagnostic counters."""
        with self._lock:
            return dict(self._diagnostics)
        # end with
    # end def diagnostics

    def reset_diagnostics(self) -> None:
        """Clear the diagnostic counters."""
        with self._lock:
            self._diagnostics.clear()
        # end with
    # end def reset_diagnostics

    # endregion PUBLIC

    # region PRIVATE

    def _log(
            self,
            msg,
            level: LogLevel,
            *,
            source: Optional[str] = None,
            label: Optional[str] = None,
            style: Optional[str] = None,
    ) -> None:
        """Apply level and filter checks, then print the entry."""
        if self._level > level:
            return
        # end if
        entry = LogEntry(
            level=level,
            label=label or level.name,
            source=source or self._infer_source(),
            message=str(msg),
        )
        if self._filters and not any(rule.matches(entry) for rule in self._filters):
            return
        # end if
        level_markup = self._format_level(entry.label, style or self._LEVEL_STYLES.get(level))
        source_markup = self._format_source(entry.source)
        self._console.log(f"{level_markup} {source_markup} {escape(entry.message)}", _stack_offset=3)
    # end def _log

    def _infer_source(self) -> str:
        """Name of the calling class, or of its module."""
        frame = inspect.currentframe()
        try:
            while frame and frame.f_globals.get("__name__") == __name__:
                frame = frame.f_back
            # end while
            if frame is None:
                return "unknown"
            # end if
            local_self = frame.f_locals.get("self")
            if local_self is not None:
                return local_self.__class__.__name__
            # end if
            return frame.f_globals.get("__name__", "unknown")
        finally:
            del frame
        # end try
    # end def _infer_source

    def _format_level(self, label: str, style: Optional[str]) -> str:
        """Pad the level column and wrap it in a style tag."""
        padded = f"{label:<{self._LEVEL_COL_WIDTH}}"
        return f"[{style}]{padded}[/]" if style else padded
    # end def _format_level

    def _format_source(self, source: str) -> str:
        """Pad (and cut) the source column."""
        text = source[:self._SOURCE_COL_WIDTH]
        return f"[dim]{text:<{self._SOURCE_COL_WIDTH}}[/]"
    # end def _format_source

    # endregion PRIVATE

# end class Logger


def setup_logger(
        level: str = "INFO",
        filters: Optional[Sequence[str]] = None,
) -> Logger:
    """Configure the global logger.

    Args:
        level: Level name (case-insensitive). Unknown names fall back to INFO.
        filters: Optional filter specifications (see :class:`LogFilterRule`).

    Returns:
        Logger: The configured singleton.

    Raises:
        ValueError: If a filter specification is invalid.
    """
    logger = Logger.get()
    logger.set_level(LogLevel.__members__.get(level.upper(), LogLevel.INFO))
    logger.configure_filters(filters)
    logger.reset_diagnostics()
    return logger
# end def setup_logger
