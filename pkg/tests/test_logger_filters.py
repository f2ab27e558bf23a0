"""Tests for the logging filters and numerical diagnostics."""

from __future__ import annotations

import pytest

from stmldark.utils.logger import (
    LogEntry,
    LogFilterRule,
    LogLevel,
    Logger,
    setup_logger,
)


def _capture(monkeypatch, logger: Logger) -> list[str]:
    captured: list[str] = []

    def fake_log(message, *args, **kwargs):
        captured.append(message)

    monkeypatch.setattr(logger._console, "log", fake_log)
    return captured


def test_filter_rule_combines_level_and_source():
    rule = LogFilterRule.from_spec("type=INFO|WARNING,source=coupling.*")

    entry_ok = LogEntry(LogLevel.INFO, "INFO", "coupling.coulomb", "ready")
    entry_bad_level = LogEntry(LogLevel.DEBUG, "DEBUG", "coupling.coulomb", "ignored")
    entry_bad_source = LogEntry(LogLevel.INFO, "INFO", "PreparedChannel", "ignored")

    assert rule.matches(entry_ok)
    assert not rule.matches(entry_bad_level)
    assert not rule.matches(entry_bad_source)


@pytest.mark.parametrize("spec", ["", "level", "colour=red", "source=", "message=("])
def test_invalid_filter_specs_are_rejected(spec):
    with pytest.raises(ValueError):
        LogFilterRule.from_spec(spec)


def test_logger_applies_and_filters_entries(monkeypatch):
    logger = setup_logger(level="DEBUG", filters=["type=INFO,source=scan.*"])
    captured = _capture(monkeypatch, logger)

    logger.info("scan started", source="scan.scanner")
    logger.info("other module", source="kinetics.rates")
    logger.warning("scan warning", source="scan.scanner")

    assert len(captured) == 1
    assert "scan started" in captured[0]


def test_multiple_filters_work_as_or(monkeypatch):
    logger = setup_logger(level="DEBUG", filters=["type=ERROR", "source=scan.*"])
    captured = _capture(monkeypatch, logger)

    logger.info("scan info shown", source="scan.scanner")
    logger.error("error anywhere", source="Other")
    logger.warning("ignored warning", source="Other")

    assert len(captured) == 2
    assert any("scan info shown" in msg for msg in captured)
    assert any("error anywhere" in msg for msg in captured)


def test_level_threshold_hides_debug(monkeypatch):
    logger = setup_logger(level="warning")
    captured = _capture(monkeypatch, logger)

    logger.debug("hidden")
    logger.info("hidden too")
    logger.error("shown")

    assert len(captured) == 1
    assert "shown" in captured[0]


def test_diagnostics_are_counted_and_labelled(monkeypatch):
    logger = setup_logger(level="INFO")
    captured = _capture(monkeypatch, logger)

    logger.diagnostic("tip-clamp", "point inside the tip sphere", point_nm=(0, 0, 1.2))
    logger.diagnostic("tip-clamp", "point inside the tip sphere")
    logger.diagnostic("neutrality", "source is charged", charge_e=0.1)

    assert logger.diagnostics() == {"tip-clamp": 2, "neutrality": 1}
    assert all("DIAG" in msg for msg in captured)
    assert "charge_e:0.1" in captured[-1]


def test_diagnostics_are_counted_even_when_filtered(monkeypatch):
    logger = setup_logger(level="INFO", filters=["source=nothing-matches"])
    captured = _capture(monkeypatch, logger)

    logger.diagnostic("plane-snap", "snapped", source="density")

    assert captured == []
    assert logger.diagnostics() == {"plane-snap": 1}


def test_setup_logger_resets_diagnostics():
    logger = setup_logger()
    logger.diagnostic("profile-snap", "snapped")
    assert setup_logger().diagnostics() == {}


def test_source_is_inferred_from_caller(monkeypatch):
    logger = setup_logger(level="DEBUG", filters=["source=test_logger_filters"])
    captured = _capture(monkeypatch, logger)

    logger.info("from a test function")

    assert len(captured) == 1


def test_level_and_source_columns_are_padded():
    logger = setup_logger(level="INFO")

    level_col = logger._format_level("WARN", None)
    assert len(level_col) == logger._LEVEL_COL_WIDTH

    source_col = logger._format_source("PreparedChannel")
    stripped = source_col.replace("[dim]", "").replace("[/]", "")
    assert len(stripped) == logger._SOURCE_COL_WIDTH
