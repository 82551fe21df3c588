"""Shared fixtures and the per-criterion summary of the acceptance suite."""

from __future__ import annotations

import pytest

# criterion number -> (title, outcome); filled in by the report hook below
_CRITERIA: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    if report.when == "setup" and report.skipped:
        _CRITERIA[number] = (title, "SKIP")
    elif report.when == "call":
        state = "PASS" if report.passed else "SKIP" if report.skipped else "FAIL"
        _CRITERIA[number] = (title, state)
    elif report.failed:
        _CRITERIA[number] = (title, "FAIL")


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, state = _CRITERIA[number]
        terminalreporter.write_line(f"criterion {number:>2}: {state:<4}  {title}")
