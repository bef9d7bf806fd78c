"""Acceptance bookkeeping: one PASS/FAIL line per criterion in the summary."""

from __future__ import annotations

import pytest

_RESULTS: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title, budget): acceptance criterion with a time budget in seconds")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None or report.when not in ("setup", "call"):
        return
    number, title, budget = marker.args
    entry = _RESULTS.setdefault(
        number, {"title": title, "budget": budget, "passed": True, "seconds": 0.0, "tests": 0}
    )
    if report.when == "call":
        entry["tests"] += 1
        entry["seconds"] += report.duration
    if report.failed:
        entry["passed"] = False


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        entry = _RESULTS[number]
        in_time = entry["seconds"] < entry["budget"]
        verdict = "PASS" if entry["passed"] and in_time else "FAIL"
        note = "" if in_time else " over budget"
        terminalreporter.write_line(
            f"{verdict}  criterion {number:2d}: {entry['title']} "
            f"({entry['tests']} checks, {entry['seconds']:.1f} s of {entry['budget']} s{note})"
        )
