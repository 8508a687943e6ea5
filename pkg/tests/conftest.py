"""Collects one pass/fail line per acceptance criterion for the terminal summary."""

import pytest

_RESULTS: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title, budget): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    number, title, budget = mark.args
    if report.when == "call" or (report.when == "setup" and report.failed):
        _RESULTS[number] = (title, budget, report.passed, report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        title, budget, passed, duration = _RESULTS[number]
        limit = f"budget {budget:g}s" if budget else "no time budget"
        verdict = "PASS" if passed else "FAIL"
        terminalreporter.write_line(
            f"criterion {number:2d} {verdict}  {title}  ({duration:.1f}s, {limit})")
