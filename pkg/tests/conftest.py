"""Collects acceptance outcomes and prints one line per criterion."""
from collections import defaultdict

import pytest

_outcomes: dict[int, list] = defaultdict(list)
_titles: dict[int, str] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion a test belongs to")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    _titles[number] = title
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _outcomes[number].append((item.name, report.outcome, report.duration))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_outcomes):
        rows = _outcomes[number]
        failed = [name for name, outcome, _ in rows if outcome != "passed"]
        status = "FAIL" if failed else "PASS"
        seconds = sum(d for _, _, d in rows)
        line = f"criterion {number}: {status}  {_titles[number]}  ({len(rows) - len(failed)}/{len(rows)} checks, {seconds:.2f} s)"
        if failed:
            line += "  failing: " + ", ".join(failed)
        terminalreporter.write_line(line)
