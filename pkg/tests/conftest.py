"""Collects acceptance outcomes and prints one line per criterion."""

import re
from collections import defaultdict

_CRITERION = re.compile(r"test_acceptance\.py::test_c(\d+)")
_outcomes = defaultdict(list)


def pytest_runtest_logreport(report):
    m = _CRITERION.search(report.nodeid)
    if m and (report.when == "call" or report.outcome != "passed"):
        _outcomes[int(m.group(1))].append(report.outcome == "passed")


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    from test_acceptance import CRITERIA

    terminalreporter.section("acceptance criteria")
    for k in sorted(CRITERIA):
        if k not in _outcomes:
            status = "NOT RUN"
        else:
            status = "PASS" if all(_outcomes[k]) else "FAIL"
        terminalreporter.write_line(f"ACCEPTANCE {k:2d} {status}: {CRITERIA[k]}")
