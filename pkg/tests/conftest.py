import os
import re
import sys
import time

sys.path.insert(0, os.path.dirname(__file__))

RUNTIME_BUDGET = 300.0

_CRITERIA = {}
_PATTERN = re.compile(r"test_acceptance\.py::test_criterion_(\d+)_")
_START = [None]


def pytest_sessionstart(session):
    _START[0] = time.perf_counter()


def _elapsed():
    return time.perf_counter() - _START[0] if _START[0] is not None else 0.0


def pytest_runtest_logreport(report):
    m = _PATTERN.search(report.nodeid)
    if not m:
        return
    n = int(m.group(1))
    if report.when == "call" or report.outcome != "passed":
        _CRITERIA[n] = _CRITERIA.get(n, True) and report.outcome == "passed"


def pytest_sessionfinish(session, exitstatus):
    # criterion 10 also bounds the wall time of the whole suite
    if _CRITERIA and _elapsed() > RUNTIME_BUDGET and exitstatus == 0:
        session.exitstatus = 1


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    elapsed = _elapsed()
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        ok = _CRITERIA[n]
        extra = ""
        if n == 10:
            ok = ok and elapsed <= RUNTIME_BUDGET
            extra = "  (suite wall time %.1f s, budget %.0f s)" % (elapsed, RUNTIME_BUDGET)
        terminalreporter.write_line("criterion %2d: %s%s" % (n, "PASS" if ok else "FAIL", extra))
