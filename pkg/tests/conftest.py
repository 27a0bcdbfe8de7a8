import time

import numpy as np
import pytest

from pgl.profile import EXAMPLE1_PARAMS, analytic_curve, synthesize_family

SUITE_BUDGET_S = 180.0
_START = time.perf_counter()


@pytest.fixture(scope="session")
def example1_curve():
    return synthesize_family(EXAMPLE1_PARAMS)


@pytest.fixture(scope="session")
def nonflat_curve():
    return analytic_curve("nonflat")


@pytest.fixture(scope="session")
def line_curve():
    return analytic_curve("line", {"k": 1 / 3})


@pytest.fixture(scope="session")
def cone_curve():
    return analytic_curve("flat_cone", {"k": 2.0})


_CRITERIA: list[str] = []


@pytest.fixture
def criterion():
    """Record one PASS/FAIL line per acceptance criterion for the terminal summary."""

    def record(number, ok, message):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {message}"
        _CRITERIA.append(line)
        print(line)
        return ok

    return record


@pytest.fixture
def rng():
    return np.random.default_rng(20261019)


def _suite_line():
    elapsed = time.perf_counter() - _START
    ok = elapsed < SUITE_BUDGET_S
    tag = "PASS" if ok else "FAIL"
    return ok, f"[{tag}] criterion 8: full suite wall time {elapsed:.1f} s (budget {SUITE_BUDGET_S:.0f} s)"


def pytest_sessionfinish(session, exitstatus):
    ok, _ = _suite_line()
    if not ok and session.exitstatus == 0:
        session.exitstatus = 1


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_CRITERIA, key=lambda ln: int(ln.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
    terminalreporter.write_line(_suite_line()[1])
