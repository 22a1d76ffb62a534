import functools

import pytest

from octaroot import basins, solver
from octaroot.methods import TABLE_METHODS
from octaroot.problems import FUNCTION_IDS

# (criterion, passed, detail) lines collected by test_acceptance.py
ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def acceptance():
    def record(criterion: str, ok: bool, detail: str = ""):
        ACCEPTANCE_LINES.append((criterion, ok, detail))
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for crit, ok, detail in ACCEPTANCE_LINES:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {crit}  {detail}".rstrip())


@functools.lru_cache(maxsize=None)
def table_cells(precision=solver.DEFAULT_PRECISION):
    return {(c.function, c.method): c
            for c in solver.reproduce_table(FUNCTION_IDS, TABLE_METHODS, precision)}


@functools.lru_cache(maxsize=None)
def basin_field(method, poly, width=512):
    grid = basins.GridSpec(width=width, height=width)
    return basins.render(method, poly, grid)


@pytest.fixture(scope="session")
def table():
    return table_cells()

