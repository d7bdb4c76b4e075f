from __future__ import annotations

import pytest

from asymaont.catalog import load_catalog


@pytest.fixture(scope="session")
def catalog():
    return load_catalog()


ACCEPTANCE_LINES = []


@pytest.fixture
def criterion():
    """Record one pass/fail line for an acceptance criterion."""

    def record(number: int, passed: bool, detail: str) -> bool:
        line = f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {detail}"
        ACCEPTANCE_LINES.append((number, line))
        print(line)
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
