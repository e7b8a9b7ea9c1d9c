"""Collects acceptance verdicts and prints them after the run."""

import pytest

_LINES: list[str] = []


@pytest.fixture
def criterion_log():
    return _LINES.append


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in _LINES:
            terminalreporter.write_line(line)
