import pytest

from rindler_kit.numerics import DEFAULT_CONFIG

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def cfg():
    return DEFAULT_CONFIG


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
