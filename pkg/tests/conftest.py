import pytest

from irsplace import default_scenario

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def params():
    return default_scenario()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
