import numpy as np
import pytest

from ctrust.fixture import intersection_scenario

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def fixture_scenario():
    return intersection_scenario()


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
