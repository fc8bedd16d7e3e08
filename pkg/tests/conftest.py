import numpy as np
import pytest

from mafa import Scenario

CRITERIA = []


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def case1():
    return Scenario(8, 8.0, 0.5, [100, 145], [125, 165], 0.1)


@pytest.fixture
def case2():
    return Scenario(8, 8.0, 0.5, [75, 150], [120, 170], 0.1)


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in CRITERIA:
            terminalreporter.write_line(line)
