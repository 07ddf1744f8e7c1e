import numpy as np
import pytest

from sparse_enum.geometry import difference_coarray, mra6

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def mra():
    return mra6()


@pytest.fixture(scope="session")
def mra_coarray(mra):
    return difference_coarray(mra)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
