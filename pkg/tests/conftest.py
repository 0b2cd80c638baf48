import numpy as np
import pytest

from pretentious.arithmetic import NumberField, character_group, kronecker_character
from pretentious.repdata import from_character, trivial_rep

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(scope="session")
def Q():
    return NumberField.rational()


@pytest.fixture(scope="session")
def one():
    return trivial_rep()


@pytest.fixture(scope="session")
def chi5():
    """The character mod 5 with chi(2) = i."""
    for c in character_group(5):
        if abs(c(2) - 1j) < 1e-15:
            return c
    raise AssertionError("no character mod 5 with chi(2) = i")


@pytest.fixture(scope="session")
def chi_m4():
    return kronecker_character(-4)


@pytest.fixture(scope="session")
def rep5(chi5):
    return from_character(chi5)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
