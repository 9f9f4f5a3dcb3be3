import numpy as np
import pytest

from gradminer.datasets import four_row_example, sports_example, synthetic_clinical


@pytest.fixture
def four_rows():
    return four_row_example()


@pytest.fixture
def sports():
    return sports_example()


@pytest.fixture(scope="session")
def clinical():
    return synthetic_clinical()


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


CRITERIA_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if CRITERIA_LINES:
        terminalreporter.section("acceptance criteria")
        for line in CRITERIA_LINES:
            terminalreporter.write_line(line)
