import pytest

from spectral_gap_lab import potentials as P


@pytest.fixture
def unit_step():
    return P.step(0.5, 1.0)


@pytest.fixture
def trap():
    return P.trapezoid(0.5, 0.25, 1.0)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
