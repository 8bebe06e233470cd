import math

import pytest

from ptdephasing.model import EnvConfig, SystemConfig

PI = math.pi


@pytest.fixture
def hermitian_pair():
    return SystemConfig(0.0), EnvConfig(tau=0.0)


@pytest.fixture
def fully_nonhermitian():
    """E1 = 0.5, tau = 2 (quadratic zeta), theta = pi/2."""
    return SystemConfig.from_e1(0.5), EnvConfig(tau=2.0, theta=PI / 2)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[number])
