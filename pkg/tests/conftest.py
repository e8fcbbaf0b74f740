import numpy as np
import pytest

from heiswulff.bodies import Disk, Ellipse, FourierBody, LpBody, SmoothedTriangle

ACCEPTANCE_LINES = []

FOURIER_COEFFS = [1.0, 0.0, 0.0, 0.1, 0.0, 0.0, 0.05]


def builtin_bodies():
    return [Disk(), Ellipse(1.0, 1.5), LpBody(1.5), LpBody(3.0), SmoothedTriangle(2.0)]


def smooth_bodies():
    """Strictly convex bodies with finite nonzero boundary curvature."""
    return [Disk(), Ellipse(1.0, 1.5), FourierBody(FOURIER_COEFFS)]


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
