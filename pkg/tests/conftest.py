import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from slicereg.hypercomplex import ImaginaryUnit, Quaternion
from slicereg.stem import StemPolynomial

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

# filled in by tests/test_acceptance.py, printed after the run
ACCEPTANCE_LINES: dict = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for key in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[key])


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_poly(rng, degree: int) -> StemPolynomial:
    return StemPolynomial(rng.normal(size=(degree + 1, 4)))


def direct_eval(p: StemPolynomial, q: Quaternion) -> Quaternion:
    """Oracle: sum q^n a_n with explicit powers."""
    out = Quaternion(0, 0, 0, 0)
    power = Quaternion(1, 0, 0, 0)
    for a in p.coeffs:
        out = out + power * Quaternion(*a)
        power = power * q
    return out


I_UNIT = ImaginaryUnit(1, 0, 0)
J_UNIT = ImaginaryUnit(0, 1, 0)
K_UNIT = ImaginaryUnit(0, 0, 1)
