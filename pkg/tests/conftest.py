import math

import numpy as np
import pytest
from scipy import integrate


def pv_theta(F, x):
    """PV of int_0^pi F(theta) / (cos(theta) - x) dtheta by adaptive QAWC.

    With tau = cos(theta) this is PV int w(tau) g(tau) / (tau - x) dtau
    whenever F(theta) = lambda(cos theta) * g(cos theta).
    """
    th0 = math.acos(x)

    def smooth(th):
        d = th - th0
        if abs(d) < 1e-12:
            return F(th) * (-1.0 / math.sin(th0))
        # cos th - cos th0 = -2 sin((th + th0)/2) sin(d/2)
        return F(th) * d / (-2.0 * math.sin(0.5 * (th + th0)) * math.sin(0.5 * d))

    val, _ = integrate.quad(smooth, 0.0, math.pi, weight="cauchy", wvar=th0, epsabs=1e-12, epsrel=1e-12, limit=400)
    return val


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


_CRITERIA = {}


@pytest.fixture
def criterion():
    """Record the outcome of an acceptance criterion and fail the test if it does not hold."""

    def record(number, ok, detail, extra=""):
        _CRITERIA[number] = f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}"
        if not ok:
            pytest.fail(f"criterion {number}: {detail}\n{extra}".rstrip(), pytrace=False)

    return record


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for number in sorted(_CRITERIA):
            terminalreporter.write_line(_CRITERIA[number])
