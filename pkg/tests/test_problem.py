import math

import numpy as np
import pytest

from chebsie.chebyshev import ChebyshevKind
from chebsie.errors import ProblemError
from chebsie.problem import (
    Integral,
    Parity,
    Pin,
    QuadratureSettings,
    builtin,
    constraint_rows,
    crack_kernels,
    integral_condition_row,
    validate,
)


def test_example1_is_valid():
    assert validate(builtin("example1")) == []


def test_singular_B():
    p = builtin("example1").with_(B=np.ones((2, 2)))
    assert any("B singular" in d for d in validate(p))


def test_pin_index_out_of_range():
    p = builtin("example1").with_(side_conditions=(Pin(3, 0, 1.0),))
    assert any("index out of range" in d for d in validate(p))


def test_diagnostics_are_collected():
    p = builtin("example2").with_(
        B=np.zeros((2, 2)),
        side_conditions=(Pin(1, 9, 0.0), Parity(1, "even")),
        rhs=[lambda t: t],
    )
    diags = validate(p)
    assert len(diags) == 4
    assert any("parity requires" in d for d in diags)
    assert any("f must have 2" in d for d in diags)


def test_quadrature_too_coarse():
    p = builtin("example2").with_(quadrature=QuadratureSettings("safe", n_tau=1))
    assert any("n_tau" in d for d in validate(p))


class TestBuiltins:
    def test_example1(self):
        p = builtin("example1")
        assert p.N == 2 and p.M == 2 and p.case is ChebyshevKind.FIRST
        np.testing.assert_array_equal(p.B, np.eye(2))
        t = np.array([-0.5, 0.25])
        np.testing.assert_array_equal(p.rhs[0](t), [np.pi, np.pi])
        np.testing.assert_array_equal(p.rhs[1](t), 2 * np.pi * t)
        assert p.side_conditions == (Pin(1, 0, 2.0), Pin(2, 0, 2.0))

    def test_example2(self):
        p = builtin("example2")
        assert p.case is ChebyshevKind.THIRD and p.M == 1 and p.side_conditions == ()

    def test_crack(self):
        p = builtin("crack", {"h": 0.2, "M": 8})
        assert p.M == 15 and p.case is ChebyshevKind.FIRST
        assert p.functionals == {"k1": (2, 1), "k2": (1, 1)}
        assert Parity(1, "even") in p.side_conditions and Integral(2, 0.0) in p.side_conditions
        t, tau = 0.1, -0.3
        d, h = tau - t, 0.2
        q = d * d + 4 * h * h
        expected11 = -d / q + 8 * h * h * d / q**2 - 4 * h * h * d * (12 * h * h - d * d) / q**3
        assert p.kernels[0][0](t, tau) == pytest.approx(expected11, rel=1e-14)

    @pytest.mark.parametrize("name, params", [
        ("example1", {}), ("example1", {"M": 5, "pin": -1}), ("example2", {"M": 4}),
        ("crack", {"h": 0.5, "M": 3}), ("crack", {"h": math.inf, "M": 1}),
    ])
    def test_builtins_validate(self, name, params):
        assert validate(builtin(name, params)) == []

    @pytest.mark.parametrize("name, params, message", [
        ("crack", {"h": -1, "M": 2}, "h > 0"),
        ("crack", {"M": 2}, "missing parameter 'h'"),
        ("crack", {"h": 1.0, "M": 1.5}, "integer"),
        ("crack", {"h": "abc", "M": 2}, "invalid value"),
        ("example1", {"h": 2}, "does not take"),
        ("nope", {}, "unknown builtin"),
    ])
    def test_parameter_errors(self, name, params, message):
        with pytest.raises(ProblemError, match=message):
            builtin(name, params)

    def test_quadrature_param(self):
        p = builtin("crack", {"h": 1.0, "M": 2, "quadrature": "paper"})
        assert p.quadrature.node_counts(p.case, p.M) == (4, 3)


class TestCrackKernels:
    def test_symmetry(self, rng):
        for h in rng.uniform(0.1, 20, 20):
            K = crack_kernels(h)
            t, tau = rng.uniform(-1, 1, (2, 200))
            np.testing.assert_array_equal(K[0][1](t, tau), K[1][0](t, tau))

    def test_far_from_boundary(self):
        h = 1e6
        K = crack_kernels(h)
        t, tau = np.meshgrid(np.linspace(-1, 1, 101), np.linspace(-1, 1, 101))
        assert np.max(np.abs(K[0][0](t, tau))) <= 1e-11
        assert np.max(np.abs(K[1][1](t, tau))) <= 1e-11
        # the coupling kernel tends to the constant -1/(2h), which is annihilated
        # by the zero-mean conditions imposed on both components
        assert np.max(np.abs(K[0][1](t, tau) + 1 / (2 * h))) <= 1e-11

    def test_infinite_depth(self):
        K = crack_kernels(math.inf)
        assert np.all(K[0][0](np.zeros(3), np.ones(3)) == 0)


class TestConstraintRows:
    def test_integral_case1(self):
        p = builtin("crack", {"h": 1.0, "M": 2})
        row, val = integral_condition_row(p, 1, 0.0)
        expected = np.zeros(8)
        expected[0] = np.pi
        np.testing.assert_allclose(row, expected, atol=1e-14)
        assert val == 0.0

    def test_integral_case2(self):
        p = builtin("example2").with_(case=ChebyshevKind.SECOND)
        row, _ = integral_condition_row(p, 1, 0.0)
        np.testing.assert_allclose(row, [np.pi / 2, 0, 0, 0], atol=1e-14)

    @pytest.mark.parametrize("case", [3, 4])
    def test_integral_other_cases(self, case):
        p = builtin("example2").with_(case=ChebyshevKind(case), M=3)
        row, _ = integral_condition_row(p, 2, 0.0)
        for l in range(4):
            exact = _moment(case, l)
            assert row[4 + l] == pytest.approx(exact, abs=1e-13)

    def test_odd_component_integral_is_trivial(self):
        p = builtin("crack", {"h": 1.0, "M": 2})
        row, _ = integral_condition_row(p, 2, 0.0)
        parity = [r for label, r, _ in constraint_rows(p) if label.startswith("parity(j=2")]
        # the only nonzero entry of the integral row is a coefficient that parity pins to zero
        (nz,) = np.flatnonzero(np.abs(row) > 1e-14)
        assert any(r[nz] == 1.0 for r in parity)

    def test_labels_in_declaration_order(self):
        p = builtin("crack", {"h": 1.0, "M": 2})
        labels = [lab for lab, _, _ in constraint_rows(p)]
        assert labels == [
            "parity(j=1,even):l=1", "parity(j=1,even):l=3",
            "parity(j=2,odd):l=0", "parity(j=2,odd):l=2",
            "integral(j=1)", "integral(j=2)",
        ]


def _moment(case, l):
    # int (1 +- x) / sqrt(1 - x^2) P_l(x) dx via x = cos(theta)
    from scipy.integrate import quad

    from chebsie.chebyshev import eval_poly, lambda_factor

    return quad(lambda th: lambda_factor(case, np.cos(th)) * eval_poly(case, l, np.cos(th)), 0, np.pi,
                epsabs=1e-13, epsrel=1e-13)[0]
