import math

import numpy as np
import pytest
from scipy import integrate

from chebsie.chebyshev import (
    ChebyshevKind,
    PvImage,
    eval_basis,
    eval_poly,
    lambda_factor,
    orthogonality_constant,
    pv_transform,
    roots,
    weight,
)
from chebsie.errors import OutOfDomainError

from conftest import pv_theta

KINDS = list(ChebyshevKind)
T, U, V, W = KINDS


def trig_form(kind, j, theta):
    if kind is T:
        return np.cos(j * theta)
    if kind is U:
        return np.sin((j + 1) * theta) / np.sin(theta)
    if kind is V:
        return np.cos((j + 0.5) * theta) / np.cos(theta / 2)
    return np.sin((j + 0.5) * theta) / np.sin(theta / 2)


class TestKind:
    def test_bijection_with_integers(self):
        assert [int(k) for k in KINDS] == [1, 2, 3, 4]
        assert all(ChebyshevKind(int(k)) is k for k in KINDS)
        with pytest.raises(ValueError):
            ChebyshevKind(5)


class TestEvalPoly:
    @pytest.mark.parametrize(
        "kind, degree, x, expected",
        [(T, 2, 0.5, -0.5), (W, 3, 1.0, 7.0), (U, 1, 0.3, 0.6), (V, 0, -0.7, 1.0)],
    )
    def test_examples(self, kind, degree, x, expected):
        assert eval_poly(kind, degree, x) == pytest.approx(expected, abs=1e-15)

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            eval_poly(T, -1, 0.0)
        with pytest.raises(OutOfDomainError):
            eval_poly(T, 2, 1.0000001)

    @pytest.mark.parametrize("kind", KINDS)
    def test_recurrence(self, kind, rng):
        x = rng.uniform(-1, 1, 100)
        P = eval_basis(kind, 31, x)
        for j in range(1, 31):
            assert np.max(np.abs(P[j + 1] - 2 * x * P[j] + P[j - 1])) <= 1e-12

    @pytest.mark.parametrize("kind", KINDS)
    def test_trig_identity(self, kind, rng):
        theta = rng.uniform(0.01, math.pi - 0.01, 50)
        P = eval_basis(kind, 20, np.cos(theta))
        for j in range(21):
            np.testing.assert_allclose(P[j], trig_form(kind, j, theta), rtol=0, atol=1e-12 * (j + 1) ** 2)

    def test_endpoint_table_is_exact(self):
        for j in range(21):
            s = (-1) ** j
            assert eval_poly(T, j, 1.0) == 1 and eval_poly(T, j, -1.0) == s
            assert eval_poly(U, j, 1.0) == j + 1 and eval_poly(U, j, -1.0) == s * (j + 1)
            assert eval_poly(V, j, 1.0) == 1 and eval_poly(V, j, -1.0) == s * (2 * j + 1)
            assert eval_poly(W, j, 1.0) == 2 * j + 1 and eval_poly(W, j, -1.0) == s


class TestRoots:
    def test_examples(self):
        np.testing.assert_allclose(roots(T, 1), [math.cos(math.pi / 4), math.cos(3 * math.pi / 4)], atol=1e-15)
        np.testing.assert_allclose(roots(U, 0), [0.0], atol=1e-15)
        np.testing.assert_allclose(roots(V, 0), [0.5], atol=1e-15)
        np.testing.assert_allclose(roots(W, 0), [-0.5], atol=1e-15)

    @pytest.mark.parametrize("kind", KINDS)
    def test_are_roots_and_decreasing(self, kind):
        for M in range(41):
            x = roots(kind, M)
            assert x.size == M + 1
            assert np.all(np.diff(x) < 0)
            assert np.max(np.abs(eval_basis(kind, M + 1, x)[-1])) <= 1e-12


class TestWeight:
    def test_examples(self):
        assert weight(T, 0.0) == 1.0
        assert weight(U, 0.6) == pytest.approx(0.8, abs=1e-15)
        assert weight(V, 0.0) == 1.0

    @pytest.mark.parametrize("t", [1.0, -1.0])
    def test_endpoints_rejected(self, t):
        with pytest.raises(OutOfDomainError):
            weight(V, t)

    @pytest.mark.parametrize("kind", KINDS)
    def test_lambda_nonnegative(self, kind):
        x = np.linspace(-1, 1, 201)
        assert np.all(lambda_factor(kind, x) >= 0)


class TestOrthogonalityConstant:
    def test_examples(self):
        assert orthogonality_constant(T, 0) == math.pi
        assert orthogonality_constant(T, 3) == math.pi / 2
        assert orthogonality_constant(W, 5) == math.pi

    @pytest.mark.parametrize("kind", KINDS)
    @pytest.mark.parametrize("j", [0, 1, 4])
    def test_against_adaptive_quadrature(self, kind, j):
        # theta form removes the endpoint singularity of the weight
        val, _ = integrate.quad(
            lambda th: lambda_factor(kind, math.cos(th)) * eval_poly(kind, j, math.cos(th)) ** 2, 0, math.pi,
            epsabs=1e-14,
        )
        assert val == pytest.approx(orthogonality_constant(kind, j), abs=1e-12)


class TestPvTransform:
    def test_examples(self):
        assert pv_transform(T, 1) == PvImage(U, 0, 1)
        img = pv_transform(U, 0)
        assert (img.target_kind, img.target_degree, img.sign) == (T, 1, -1)
        assert pv_transform(T, 0).is_zero and pv_transform(T, 0)(0.3) == 0.0
        img = pv_transform(V, 2)
        assert (img.target_kind, img.target_degree, img.sign, img.scale) == (W, 2, 1, math.pi)

    @pytest.mark.parametrize("kind", KINDS)
    def test_against_principal_value_quadrature(self, kind, rng):
        ts = rng.uniform(-0.95, 0.95, 20)
        worst = 0.0
        for j in range(11):
            img = pv_transform(kind, j)
            for t in ts:
                ref = pv_theta(lambda th: lambda_factor(kind, math.cos(th)) * eval_poly(kind, j, math.cos(th)), t)
                worst = max(worst, abs(ref - img(t)))
        assert worst <= 1e-8
