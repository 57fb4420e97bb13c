"""Gauss-Chebyshev rules and the projections built on them.

Series use the plain convention throughout: ``f ~ sum_k c_k P_k`` with no
halved first term. Coefficients are obtained by discrete orthogonal
projection, ``c_k = (1/h_k) sum_n w_n f(x_n) P_k(x_n)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .chebyshev import ChebyshevKind, eval_basis, orthogonality_constant, roots
from .errors import EvaluationError

__all__ = [
    "QuadratureRule",
    "SeriesCoefficients",
    "CoefficientTensor",
    "gauss_rule",
    "project",
    "kernel_gamma",
    "build_tensor",
    "case_kinds",
]


@dataclass(frozen=True)
class QuadratureRule:
    kind: ChebyshevKind
    nodes: np.ndarray
    weights: np.ndarray

    def __len__(self):
        return self.nodes.size

    def integrate(self, values) -> float:
        """Weighted sum of ``values`` sampled at the nodes (last axis)."""
        return np.asarray(values, dtype=float) @ self.weights


@dataclass(frozen=True)
class SeriesCoefficients:
    kind: ChebyshevKind
    coeffs: np.ndarray

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    def __call__(self, x):
        from .chebyshev import eval_series

        return eval_series(self.kind, self.coeffs, x)


@dataclass(frozen=True)
class CoefficientTensor:
    """Fully discretized kernel and right-hand side.

    ``G[i, j, k, l]`` is the ``l``-th t-side coefficient of ``gamma_ijk(t)``,
    the ``k``-th tau-side coefficient of ``K_ij(t, .)``. ``c[i, l]`` are the
    t-side coefficients of ``f_i / pi``.
    """

    G: np.ndarray
    c: np.ndarray
    tau_kind: ChebyshevKind
    t_kind: ChebyshevKind
    M: int
    L: int


def case_kinds(case) -> tuple[ChebyshevKind, ChebyshevKind, int]:
    """(tau-side kind, t-side kind, L - M) for a case."""
    case = ChebyshevKind(case)
    return {
        ChebyshevKind.FIRST: (ChebyshevKind.FIRST, ChebyshevKind.SECOND, -1),
        ChebyshevKind.SECOND: (ChebyshevKind.SECOND, ChebyshevKind.FIRST, 0),
        ChebyshevKind.THIRD: (ChebyshevKind.THIRD, ChebyshevKind.FOURTH, 0),
        ChebyshevKind.FOURTH: (ChebyshevKind.FOURTH, ChebyshevKind.THIRD, 0),
    }[case]


def gauss_rule(kind, n: int) -> QuadratureRule:
    """n-point Gauss rule for the weight ``lambda_nu(t)/sqrt(1-t^2)``.

    Exact for polynomials of degree ``<= 2n - 1``.
    """
    kind = ChebyshevKind(kind)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    x = roots(kind, n - 1)
    if kind is ChebyshevKind.FIRST:
        w = np.full(n, np.pi / n)
    elif kind is ChebyshevKind.SECOND:
        w = np.pi / (n + 1) * (1.0 - x * x)
    elif kind is ChebyshevKind.THIRD:
        w = 2 * np.pi / (2 * n + 1) * (1.0 + x)
    else:
        w = 2 * np.pi / (2 * n + 1) * (1.0 - x)
    return QuadratureRule(kind, x, w)


def _norms(kind, L):
    return np.array([orthogonality_constant(kind, k) for k in range(L + 1)])


def _finite(values, where, nodes):
    values = np.asarray(values, dtype=float)
    bad = ~np.isfinite(values)
    if np.any(bad):
        idx = tuple(int(i[0]) for i in np.nonzero(bad))
        node = tuple(float(n[i]) for n, i in zip(nodes, idx))
        raise EvaluationError(f"{where}: non-finite value at node {node}", where=where, node=node)
    return values


def _broadcast(values, shape):
    return np.broadcast_to(np.asarray(values, dtype=float), shape)


def project(f, kind, L: int, n_nodes: int) -> SeriesCoefficients:
    """Project ``f`` onto ``P_0 .. P_L`` of ``kind`` with an ``n_nodes`` rule.

    Exact when ``f`` is a polynomial of degree ``<= 2*n_nodes - 1 - L``.
    """
    kind = ChebyshevKind(kind)
    if L < 0:
        raise ValueError(f"L must be >= 0, got {L}")
    if n_nodes < L + 1:
        raise ValueError(f"need n_nodes >= L + 1 = {L + 1}, got {n_nodes}")
    rule = gauss_rule(kind, n_nodes)
    fx = _finite(_broadcast(f(rule.nodes), rule.nodes.shape), "f", (rule.nodes,))
    basis = eval_basis(kind, L, rule.nodes)
    coeffs = np.einsum("kn,n->k", basis, rule.weights * fx) / _norms(kind, L)
    return SeriesCoefficients(kind, coeffs)


def kernel_gamma(K, tau_kind, t: float, M: int, n_nodes: int) -> np.ndarray:
    """tau-side coefficients ``gamma_0(t) .. gamma_M(t)`` of ``K(t, tau)``."""
    tau_kind = ChebyshevKind(tau_kind)
    if n_nodes < M + 1:
        raise ValueError(f"need n_nodes >= M + 1 = {M + 1}, got {n_nodes}")
    rule = gauss_rule(tau_kind, n_nodes)
    kv = _finite(_broadcast(K(float(t), rule.nodes), rule.nodes.shape), "K", (rule.nodes,))
    basis = eval_basis(tau_kind, M, rule.nodes)
    return np.einsum("kn,n->k", basis, rule.weights * kv) / _norms(tau_kind, M)


def build_tensor(problem, n_tau: int | None = None, n_t: int | None = None) -> CoefficientTensor:
    """Discretize kernels and right-hand sides of ``problem``.

    Node counts default to the problem's quadrature settings.
    """
    tau_kind, t_kind, shift = case_kinds(problem.case)
    M = problem.M
    L = M + shift
    if n_tau is None or n_t is None:
        d_tau, d_t = problem.quadrature.node_counts(problem.case, M)
        n_tau = d_tau if n_tau is None else n_tau
        n_t = d_t if n_t is None else n_t
    N = problem.N
    G = np.zeros((N, N, M + 1, max(L + 1, 0)))
    c = np.zeros((N, max(L + 1, 0)))
    if L < 0:
        return CoefficientTensor(G, c, tau_kind, t_kind, M, L)
    if n_tau < M + 1:
        raise ValueError(f"need n_tau >= M + 1 = {M + 1}, got {n_tau}")
    if n_t < L + 1:
        raise ValueError(f"need n_t >= L + 1 = {L + 1}, got {n_t}")

    rt = gauss_rule(tau_kind, n_tau)
    rs = gauss_rule(t_kind, n_t)
    p_tau = eval_basis(tau_kind, M, rt.nodes) / _norms(tau_kind, M)[:, None]
    p_t = eval_basis(t_kind, L, rs.nodes) / _norms(t_kind, L)[:, None]
    tt, ss = np.meshgrid(rs.nodes, rt.nodes, indexing="ij")
    for i in range(N):
        for j in range(N):
            kv = _finite(
                _broadcast(problem.kernels[i][j](tt, ss), tt.shape),
                f"K[{i + 1}][{j + 1}]",
                (rs.nodes, rt.nodes),
            )
            # gamma[r, k] then G[k, l]; einsum without optimize keeps a fixed summation order
            gamma = np.einsum("rs,s,ks->rk", kv, rt.weights, p_tau)
            G[i, j] = np.einsum("rk,r,lr->kl", gamma, rs.weights, p_t)
        fv = _finite(_broadcast(problem.rhs[i](rs.nodes), rs.nodes.shape), f"f[{i + 1}]", (rs.nodes,))
        c[i] = np.einsum("r,r,lr->l", fv / np.pi, rs.weights, p_t)
    return CoefficientTensor(G, c, tau_kind, t_kind, M, L)
