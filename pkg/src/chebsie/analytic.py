"""Closed-form solutions of the dominant equation ``PV int phi(tau)/(tau - t) dtau = f(t)``.

Used as an oracle for the spectral solver. The solution is obtained by
expanding ``f / pi`` in the companion basis and inverting the principal
value transform term by term; for polynomial ``f`` this coincides with the
classical inversion integrals.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .chebyshev import ChebyshevKind, eval_series, pv_transform, weight
from .errors import ConsistencyError
from .quadrature import case_kinds, gauss_rule, project

__all__ = ["DominantSolution", "dominant_solve", "consistency_residual"]


@dataclass(frozen=True)
class DominantSolution:
    case: ChebyshevKind
    coeffs: np.ndarray  # regular part in the case's own basis
    a0: float | None = None

    def regular_part(self, tau):
        return eval_series(self.case, self.coeffs, tau)

    def __call__(self, tau):
        return weight(self.case, tau) * self.regular_part(tau)


def consistency_residual(f, n_nodes: int = 64) -> float:
    """``int f(t) / sqrt(1 - t^2) dt``; zero iff the bounded solution exists."""
    rule = gauss_rule(ChebyshevKind.FIRST, n_nodes)
    return float(rule.integrate(np.broadcast_to(f(rule.nodes), rule.nodes.shape)))


def dominant_solve(case, f, a0: float | None = None, L: int = 16, n_nodes: int | None = None,
                   tol: float = 1e-10) -> DominantSolution:
    """Solve the dominant equation in ``case`` for ``f`` of degree at most ``L``.

    ``a0`` is the free coefficient of ``T_0 / sqrt(1 - tau^2)`` and is
    required in case 1 only. In case 2 a right-hand side with nonzero
    :func:`consistency_residual` raises :class:`ConsistencyError`.
    """
    case = ChebyshevKind(case)
    if (case is ChebyshevKind.FIRST) != (a0 is not None):
        raise ValueError("a0 is required in case 1 and not allowed otherwise")
    n = n_nodes or L + 16
    _, t_kind, _ = case_kinds(case)
    if case is ChebyshevKind.SECOND:
        res = consistency_residual(f, n)
        scale = max(1.0, float(np.max(np.abs(f(gauss_rule(1, n).nodes)))))
        if abs(res) > tol * scale:
            raise ConsistencyError(res)
    c = project(lambda t: np.asarray(f(t), dtype=float) / np.pi, t_kind, L, n).coeffs
    size = L + 2 if case is ChebyshevKind.FIRST else L + 1
    beta = np.zeros(size)
    for l in range(size):
        img = pv_transform(case, l)
        if 0 <= img.target_degree <= L:
            beta[l] = c[img.target_degree] / img.sign
    if case is ChebyshevKind.FIRST:
        beta[0] = a0
    return DominantSolution(case, beta, a0)
