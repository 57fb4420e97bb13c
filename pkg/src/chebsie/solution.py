"""The approximate solution vector and quantities derived from it."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .chebyshev import ChebyshevKind, eval_basis, lambda_factor, pv_transform, weight
from .errors import OutOfDomainError
from .quadrature import _finite, gauss_rule

__all__ = ["SpectralSolution"]


def _scalar(out):
    return float(out) if np.ndim(out) == 0 else out


@dataclass(frozen=True)
class SpectralSolution:
    """``phi_j(tau) = weight(tau) * sum_l beta[j-1, l] P_l(tau)``.

    ``problem`` is only needed by :meth:`apply_operator`.
    """

    kind: ChebyshevKind
    beta: np.ndarray
    problem: object = None

    def __post_init__(self):
        object.__setattr__(self, "kind", ChebyshevKind(self.kind))
        object.__setattr__(self, "beta", np.atleast_2d(np.asarray(self.beta, dtype=float)))

    @property
    def N(self) -> int:
        return self.beta.shape[0]

    @property
    def M(self) -> int:
        return self.beta.shape[1] - 1

    def regular_part(self, j: int, tau):
        """The polynomial factor ``psi_j``; finite on the closed interval."""
        tau = np.asarray(tau, dtype=float)
        if np.any(np.abs(tau) > 1.0):
            raise OutOfDomainError(f"tau must lie in [-1, 1], got {tau!r}")
        basis = eval_basis(self.kind, self.M, tau)
        return _scalar(np.tensordot(self.beta[j - 1], basis, axes=(0, 0)))

    def evaluate(self, j: int, tau):
        """``phi_j(tau)`` for ``tau`` strictly inside (-1, 1)."""
        tau = np.asarray(tau, dtype=float)
        if np.any(np.abs(tau) >= 1.0):
            raise OutOfDomainError("phi_j is only evaluated on (-1, 1); use regular_part or sif at the endpoints")
        return _scalar(weight(self.kind, tau) * self.regular_part(j, tau))

    def sif(self, j: int, endpoint: int = 1) -> float:
        """``lim sqrt(1 - tau^2) phi_j(tau)`` as ``tau -> endpoint``.

        Equals ``lambda(endpoint) * psi_j(endpoint)``, computed from exact
        endpoint values of the basis. Zero wherever ``phi_j`` is bounded.
        """
        if endpoint not in (1, -1):
            raise ValueError(f"endpoint must be +1 or -1, got {endpoint!r}")
        return float(lambda_factor(self.kind, float(endpoint)) * self.regular_part(j, float(endpoint)))

    def apply_operator(self, i: int, t, n_nodes: int = 64):
        """Left-hand side of equation ``i`` at ``t``.

        The Cauchy part is evaluated in closed form; the kernel part with an
        ``n_nodes`` Gauss rule for the solution's weight.
        """
        p = self.problem
        if p is None:
            raise ValueError("apply_operator needs the solution's problem")
        t = np.asarray(t, dtype=float)
        if np.any(np.abs(t) >= 1.0):
            raise OutOfDomainError(f"t must lie in (-1, 1), got {t!r}")
        B = np.asarray(p.B, dtype=float)
        out = np.zeros(t.shape)
        for l in range(self.M + 1):
            img = pv_transform(self.kind, l)
            if img.is_zero:
                continue
            coef = sum(B[i - 1, j] * self.beta[j, l] for j in range(self.N))
            if coef != 0.0:
                out = out + coef * img(t)
        rule = gauss_rule(self.kind, n_nodes)
        psi = self.beta @ eval_basis(self.kind, self.M, rule.nodes)  # (N, n)
        tt, ss = np.meshgrid(t.ravel(), rule.nodes, indexing="ij")
        for j in range(self.N):
            kv = p.kernels[i - 1][j](tt, ss)
            kv = _finite(np.broadcast_to(np.asarray(kv, dtype=float), tt.shape), f"K[{i}][{j + 1}]", (t.ravel(), rule.nodes))
            out = out + (kv @ (rule.weights * psi[j])).reshape(t.shape)
        return _scalar(out)

    def sample(self, tau) -> np.ndarray:
        """Columns ``tau, phi_1(tau), ..., phi_N(tau)`` for plotting."""
        tau = np.asarray(tau, dtype=float)
        cols = [tau] + [np.atleast_1d(self.evaluate(j, tau)) for j in range(1, self.N + 1)]
        return np.column_stack(cols)
