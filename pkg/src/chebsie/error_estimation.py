"""A posteriori error estimate.

Substituting the approximation back into the equations leaves a residual
``H(t) = (operator applied to phi) - f``. The error ``E = phi_approx - phi``
satisfies the same system with ``H`` on the right-hand side, so it is
approximated with the same machinery, and any output functional can be
applied to it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .problem import Integral, Pin, Problem
from .quadrature import CoefficientTensor, SeriesCoefficients, build_tensor, case_kinds, project
from .solution import SpectralSolution
from .spectral_solver import SolveReport, assemble, solve

__all__ = ["ErrorEstimate", "perturbation", "error_solve", "estimate_error", "homogeneous"]


@dataclass(frozen=True)
class ErrorEstimate:
    H_coeffs: tuple  # SeriesCoefficients per equation
    E: SpectralSolution
    report: SolveReport
    sup_regular: float
    per_functional: dict


def default_nodes(p: Problem) -> int:
    n_tau, n_t = p.quadrature.node_counts(p.case, p.M)
    return 2 * max(n_tau, n_t) + 16


def perturbation(p: Problem, s: SpectralSolution, n_nodes: int | None = None) -> tuple:
    """Residual ``H_i`` of each equation, projected on the t-side basis.

    Uses ``n_nodes`` points both for the kernel integrals and for the
    projection; by default twice the solve's count plus 16.
    """
    _, t_kind, shift = case_kinds(p.case)
    L = p.M + shift
    if L < 0:
        return tuple(SeriesCoefficients(t_kind, np.zeros(0)) for _ in range(p.N))
    n = default_nodes(p) if n_nodes is None else n_nodes
    out = []
    for i in range(1, p.N + 1):
        def H(t, i=i):
            return s.apply_operator(i, t, n_nodes=n) - p.rhs[i - 1](t)

        out.append(project(H, t_kind, L, n))
    return tuple(out)


def homogeneous(side_conditions) -> tuple:
    """Side conditions with every prescribed value set to zero."""
    out = []
    for sc in side_conditions:
        if isinstance(sc, Pin):
            sc = Pin(sc.j, sc.l, 0.0)
        elif isinstance(sc, Integral):
            sc = Integral(sc.j, 0.0)
        out.append(sc)
    return tuple(out)


def error_solve(
    p: Problem,
    H_coeffs,
    side_conditions=None,
    tensor: CoefficientTensor | None = None,
    grid: int = 201,
) -> ErrorEstimate:
    """Solve the error system driven by ``H_coeffs``."""
    sc = homogeneous(p.side_conditions) if side_conditions is None else tuple(side_conditions)
    pe = p.with_(side_conditions=sc)
    if tensor is None:
        tensor = build_tensor(pe)
    rhs = np.array([h.coeffs for h in H_coeffs]).reshape(p.N, -1) / np.pi
    report = solve(assemble(pe, tensor, rhs_coeffs=rhs))
    E = SpectralSolution(p.case, report.beta, pe)
    x = np.linspace(-1.0, 1.0, grid)
    sup = max(float(np.max(np.abs(E.regular_part(j, x)))) for j in range(1, p.N + 1))
    figures = {name: abs(E.sif(j, end)) for name, (j, end) in p.output_functionals().items()}
    return ErrorEstimate(tuple(H_coeffs), E, report, sup, figures)


def estimate_error(p: Problem, s: SpectralSolution, tensor=None, n_nodes: int | None = None) -> ErrorEstimate:
    return error_solve(p, perturbation(p, s, n_nodes), tensor=tensor)
