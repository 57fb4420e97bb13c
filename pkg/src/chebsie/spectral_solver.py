"""Assembly and dense solution of the coefficient system.

Row ``(i, l)`` is the ``l``-th t-side projection of equation ``i``:
the dominant part contributes ``b_ij * sign`` where the principal value
transform of basis function ``(j, l')`` lands on t-side degree ``l``, and
the kernel part contributes ``(h_k / pi) * G[i, j, k, l]`` on column
``(j, k)``. Side conditions are appended as extra rows.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .chebyshev import orthogonality_constant, pv_transform
from .problem import Problem, constraint_rows, validate
from .quadrature import CoefficientTensor, build_tensor, case_kinds
from .errors import ProblemError

__all__ = [
    "AssembledSystem",
    "SolveReport",
    "assemble",
    "solve",
    "solve_problem",
    "Status",
]

log = logging.getLogger(__name__)


class Status:
    UNIQUE = "unique"
    UNDERDETERMINED = "underdetermined"
    INCONSISTENT = "inconsistent"
    LEAST_SQUARES = "leastSquares"


@dataclass(frozen=True)
class AssembledSystem:
    matrix: np.ndarray
    rhs: np.ndarray
    column_map: tuple  # column index -> (j, l), j 1-based
    row_labels: tuple
    N: int
    M: int

    @property
    def shape(self):
        return self.matrix.shape


@dataclass(frozen=True)
class SolveReport:
    beta: np.ndarray  # N x (M+1)
    rank: int
    residual_norm: float
    condition_estimate: float
    status: str
    free_columns: tuple = ()  # (j, l) pairs left undetermined
    violated_rows: tuple = ()  # labels of rows that cannot be satisfied
    extra: dict = field(default_factory=dict)


def assemble(p: Problem, tensor: CoefficientTensor, rhs_coeffs=None) -> AssembledSystem:
    """Build the linear system for ``p``.

    ``rhs_coeffs`` replaces ``tensor.c`` (shape ``N x (L+1)``); the error
    estimator uses it to solve with a different right-hand side.
    """
    tau_kind, t_kind, shift = case_kinds(p.case)
    M, N = p.M, p.N
    L = M + shift
    if tensor.M != M or tensor.L != L or tensor.G.shape[:2] != (N, N) or tensor.tau_kind != tau_kind:
        raise ProblemError(
            f"tensor (M={tensor.M}, L={tensor.L}, shape={tensor.G.shape}) does not match problem (M={M}, N={N})"
        )
    c = tensor.c if rhs_coeffs is None else np.asarray(rhs_coeffs, dtype=float)
    if c.shape != (N, L + 1):
        raise ProblemError(f"right-hand side coefficients must have shape {(N, L + 1)}, got {c.shape}")
    B = np.asarray(p.B, dtype=float)
    C = N * (M + 1)
    n_proj = N * (L + 1)
    A = np.zeros((n_proj, C))
    b = np.zeros(n_proj)
    labels = []
    h = np.array([orthogonality_constant(tau_kind, k) for k in range(M + 1)]) / np.pi
    images = [pv_transform(tau_kind, k) for k in range(M + 1)]
    for i in range(N):
        for l in range(L + 1):
            r = i * (L + 1) + l
            labels.append(f"eq{i + 1}:l={l}")
            b[r] = c[i, l]
            for j in range(N):
                cols = slice(j * (M + 1), (j + 1) * (M + 1))
                A[r, cols] += h * tensor.G[i, j, :, l]
                for k, img in enumerate(images):
                    if img.target_degree == l:
                        A[r, j * (M + 1) + k] += img.sign * B[i, j]
    extra = constraint_rows(p)
    if extra:
        A = np.vstack([A] + [row for _, row, _ in extra])
        b = np.concatenate([b, [v for _, _, v in extra]])
        labels += [lab for lab, _, _ in extra]
    column_map = tuple((j + 1, l) for j in range(N) for l in range(M + 1))
    return AssembledSystem(A, b, column_map, tuple(labels), N, M)


def _eliminate(A, b, order, rel_tol):
    """Row-pivoted Gaussian elimination visiting columns in ``order``.

    Returns the reduced augmented matrix, the pivots as (row, col) pairs and
    the rows left without a pivot.
    """
    R = np.column_stack([A, b]).astype(float)
    rows = list(range(R.shape[0]))
    tol = rel_tol * max(float(np.max(np.abs(A))) if A.size else 0.0, np.finfo(float).tiny)
    pivots = []
    for col in order:
        if not rows:
            break
        cand = np.abs(R[rows, col])
        k = int(np.argmax(cand))
        if cand[k] <= tol:
            continue
        pr = rows.pop(k)
        for r in rows:
            if R[r, col] != 0.0:
                R[r] -= (R[r, col] / R[pr, col]) * R[pr]
                R[r, col] = 0.0
        pivots.append((pr, col))
    return R, pivots, rows


def solve(sys: AssembledSystem, rel_tol: float = 1e-12, consistency_tol: float = 1e-10) -> SolveReport:
    """Solve ``sys`` with rank detection.

    Columns are eliminated from the highest degree down, so when the system
    is rank deficient the reported free columns are the lowest-degree
    coefficients (the ones a side condition would normally pin).
    Undetermined columns are set to zero in the returned ``beta``.
    """
    A, b = sys.matrix, sys.rhs
    n_rows, n_cols = A.shape
    order = sorted(range(n_cols), key=lambda c: (-sys.column_map[c][1], sys.column_map[c][0]))
    R, pivots, rest = _eliminate(A, b, order, rel_tol)
    rank = len(pivots)
    scale = max(float(np.max(np.abs(A))) if A.size else 0.0, float(np.max(np.abs(b))) if b.size else 0.0, 1e-300)
    violated = tuple(sys.row_labels[r] for r in rest if abs(R[r, -1]) > consistency_tol * scale)

    x = np.zeros(n_cols)
    for pr, col in reversed(pivots):
        acc = R[pr, -1] - R[pr, :n_cols] @ x
        x[col] = acc / R[pr, col]
    pivot_cols = {col for _, col in pivots}
    free = tuple(sys.column_map[c] for c in sorted(set(range(n_cols)) - pivot_cols))

    if violated:
        status = Status.INCONSISTENT
        if rank == n_cols:
            x = np.linalg.lstsq(A, b, rcond=None)[0]
    elif rank < n_cols:
        status = Status.UNDERDETERMINED
    elif n_rows == n_cols:
        status = Status.UNIQUE
    else:
        status = Status.LEAST_SQUARES
        x = np.linalg.lstsq(A, b, rcond=None)[0]
    residual = float(np.max(np.abs(A @ x - b))) if n_rows else 0.0
    cond = float(np.linalg.cond(A)) if A.size else 0.0
    beta = x.reshape(sys.N, sys.M + 1)
    log.debug("solve: %s, rank %d/%d, residual %.3e", status, rank, n_cols, residual)
    return SolveReport(beta, rank, residual, cond, status, free if rank < n_cols else (), violated)


@dataclass(frozen=True)
class SolveResult:
    problem: Problem
    tensor: CoefficientTensor
    system: AssembledSystem
    report: SolveReport

    @property
    def solution(self):
        from .solution import SpectralSolution

        return SpectralSolution(self.problem.case, self.report.beta, self.problem)


def solve_problem(p: Problem, rel_tol: float = 1e-12) -> SolveResult:
    """Validate, discretize, assemble and solve ``p``."""
    diags = validate(p)
    if diags:
        raise ProblemError("; ".join(diags))
    tensor = build_tensor(p)
    system = assemble(p, tensor)
    return SolveResult(p, tensor, system, solve(system, rel_tol=rel_tol))
