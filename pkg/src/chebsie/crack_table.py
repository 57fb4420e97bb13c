"""Stress intensity factors for a crack parallel to a free boundary.

``PUBLISHED_ROWS`` holds the published reference values
``(h, M, k1, err_k1, k2, err_k2)``; :func:`compute_table` recomputes them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .error_estimation import estimate_error
from .problem import QuadratureSettings, builtin
from .spectral_solver import solve_problem

__all__ = ["PUBLISHED_ROWS", "CONVERGED", "TableRow", "crack_row", "compute_table"]

INF = math.inf

PUBLISHED_ROWS = [
    (0.2, 6, 4.878800637605022, 6.3e-14, 1.750099102171126, 6.2e-14),
    (0.2, 7, 4.788277537335018, 1.1e-14, 1.727809740547429, 4.1e-15),
    (0.2, 8, 4.760729834685963, 4.8e-14, 1.719782910590219, 1.1e-14),
    (0.4, 3, 2.607272141646415, 4.3e-15, 0.7745787927510580, 1.6e-16),
    (0.4, 4, 2.594500911475041, 7.3e-15, 0.7266641783709941, 5.0e-15),
    (0.4, 6, 2.594423234973139, 4.2e-14, 0.7376171346942053, 3.3e-16),
    (0.6, 2, 1.834057544899021, 1.1e-15, 0.5664257041432605, 4.1e-16),
    (0.6, 5, 1.960455689663461, 6.1e-15, 0.4297949760368867, 1.6e-15),
    (0.8, 2, 1.608371955353828, 1.6e-15, 0.3323260582700188, 2.8e-16),
    (0.8, 3, 1.660617572058080, 8.7e-16, 0.2675691556476836, 4.6e-16),
    (1.0, 2, 1.461157081431933, 2.0e-15, 0.2104682299562445, 1.1e-16),
    (1.0, 4, 1.485914720666516, 2.1e-16, 0.1796691052492212, 1.1e-16),
    (1.2, 4, 1.372176156193755, 5.0e-16, 0.1234414146531335, 0.0),
    (1.5, 4, 1.262800608570183, 1.6e-15, 0.07465158121522054, 1.7e-16),
    (2.0, 3, 1.162112249974693, 1.1e-15, 0.03662808437088003, 0.0),
    (3.0, 2, 1.077621553329114, 3.3e-16, 0.01274529646673066, 0.0),
    (10.0, 2, 1.007451045420713, 2.6e-16, 0.00037197952964307, 0.0),
    (INF, 1, 1.0, 0.0, 0.0, 0.0),
]

# rows whose published values are described as converged in M
CONVERGED = [(1.2, 4), (1.5, 4), (2.0, 3), (3.0, 2), (10.0, 2)]


@dataclass(frozen=True)
class TableRow:
    h: float
    M: int
    k1: float
    err_k1: float
    k2: float
    err_k2: float
    status: str


def crack_row(h: float, M: int, quadrature: str = "safe", with_error: bool = True) -> TableRow:
    p = builtin("crack", {"h": h, "M": M, "quadrature": QuadratureSettings(quadrature)})
    res = solve_problem(p)
    s = res.solution
    k1, k2 = s.sif(2, 1), s.sif(1, 1)
    e1 = e2 = math.nan
    if with_error:
        est = estimate_error(p, s, tensor=res.tensor)
        e1, e2 = est.per_functional["k1"], est.per_functional["k2"]
    return TableRow(h, M, k1, e1, k2, e2, res.report.status)


def compute_table(quadrature: str = "safe", rows=None, with_error: bool = True) -> list[TableRow]:
    """Recompute the rows ``[(h, M), ...]`` (default: every published row) in order."""
    if rows is None:
        rows = [(r[0], r[1]) for r in PUBLISHED_ROWS]
    return [crack_row(h, M, quadrature, with_error) for h, M in rows]
