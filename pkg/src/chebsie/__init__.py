"""Spectral solution of systems of Cauchy singular integral equations on [-1, 1].

The unknowns are expanded in Chebyshev polynomials of the kind that matches
their endpoint behaviour; principal value integrals of the basis are known in
closed form, so each problem reduces to a small dense linear system.
"""

from .chebyshev import ChebyshevKind, eval_poly, pv_transform, roots, weight
from .config import load_config
from .error_estimation import estimate_error
from .problem import Integral, Parity, Pin, Problem, QuadratureSettings, builtin, validate
from .solution import SpectralSolution
from .spectral_solver import solve_problem

__all__ = [
    "ChebyshevKind",
    "eval_poly",
    "pv_transform",
    "roots",
    "weight",
    "load_config",
    "estimate_error",
    "Integral",
    "Parity",
    "Pin",
    "Problem",
    "QuadratureSettings",
    "builtin",
    "validate",
    "SpectralSolution",
    "solve_problem",
]

__version__ = "0.1.0"
