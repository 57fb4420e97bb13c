"""Chebyshev polynomials of the first to fourth kinds.

All four families share the recurrence ``P[j+1] = 2 x P[j] - P[j-1]`` and
differ only in their seeds::

    T: 1, x        U: 1, 2x        V: 1, 2x - 1        W: 1, 2x + 1

Evaluating through the recurrence (rather than ``cos(j * arccos(x))``) keeps
the values exact at ``x = +-1``, where the trigonometric forms of ``V`` and
``W`` are 0/0 limits.

Each family is orthogonal on [-1, 1] under the weight
``lambda_nu(t) / sqrt(1 - t^2)`` with ``lambda_nu`` in ``{1, 1-t^2, 1+t, 1-t}``,
and the weighted polynomial has a closed-form Cauchy principal value
transform (see :func:`pv_transform`).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import OutOfDomainError

__all__ = [
    "ChebyshevKind",
    "PvImage",
    "eval_poly",
    "eval_basis",
    "eval_series",
    "roots",
    "lambda_factor",
    "weight",
    "orthogonality_constant",
    "pv_transform",
]


class ChebyshevKind(enum.IntEnum):
    """Chebyshev family; the integer value is the case index ``nu``."""

    FIRST = 1
    SECOND = 2
    THIRD = 3
    FOURTH = 4

    @property
    def symbol(self) -> str:
        return "TUVW"[self.value - 1]


# (P_0, P_1) as coefficients of (1, x): P_1 = a + b x
_SEED_P1 = {
    ChebyshevKind.FIRST: (0.0, 1.0),
    ChebyshevKind.SECOND: (0.0, 2.0),
    ChebyshevKind.THIRD: (-1.0, 2.0),
    ChebyshevKind.FOURTH: (1.0, 2.0),
}


def _as_kind(kind) -> ChebyshevKind:
    return kind if isinstance(kind, ChebyshevKind) else ChebyshevKind(kind)


def _check_closed(x):
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) > 1.0) or np.any(np.isnan(x)):
        raise OutOfDomainError(f"x must lie in [-1, 1], got {x!r}")
    return x


def eval_basis(kind, degree: int, x):
    """Values of ``P_0 .. P_degree`` at ``x``.

    Returns an array of shape ``(degree + 1,) + np.shape(x)``. ``x`` is not
    range-checked; callers that need the check go through :func:`eval_poly`.
    """
    kind = _as_kind(kind)
    if degree < 0:
        raise ValueError(f"degree must be >= 0, got {degree}")
    x = np.asarray(x, dtype=float)
    out = np.empty((degree + 1,) + x.shape)
    out[0] = 1.0
    if degree >= 1:
        a, b = _SEED_P1[kind]
        out[1] = a + b * x
    for j in range(1, degree):
        out[j + 1] = 2.0 * x * out[j] - out[j - 1]
    return out


def eval_poly(kind, degree: int, x):
    """Evaluate ``P_{nu, degree}(x)`` for ``x`` in [-1, 1].

    >>> eval_poly(ChebyshevKind.FIRST, 2, 0.5)
    -0.5
    >>> eval_poly(ChebyshevKind.FOURTH, 3, 1.0)
    7.0
    """
    if degree < 0:
        raise ValueError(f"degree must be >= 0, got {degree}")
    xa = _check_closed(x)
    val = eval_basis(kind, degree, xa)[degree]
    return float(val) if val.ndim == 0 else val


def eval_series(kind, coeffs, x):
    """Evaluate ``sum_k coeffs[k] * P_k(x)`` (plain sum, no halved first term)."""
    coeffs = np.asarray(coeffs, dtype=float)
    if coeffs.size == 0:
        return np.zeros_like(np.asarray(x, dtype=float))
    basis = eval_basis(kind, coeffs.size - 1, x)
    return np.tensordot(coeffs, basis, axes=(0, 0))


def roots(kind, M: int) -> np.ndarray:
    """The ``M + 1`` zeros of ``P_{nu, M+1}``, in decreasing order."""
    kind = _as_kind(kind)
    if M < 0:
        raise ValueError(f"M must be >= 0, got {M}")
    n = np.arange(1, M + 2, dtype=float)
    if kind is ChebyshevKind.FIRST:
        theta = (2 * n - 1) * np.pi / (2 * (M + 1))
    elif kind is ChebyshevKind.SECOND:
        theta = n * np.pi / (M + 2)
    elif kind is ChebyshevKind.THIRD:
        theta = (2 * n - 1) * np.pi / (2 * M + 3)
    else:
        theta = 2 * n * np.pi / (2 * M + 3)
    return np.cos(theta)


def lambda_factor(kind, t):
    """The numerator ``lambda_nu(t)`` of the weight."""
    kind = _as_kind(kind)
    t = np.asarray(t, dtype=float)
    if kind is ChebyshevKind.FIRST:
        out = np.ones_like(t)
    elif kind is ChebyshevKind.SECOND:
        out = 1.0 - t * t
    elif kind is ChebyshevKind.THIRD:
        out = 1.0 + t
    else:
        out = 1.0 - t
    return float(out) if out.ndim == 0 else out


def weight(kind, t):
    """Orthogonality weight ``lambda_nu(t) / sqrt(1 - t^2)`` on the open interval."""
    ta = np.asarray(t, dtype=float)
    if np.any(np.abs(ta) >= 1.0) or np.any(np.isnan(ta)):
        raise OutOfDomainError(f"weight is only defined on (-1, 1), got {t!r}")
    out = lambda_factor(kind, ta) / np.sqrt(1.0 - ta * ta)
    return float(out) if np.ndim(out) == 0 else out


def orthogonality_constant(kind, degree: int) -> float:
    """``h = integral of weight * P_degree^2`` over [-1, 1]."""
    kind = _as_kind(kind)
    if degree < 0:
        raise ValueError(f"degree must be >= 0, got {degree}")
    if kind is ChebyshevKind.FIRST:
        return math.pi if degree == 0 else math.pi / 2
    if kind is ChebyshevKind.SECOND:
        return math.pi / 2
    return math.pi


@dataclass(frozen=True)
class PvImage:
    """``sign * scale * P_{target_kind, target_degree}``; degree -1 is the zero polynomial."""

    target_kind: ChebyshevKind
    target_degree: int
    sign: int
    scale: float = math.pi

    @property
    def is_zero(self) -> bool:
        return self.target_degree < 0

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        if self.is_zero:
            out = np.zeros_like(t)
        else:
            out = self.sign * self.scale * eval_basis(self.target_kind, self.target_degree, t)[-1]
        return float(out) if out.ndim == 0 else out


# source kind -> (target kind, degree shift, sign)
_PV_TABLE = {
    ChebyshevKind.FIRST: (ChebyshevKind.SECOND, -1, 1),
    ChebyshevKind.SECOND: (ChebyshevKind.FIRST, 1, -1),
    ChebyshevKind.THIRD: (ChebyshevKind.FOURTH, 0, 1),
    ChebyshevKind.FOURTH: (ChebyshevKind.THIRD, 0, -1),
}


def pv_transform(kind, degree: int) -> PvImage:
    """Principal value of ``integral weight(tau) P_degree(tau) / (tau - t) dtau``.

    The result is a polynomial in ``t`` of the companion kind:
    T -> pi U_{j-1}, U -> -pi T_{j+1}, V -> pi W_j, W -> -pi V_j.
    """
    kind = _as_kind(kind)
    if degree < 0:
        raise ValueError(f"degree must be >= 0, got {degree}")
    target, shift, sign = _PV_TABLE[kind]
    return PvImage(target, max(degree + shift, -1), sign)


def companion_kind(kind) -> ChebyshevKind:
    """Kind of the polynomials produced by :func:`pv_transform` for ``kind``."""
    return _PV_TABLE[_as_kind(kind)][0]
