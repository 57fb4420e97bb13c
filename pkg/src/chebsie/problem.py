"""Problem definitions and the builtin catalog.

A problem is the coupled system::

    sum_j b_ij PV int phi_j(tau)/(tau - t) dtau
        + sum_j int K_ij(t, tau) phi_j(tau) dtau = f_i(t),   -1 < t < 1,

with a constant nonsingular matrix ``B``. The case selects the endpoint
behaviour of the unknowns and hence the Chebyshev family used for them.

Component indices ``j`` (and equation indices ``i``) are 1-based in every
public signature, matching the usual notation; coefficient degrees ``l``
are 0-based.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Sequence

import numpy as np

from .chebyshev import ChebyshevKind, eval_basis
from .errors import ProblemError
from .quadrature import gauss_rule

__all__ = [
    "Pin",
    "Integral",
    "Parity",
    "QuadratureSettings",
    "Problem",
    "validate",
    "builtin",
    "BUILTINS",
    "integral_condition_row",
    "constraint_rows",
    "zero_kernel",
    "crack_kernels",
    "CRACK_KERNEL_SOURCES",
]


@dataclass(frozen=True)
class Pin:
    """Fix ``beta[j, l] = value``."""

    j: int
    l: int
    value: float = 0.0


@dataclass(frozen=True)
class Integral:
    """Require ``int_{-1}^{1} phi_j(tau) dtau = value``."""

    j: int
    value: float = 0.0


@dataclass(frozen=True)
class Parity:
    """Restrict the regular part of ``phi_j`` to even or odd basis polynomials."""

    j: int
    parity: str  # "even" | "odd"


SideCondition = Pin | Integral | Parity


@dataclass(frozen=True)
class QuadratureSettings:
    """Node counts for the tau-side and t-side Gauss rules.

    ``safe`` over-integrates with ``max(2M + 8, 32)`` nodes on both sides.
    ``paper`` uses the low node counts of the original discretization:
    ``M + 1`` tau nodes and ``M`` t nodes in case 1, ``M + 1`` on both sides
    otherwise. Explicit ``n_tau`` / ``n_t`` override either mode.
    """

    mode: str = "safe"
    n_tau: int | None = None
    n_t: int | None = None

    def node_counts(self, case, M: int) -> tuple[int, int]:
        if self.mode == "safe":
            n = max(2 * M + 8, 32)
            d_tau, d_t = n, n
        elif self.mode == "paper":
            d_tau = M + 1
            d_t = max(M, 1) if ChebyshevKind(case) is ChebyshevKind.FIRST else M + 1
        else:
            raise ProblemError(f"unknown quadrature mode {self.mode!r}")
        return (self.n_tau or d_tau, self.n_t or d_t)


def zero_kernel(t, tau):
    return np.zeros(np.broadcast(np.asarray(t), np.asarray(tau)).shape)


@dataclass(frozen=True)
class Problem:
    N: int
    B: np.ndarray
    kernels: Sequence[Sequence[Callable]]
    rhs: Sequence[Callable]
    case: ChebyshevKind
    M: int
    side_conditions: tuple = ()
    parameters: dict = field(default_factory=dict)
    quadrature: QuadratureSettings = QuadratureSettings()
    # name -> (component j, endpoint); evaluated as stress intensity factors
    functionals: dict = field(default_factory=dict)
    name: str = "problem"
    # expression strings for kernels / rhs when known (used for config export)
    sources: dict | None = None

    def with_(self, **changes) -> "Problem":
        return replace(self, **changes)

    @property
    def n_unknowns(self) -> int:
        return self.N * (self.M + 1)

    def column(self, j: int, l: int) -> int:
        return (j - 1) * (self.M + 1) + l

    def output_functionals(self) -> dict:
        if self.functionals:
            return dict(self.functionals)
        return {f"sif{j}": (j, 1) for j in range(1, self.N + 1)}


def _shape_ok(obj, n) -> bool:
    try:
        return len(obj) == n
    except TypeError:
        return False


def validate(p: Problem) -> list[str]:
    """All problems found in ``p``; an empty list means the problem is usable."""
    diags = []
    try:
        case = ChebyshevKind(p.case)
    except ValueError:
        diags.append(f"case must be 1, 2, 3 or 4, got {p.case!r}")
        case = None
    if not isinstance(p.N, (int, np.integer)) or p.N < 1:
        diags.append(f"N must be a positive integer, got {p.N!r}")
        return diags
    if p.M < 0:
        diags.append(f"M must be >= 0, got {p.M}")
    B = np.asarray(p.B, dtype=float)
    if B.shape != (p.N, p.N):
        diags.append(f"B must be {p.N}x{p.N}, got shape {B.shape}")
    else:
        scale = max(1.0, float(np.max(np.abs(B)))) ** p.N
        if not np.all(np.isfinite(B)) or abs(np.linalg.det(B)) <= 1e-12 * scale:
            diags.append("B singular (B and -B must be nonsingular)")
    if not _shape_ok(p.kernels, p.N) or not all(_shape_ok(row, p.N) for row in p.kernels):
        diags.append(f"kernels must be a {p.N}x{p.N} array")
    if not _shape_ok(p.rhs, p.N):
        diags.append(f"f must have {p.N} entries")
    for k, sc in enumerate(p.side_conditions):
        tag = f"side condition {k + 1} ({type(sc).__name__.lower()})"
        if not 1 <= sc.j <= p.N:
            diags.append(f"{tag}: index out of range: j={sc.j} not in 1..{p.N}")
        if isinstance(sc, Pin) and not 0 <= sc.l <= p.M:
            diags.append(f"{tag}: index out of range: l={sc.l} not in 0..{p.M}")
        if isinstance(sc, Parity):
            if sc.parity not in ("even", "odd"):
                diags.append(f"{tag}: parity must be 'even' or 'odd', got {sc.parity!r}")
            if case not in (None, ChebyshevKind.FIRST, ChebyshevKind.SECOND):
                diags.append(f"{tag}: parity requires a symmetric weight (case 1 or 2)")
    for name, (j, end) in p.functionals.items():
        if not 1 <= j <= p.N or end not in (1, -1):
            diags.append(f"functional {name!r}: expected component in 1..{p.N} and endpoint +-1")
    if case is not None and p.M >= 0:
        try:
            n_tau, n_t = p.quadrature.node_counts(case, p.M)
        except ProblemError as exc:
            diags.append(str(exc))
        else:
            L = p.M - 1 if case is ChebyshevKind.FIRST else p.M
            if n_tau < p.M + 1:
                diags.append(f"quadrature: n_tau={n_tau} < M + 1 = {p.M + 1}")
            if L >= 0 and n_t < L + 1:
                diags.append(f"quadrature: n_t={n_t} < L + 1 = {L + 1}")
    return diags


def integral_condition_row(p: Problem, j: int, value: float = 0.0) -> tuple[np.ndarray, float]:
    """Linear constraint ``int phi_j = value`` as a row over the unknowns.

    ``int phi_j = sum_l beta_jl * int w P_l``; the weighted moments are
    integrated exactly with an ``M + 1`` point Gauss rule.
    """
    rule = gauss_rule(p.case, p.M + 1)
    moments = eval_basis(p.case, p.M, rule.nodes) @ rule.weights
    row = np.zeros(p.n_unknowns)
    row[p.column(j, 0) : p.column(j, p.M) + 1] = moments
    return row, float(value)


def constraint_rows(p: Problem) -> list[tuple[str, np.ndarray, float]]:
    """Side conditions as labelled linear equations, in declaration order."""
    out = []
    for k, sc in enumerate(p.side_conditions):
        if isinstance(sc, Pin):
            row = np.zeros(p.n_unknowns)
            row[p.column(sc.j, sc.l)] = 1.0
            out.append((f"pin(j={sc.j},l={sc.l})", row, float(sc.value)))
        elif isinstance(sc, Integral):
            row, val = integral_condition_row(p, sc.j, sc.value)
            out.append((f"integral(j={sc.j})", row, val))
        elif isinstance(sc, Parity):
            start = 1 if sc.parity == "even" else 0
            for l in range(start, p.M + 1, 2):
                row = np.zeros(p.n_unknowns)
                row[p.column(sc.j, l)] = 1.0
                out.append((f"parity(j={sc.j},{sc.parity}):l={l}", row, 0.0))
        else:
            raise ProblemError(f"unknown side condition {sc!r}")
    return out


# --- builtin catalog -------------------------------------------------------


def _example_kernels():
    return [
        [lambda t, s: s - t, lambda t, s: t + 0.0 * s],
        [lambda t, s: s + 0.0 * t, lambda t, s: s + t],
    ]


_EXAMPLE_SOURCES = {
    "kernels": [["tau - t", "t"], ["tau", "tau + t"]],
    "f": ["pi()", "2*pi()*t"],
}


def _example_rhs():
    return [lambda t: np.full(np.shape(t), np.pi), lambda t: 2 * np.pi * np.asarray(t)]


CRACK_KERNEL_SOURCES = [
    [
        "-(tau-t)/((tau-t)^2+4*h^2) + 8*h^2*(tau-t)/((tau-t)^2+4*h^2)^2"
        " - 4*h^2*(tau-t)*(12*h^2-(tau-t)^2)/((tau-t)^2+4*h^2)^3",
        "-8*h^3*(4*h^2-3*(tau-t)^2)/((tau-t)^2+4*h^2)^3",
    ],
    [
        "-8*h^3*(4*h^2-3*(tau-t)^2)/((tau-t)^2+4*h^2)^3",
        "-(tau-t)/((tau-t)^2+4*h^2) - 8*h^2*(tau-t)/((tau-t)^2+4*h^2)^2"
        " - 4*h^2*(tau-t)*(12*h^2-(tau-t)^2)/((tau-t)^2+4*h^2)^3",
    ],
]


def crack_kernels(h: float):
    """Kernels of a crack parallel to the free boundary of a half plane at depth ``h``."""
    if math.isinf(h):
        return [[zero_kernel, zero_kernel], [zero_kernel, zero_kernel]]
    h2 = h * h

    def parts(t, tau):
        d = np.asarray(tau) - np.asarray(t)
        q = d * d + 4 * h2
        return d, q

    def k11(t, tau):
        d, q = parts(t, tau)
        return -d / q + 8 * h2 * d / q**2 - 4 * h2 * d * (12 * h2 - d * d) / q**3

    def k12(t, tau):
        d, q = parts(t, tau)
        return -8 * h**3 * (4 * h2 - 3 * d * d) / q**3

    def k22(t, tau):
        d, q = parts(t, tau)
        return -d / q - 8 * h2 * d / q**2 - 4 * h2 * d * (12 * h2 - d * d) / q**3

    return [[k11, k12], [k12, k22]]


def _param(params, key, default=None, *, kind=float):
    if key not in params:
        if default is None:
            raise ProblemError(f"missing parameter {key!r}")
        return default
    try:
        return kind(params[key])
    except (TypeError, ValueError):
        raise ProblemError(f"invalid value for parameter {key!r}: {params[key]!r}") from None


def _int_param(params, key, default=None):
    value = _param(params, key, default, kind=float)
    if value != int(value):
        raise ProblemError(f"parameter {key!r} must be an integer, got {value!r}")
    return int(value)


def _example1(params):
    M = _int_param(params, "M", 2)
    pin = _param(params, "pin", 2.0)
    if M < 1:
        raise ProblemError("example1 needs M >= 1")
    return Problem(
        N=2,
        B=np.eye(2),
        kernels=_example_kernels(),
        rhs=_example_rhs(),
        case=ChebyshevKind.FIRST,
        M=M,
        side_conditions=(Pin(1, 0, pin), Pin(2, 0, pin)),
        parameters={},
        name="example1",
        sources=_EXAMPLE_SOURCES,
    )


def _example2(params):
    M = _int_param(params, "M", 1)
    return Problem(
        N=2,
        B=np.eye(2),
        kernels=_example_kernels(),
        rhs=_example_rhs(),
        case=ChebyshevKind.THIRD,
        M=M,
        name="example2",
        sources=_EXAMPLE_SOURCES,
    )


def _crack(params):
    h = _param(params, "h")
    M = _int_param(params, "M")
    if not h > 0:
        raise ProblemError(f"crack needs h > 0 (or inf), got {h!r}")
    if M < 1:
        raise ProblemError(f"crack needs M >= 1, got {M}")
    # M counts even terms of phi_1 / odd terms of phi_2, so the full degree is 2M - 1
    degree = 2 * M - 1
    return Problem(
        N=2,
        B=np.eye(2),
        kernels=crack_kernels(h),
        rhs=[lambda t: np.zeros(np.shape(t)), lambda t: np.full(np.shape(t), np.pi)],
        case=ChebyshevKind.FIRST,
        M=degree,
        side_conditions=(Parity(1, "even"), Parity(2, "odd"), Integral(1, 0.0), Integral(2, 0.0)),
        parameters={"h": h, "M": M},
        functionals={"k1": (2, 1), "k2": (1, 1)},
        name="crack",
        sources={"kernels": CRACK_KERNEL_SOURCES, "f": ["0", "pi()"]},
    )


BUILTINS = {"example1": _example1, "example2": _example2, "crack": _crack}
_BUILTIN_PARAMS = {"example1": {"M", "pin"}, "example2": {"M"}, "crack": {"h", "M"}}


def builtin(name: str, params: dict | None = None) -> Problem:
    """A catalog problem.

    ``example1``: the 2x2 test system in case 1, pins ``beta[1,0] = beta[2,0] = pin``
    (default 2) and ``M = 2``.
    ``example2``: the same system in case 3 with ``M = 1``.
    ``crack``: crack parallel to a free boundary; needs ``h`` (``inf`` for
    vanishing kernels) and ``M``, the number of terms per component, which
    gives a polynomial degree of ``2M - 1``.
    """
    try:
        factory = BUILTINS[name]
    except KeyError:
        raise ProblemError(f"unknown builtin {name!r}; choose from {sorted(BUILTINS)}") from None
    params = dict(params or {})
    quad = params.pop("quadrature", None)
    unknown = set(params) - _BUILTIN_PARAMS[name]
    if unknown:
        raise ProblemError(f"{name} does not take parameter(s) {sorted(unknown)}")
    p = factory(params)
    if quad is not None:
        p = p.with_(quadrature=quad if isinstance(quad, QuadratureSettings) else QuadratureSettings(quad))
    return p
