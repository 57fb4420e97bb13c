"""JSON problem files.

The document layout is given by ``problem.schema.json`` next to this module;
unknown keys are rejected. Kernels and right-hand sides are strings in the
expression language of :mod:`chebsie.kernel_expr`. A kernel that refers to a
parameter set to ``"inf"`` is taken to vanish identically.
"""

from __future__ import annotations

import json
import math
from importlib import resources
from pathlib import Path

import jsonschema
import numpy as np

from .chebyshev import ChebyshevKind
from .errors import ConfigError, ExprError
from .kernel_expr import evaluate, free_names, parse
from .problem import Integral, Parity, Pin, Problem, QuadratureSettings, validate, zero_kernel

__all__ = ["load_config", "problem_from_dict", "problem_to_dict", "schema"]


def schema() -> dict:
    return json.loads(resources.files("chebsie").joinpath("problem.schema.json").read_text())


class _Kernel:
    """Expression of ``t`` and ``tau`` with parameters bound."""

    def __init__(self, expr, params):
        self.expr = expr
        self.params = params

    def __call__(self, t, tau):
        env = dict(self.params, t=t, tau=tau)
        return np.broadcast_to(evaluate(self.expr, env), np.broadcast(np.asarray(t), np.asarray(tau)).shape)


class _Rhs:
    def __init__(self, expr, params):
        self.expr = expr
        self.params = params

    def __call__(self, t):
        return np.broadcast_to(evaluate(self.expr, dict(self.params, t=t)), np.shape(t))


def _compile(source, where, allowed, params, path):
    try:
        expr = parse(source)
    except ExprError as exc:
        raise ConfigError(f"{where}: {exc}", path=path) from None
    unknown = free_names(expr) - allowed - set(params)
    if unknown:
        raise ConfigError(f"{where}: unbound name(s) {sorted(unknown)}", path=path)
    return expr


def problem_from_dict(doc: dict, path=None, name: str = "config") -> Problem:
    try:
        jsonschema.validate(doc, schema())
    except jsonschema.ValidationError as exc:
        where = "/" + "/".join(str(p) for p in exc.absolute_path)
        raise ConfigError(f"at {where}: {exc.message}", path=path) from None
    params = {k: (math.inf if v == "inf" else float(v)) for k, v in doc.get("parameters", {}).items()}
    infinite = {k for k, v in params.items() if math.isinf(v)}
    kernels = []
    for i, row in enumerate(doc["kernels"]):
        krow = []
        for j, src in enumerate(row):
            expr = _compile(src, f"/kernels/{i}/{j}", {"t", "tau"}, params, path)
            krow.append(zero_kernel if free_names(expr) & infinite else _Kernel(expr, params))
        kernels.append(krow)
    rhs = [_Rhs(_compile(src, f"/f/{i}", {"t"}, params, path), params) for i, src in enumerate(doc["f"])]
    side = []
    for sc in doc.get("side_conditions", []):
        if sc["type"] == "pin":
            side.append(Pin(sc["j"], sc["l"], float(sc.get("value", 0.0))))
        elif sc["type"] == "integral":
            side.append(Integral(sc["j"], float(sc.get("value", 0.0))))
        else:
            side.append(Parity(sc["j"], sc["parity"]))
    q = doc.get("quadrature", {})
    try:
        B = np.array(doc["B"], dtype=float)
    except ValueError:
        raise ConfigError("at /B: rows of B must all have the same length", path=path) from None
    p = Problem(
        N=doc["N"],
        B=B,
        kernels=kernels,
        rhs=rhs,
        case=ChebyshevKind(doc["case"]),
        M=doc["M"],
        side_conditions=tuple(side),
        parameters=params,
        quadrature=QuadratureSettings(q.get("mode", "safe"), q.get("n_tau"), q.get("n_t")),
        name=name,
        sources={"kernels": doc["kernels"], "f": doc["f"]},
    )
    diags = validate(p)
    if diags:
        raise ConfigError("; ".join(diags), path=path)
    return p


def load_config(path) -> Problem:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise ConfigError("file not found", path=path) from None
    except OSError as exc:
        raise ConfigError(f"cannot read file: {exc.strerror}", path=path) from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON: {exc.msg} (line {exc.lineno}, column {exc.colno})", path=path,
                          offset=exc.pos) from None
    return problem_from_dict(doc, path=path, name=path.stem)


def problem_to_dict(p: Problem) -> dict:
    """Config document for ``p``; needs expression sources for kernels and rhs."""
    if not p.sources:
        raise ConfigError(f"problem {p.name!r} has no expression sources to export")
    doc = {
        "N": p.N,
        "B": np.asarray(p.B, dtype=float).tolist(),
        "case": int(p.case),
        "M": p.M,
        "kernels": [list(r) for r in p.sources["kernels"]],
        "f": list(p.sources["f"]),
    }
    params = {k: ("inf" if math.isinf(v) else v) for k, v in p.parameters.items() if k != "M"}
    if params:
        doc["parameters"] = params
    sides = []
    for sc in p.side_conditions:
        if isinstance(sc, Pin):
            sides.append({"type": "pin", "j": sc.j, "l": sc.l, "value": sc.value})
        elif isinstance(sc, Integral):
            sides.append({"type": "integral", "j": sc.j, "value": sc.value})
        else:
            sides.append({"type": "parity", "j": sc.j, "parity": sc.parity})
    if sides:
        doc["side_conditions"] = sides
    q = {"mode": p.quadrature.mode}
    if p.quadrature.n_tau:
        q["n_tau"] = p.quadrature.n_tau
    if p.quadrature.n_t:
        q["n_t"] = p.quadrature.n_t
    doc["quadrature"] = q
    return doc
