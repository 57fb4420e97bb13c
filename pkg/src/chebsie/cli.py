"""Command-line front end: ``sie solve|builtin|table1|sample``.

Exit codes: 0 unique or least-squares solve, 1 input error,
2 inconsistent system, 3 underdetermined system.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import config as cfg
from .crack_table import compute_table
from .error_estimation import estimate_error
from .errors import SieError
from .problem import BUILTINS, QuadratureSettings, builtin
from .spectral_solver import Status, solve_problem

EXIT_OK, EXIT_INPUT, EXIT_INCONSISTENT, EXIT_UNDERDETERMINED = 0, 1, 2, 3
EXIT_CODES = {
    Status.UNIQUE: EXIT_OK,
    Status.LEAST_SQUARES: EXIT_OK,
    Status.INCONSISTENT: EXIT_INCONSISTENT,
    Status.UNDERDETERMINED: EXIT_UNDERDETERMINED,
}


class InputError(Exception):
    pass


def _fmt(x) -> str:
    """16 significant digits for human-readable tables."""
    if isinstance(x, float) and math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(x, ".16g")


def _csv_value(x):
    return "inf" if isinstance(x, float) and math.isinf(x) else repr(float(x)) if isinstance(x, float) else x


def _parse_params(items) -> dict:
    out = {}
    for item in items or ():
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise InputError(f"--param expects key=value, got {item!r}")
        try:
            out[key.strip()] = math.inf if value.strip() == "inf" else float(value)
        except ValueError:
            raise InputError(f"--param {key}: not a number: {value!r}") from None
    return out


def _load_problem(args):
    params = _parse_params(args.param)
    if bool(args.config) == bool(args.builtin):
        raise InputError("give exactly one of --config PATH or --builtin NAME")
    if args.builtin:
        if args.M is not None:
            params["M"] = args.M
        if args.quadrature:
            params["quadrature"] = QuadratureSettings(args.quadrature)
        p = builtin(args.builtin, params)
        if args.case is not None:
            p = p.with_(case=args.case)
        return p
    path = Path(args.config)
    if params or args.M is not None or args.case is not None or args.quadrature:
        cfg.load_config(path)  # surfaces file and syntax errors first
        doc = json.loads(path.read_text(encoding="utf-8"))
        doc.setdefault("parameters", {}).update({k: ("inf" if math.isinf(v) else v) for k, v in params.items()})
        if args.M is not None:
            doc["M"] = args.M
        if args.case is not None:
            doc["case"] = args.case
        if args.quadrature:
            doc.setdefault("quadrature", {})["mode"] = args.quadrature
        return cfg.problem_from_dict(doc, path=path, name=path.stem)
    return cfg.load_config(path)


def _emit(text: str, out):
    if out:
        try:
            Path(out).write_text(text, encoding="utf-8")
        except OSError as exc:
            raise InputError(f"{out}: cannot write: {exc.strerror}") from None
    else:
        sys.stdout.write(text)


def solve_report(p, with_error: bool = False) -> dict:
    """Structured result of a solve, mirroring the report types."""
    res = solve_problem(p)
    rep = res.report
    s = res.solution
    doc = {
        "problem": p.name,
        "case": int(p.case),
        "M": p.M,
        "parameters": {k: ("inf" if math.isinf(v) else v) for k, v in p.parameters.items()},
        "quadrature": p.quadrature.mode,
        "status": rep.status,
        "rank": rep.rank,
        "residual_norm": rep.residual_norm,
        "condition_estimate": rep.condition_estimate,
        "beta": rep.beta.tolist(),
        "free_columns": [list(c) for c in rep.free_columns],
        "violated_rows": list(rep.violated_rows),
        "sif": {name: s.sif(j, end) for name, (j, end) in p.output_functionals().items()},
    }
    if with_error and rep.status in (Status.UNIQUE, Status.LEAST_SQUARES):
        est = estimate_error(p, s, tensor=res.tensor)
        doc["error_estimate"] = {
            "status": est.report.status,
            "sup_regular": est.sup_regular,
            "per_functional": est.per_functional,
        }
    return doc


def _render_solve(doc, fmt) -> str:
    if fmt == "json":
        return json.dumps(doc, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["j", "l", "beta"])
        for j, row in enumerate(doc["beta"], start=1):
            for l, v in enumerate(row):
                w.writerow([j, l, repr(v)])
        return buf.getvalue()
    lines = [
        f"problem: {doc['problem']}   case: {doc['case']}   degree: {doc['M']}   quadrature: {doc['quadrature']}"
        + "".join(f"   {k}: {_fmt(v) if isinstance(v, float) else v}" for k, v in doc["parameters"].items()),
        f"status: {doc['status']}   rank: {doc['rank']}   residual: {doc['residual_norm']:.3e}"
        f"   cond: {doc['condition_estimate']:.3e}",
        "beta:",
    ]
    for j, row in enumerate(doc["beta"], start=1):
        for l, v in enumerate(row):
            lines.append(f"  beta[{j},{l}] = {_fmt(v)}")
    if doc["free_columns"]:
        lines.append("free coefficients (pin these): " + ", ".join(f"beta[{j},{l}]" for j, l in doc["free_columns"]))
    if doc["violated_rows"]:
        lines.append("violated equations: " + ", ".join(doc["violated_rows"]))
    if doc["case"] == 1:
        for name, v in doc["sif"].items():
            lines.append(f"{name} = {_fmt(v)}")
    if "error_estimate" in doc:
        for name, v in doc["error_estimate"]["per_functional"].items():
            lines.append(f"Est.Err {name} = {v:.2g}")
        lines.append(f"Est.Err sup|psi| = {doc['error_estimate']['sup_regular']:.2g}")
    return "\n".join(lines) + "\n"


def cmd_solve(args) -> int:
    p = _load_problem(args)
    doc = solve_report(p, args.with_error_estimate)
    _emit(_render_solve(doc, args.format), args.out)
    if doc["free_columns"]:
        print("underdetermined: free coefficients " + ", ".join(f"beta[{j},{l}]" for j, l in doc["free_columns"]),
              file=sys.stderr)
    return EXIT_CODES[doc["status"]]


def cmd_builtin(args) -> int:
    if not args.name:
        _emit("\n".join(sorted(BUILTINS)) + "\n", args.out)
        return EXIT_OK
    params = _parse_params(args.param)
    if args.M is not None:
        params["M"] = args.M
    if args.quadrature:
        params["quadrature"] = QuadratureSettings(args.quadrature)
    p = builtin(args.name, params)
    _emit(json.dumps(cfg.problem_to_dict(p), indent=2) + "\n", args.out)
    return EXIT_OK


TABLE1_COLUMNS = ["h", "M", "k1", "est_err_k1", "k2", "est_err_k2"]


def render_table1(rows, fmt) -> str:
    records = [[r.h, r.M, r.k1, r.err_k1, r.k2, r.err_k2] for r in rows]
    if fmt == "json":
        return json.dumps(
            [dict(zip(TABLE1_COLUMNS, [("inf" if math.isinf(v[0]) else v[0])] + v[1:])) for v in records], indent=2
        ) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(TABLE1_COLUMNS)
        for v in records:
            w.writerow([_csv_value(float(v[0])), v[1]] + [_csv_value(x) for x in v[2:]])
        return buf.getvalue()
    head = f"{'h':>5} {'M':>3} {'k1':>22} {'Est.Err k1':>11} {'k2':>22} {'Est.Err k2':>11}"
    lines = [head, "-" * len(head)]
    for h, M, k1, e1, k2, e2 in records:
        lines.append(f"{_fmt(h):>5} {M:>3} {_fmt(k1):>22} {e1:>11.2g} {_fmt(k2):>22} {e2:>11.2g}")
    return "\n".join(lines) + "\n"


def cmd_table1(args) -> int:
    rows = compute_table(args.quadrature or "safe")
    _emit(render_table1(rows, args.format), args.out)
    bad = [r for r in rows if r.status not in (Status.UNIQUE, Status.LEAST_SQUARES)]
    return EXIT_CODES[bad[0].status] if bad else EXIT_OK


def sample_grid(points: int, lo: float = -0.999, hi: float = 0.999) -> np.ndarray:
    """Uniform grid; symmetric grids with an odd count contain 0 exactly."""
    grid = np.linspace(lo, hi, points)
    if points % 2 == 1 and lo == -hi:
        grid[points // 2] = 0.0
    return grid


def cmd_sample(args) -> int:
    if args.points < 1:
        raise InputError("--points must be >= 1")
    p = _load_problem(args)
    res = solve_problem(p)
    status = res.report.status
    if EXIT_CODES[status] != EXIT_OK:
        print(f"solve is {status}; nothing sampled", file=sys.stderr)
        return EXIT_CODES[status]
    data = res.solution.sample(sample_grid(args.points))
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["tau"] + [f"phi_{j}" for j in range(1, p.N + 1)])
    for row in data:
        w.writerow([repr(float(x)) for x in row])
    _emit(buf.getvalue(), args.out)
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    # usage errors are input errors; argparse's default status 2 means "inconsistent" here
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _add_common(sp, problem_source=True):
    if problem_source:
        sp.add_argument("--config", metavar="PATH", help="problem file (JSON)")
        sp.add_argument("--builtin", metavar="NAME", help=f"builtin problem: {', '.join(sorted(BUILTINS))}")
        sp.add_argument("--case", type=int, choices=[1, 2, 3, 4], help="override the case")
    sp.add_argument("--param", action="append", metavar="K=V", help="parameter override (repeatable)")
    sp.add_argument("--M", type=int, help="truncation degree (for crack: terms per component)")
    sp.add_argument("--quadrature", choices=["safe", "paper"])
    sp.add_argument("--out", metavar="PATH", help="write output here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="sie", description="Spectral solver for systems of Cauchy singular integral equations")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("solve", help="solve a problem")
    _add_common(sp)
    sp.add_argument("--format", choices=["table", "csv", "json"], default="table")
    sp.add_argument("--with-error-estimate", action="store_true")
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("builtin", help="list builtins or print one as a config document")
    sp.add_argument("name", nargs="?")
    _add_common(sp, problem_source=False)
    sp.set_defaults(func=cmd_builtin)

    sp = sub.add_parser("table1", help="stress intensity factors for the crack problem")
    sp.add_argument("--quadrature", choices=["safe", "paper"])
    sp.add_argument("--format", choices=["table", "csv", "json"], default="table")
    sp.add_argument("--out", metavar="PATH")
    # error columns are always computed; flag kept for interface symmetry
    sp.add_argument("--with-error-estimate", action="store_true")
    sp.set_defaults(func=cmd_table1)

    sp = sub.add_parser("sample", help="write (tau, phi_1..phi_N) on a grid as CSV")
    _add_common(sp)
    sp.add_argument("--points", type=int, default=401)
    sp.set_defaults(func=cmd_sample)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, SieError) as exc:
        print(f"sie: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
