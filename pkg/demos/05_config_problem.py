from pathlib import Path

import numpy as np

from chebsie.config import load_config, problem_to_dict
from chebsie.errors import ConfigError
from chebsie.kernel_expr import evaluate, parse, to_source
from chebsie.spectral_solver import solve_problem

here = Path(__file__).parent / "configs"

# Kernels and right-hand sides are plain expressions in t, tau and named parameters.
e = parse("-(tau-t)/((tau-t)^2+4*h^2)")
print(to_source(e))
print(evaluate(e, {"t": 0.0, "tau": 1.0, "h": 0.5}))
print(evaluate(parse("-2^2"), {}), "(unary minus binds looser than ^)")

# A case 4 problem written from scratch
p = load_config(here / "log_kernel_case4.json")
res = solve_problem(p)
print(p.name, res.report.status)
s = res.solution
tau = np.linspace(-0.9, 0.9, 5)
print(np.column_stack([tau, s.evaluate(1, tau), s.evaluate(2, tau)]))
print("residual:", max(np.max(np.abs(s.apply_operator(i, tau) - p.rhs[i - 1](tau))) for i in (1, 2)))

# The crack problem as a config; "inf" for h switches the kernels off.
p = load_config(here / "crack_h1.json")
print("k1 =", solve_problem(p).solution.sif(2, 1))
print(problem_to_dict(p)["side_conditions"])

# Mistakes are reported with the file and the offending location.
try:
    load_config(here / "broken.json")
except ConfigError as exc:
    print(exc)
