import numpy as np

from chebsie.problem import builtin, validate
from chebsie.spectral_solver import solve_problem

# Two coupled equations with polynomial kernels:
#   PV int phi_1/(tau - t) + int (tau - t) phi_1 + int t phi_2   = pi
#   PV int phi_2/(tau - t) + int tau phi_1   + int (tau + t) phi_2 = 2 pi t
p = builtin("example1")
print("diagnostics:", validate(p) or "none")

# Unbounded at both ends (case 1), so the system leaves one constant per
# component free. Without side conditions the solver says which ones.
loose = solve_problem(p.with_(side_conditions=()))
print(loose.report.status, "free:", loose.report.free_columns)

# The builtin pins beta[1,0] = beta[2,0] = 2, which gives
#   phi_1 = (2 + 2/3 tau) / sqrt(1 - tau^2),  phi_2 = (2 - 2/9 tau) / sqrt(1 - tau^2)
res = solve_problem(p)
print(res.report.status)
print(res.report.beta)
s = res.solution
print("phi_1(0) =", s.evaluate(1, 0.0), " phi_2(0.5) =", s.evaluate(2, 0.5))

# Plugging the solution back in reproduces the right-hand sides.
t = np.linspace(-0.9, 0.9, 7)
print("residual eq 1:", np.max(np.abs(s.apply_operator(1, t) - np.pi)))
print("residual eq 2:", np.max(np.abs(s.apply_operator(2, t) - 2 * np.pi * t)))

# The same system, now bounded at tau = -1 (case 3), has a unique solution.
res = solve_problem(builtin("example2"))
print(res.report.status, res.report.beta.ravel(), "expected", [-10 / 27, 28 / 27, -22 / 9, 20 / 9])
print("assembled rows:\n", res.system.matrix)
