import numpy as np
from numpy.polynomial import chebyshev as C

from chebsie.analytic import consistency_residual, dominant_solve
from chebsie.errors import ConsistencyError
from chebsie.problem import Pin, Problem, zero_kernel
from chebsie.spectral_solver import solve_problem

# The bare Cauchy equation PV int phi(tau)/(tau - t) dtau = f(t) has a solution
# formula in each of the four cases. The oracle gets it by inverting the PV map
# term by term.
f = lambda t: C.chebval(t, [0.0, 1.0, 0.5, -0.25])
tau = np.array([-0.5, 0.0, 0.5])
for case in (2, 3, 4):
    print(f"case {case}: phi =", dominant_solve(case, f)(tau))

# Case 1 leaves a free constant a0, the coefficient of 1/sqrt(1 - tau^2).
print("case 1, a0 = 1:", dominant_solve(1, f, a0=1.0)(tau))

# The spectral solver with a zero kernel lands on the same coefficients.
p = Problem(N=1, B=np.eye(1), kernels=[[zero_kernel]], rhs=[f], case=1, M=5, side_conditions=(Pin(1, 0, 1.0),))
print("solver:", solve_problem(p).report.beta[0])
print("oracle:", dominant_solve(1, f, a0=1.0, L=4).coeffs)

# Bounded at both ends needs int f / sqrt(1 - t^2) = 0.
print("residual for f = 1:", consistency_residual(lambda t: np.ones_like(t)))
try:
    dominant_solve(2, lambda t: np.ones_like(t))
except ConsistencyError as exc:
    print("refused:", exc)

# The solver reports the same thing as an unsatisfiable projection row.
p = Problem(N=1, B=np.eye(1), kernels=[[zero_kernel]], rhs=[lambda t: np.ones_like(t)], case=2, M=3)
r = solve_problem(p).report
print(r.status, r.violated_rows)
