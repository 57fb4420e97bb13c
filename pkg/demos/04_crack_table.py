import math

from chebsie.crack_table import PUBLISHED_ROWS, crack_row

# A straight crack at depth h below the free edge of a half plane, opened by
# unit pressure. k1 and k2 are the stress intensity factors at the crack tip.
# With h = inf the kernels vanish and k1 = 1, k2 = 0 exactly.
print(crack_row(math.inf, 1))

# "safe" quadrature integrates the kernels to machine precision. "paper" uses
# the low node counts of the reference discretization and reproduces its
# printed digits, including the quadrature error baked into them.
print(f"{'h':>5} {'M':>3} {'k1 safe':>18} {'k1 paper':>18} {'k1 reference':>18}")
for h, M, k1, *_ in PUBLISHED_ROWS[:-1]:
    safe = crack_row(h, M, "safe", with_error=False)
    paper = crack_row(h, M, "paper", with_error=False)
    print(f"{h:5} {M:3} {safe.k1:18.15f} {paper.k1:18.15f} {k1:18.15f}")

# Convergence in M at h = 3. Both discretizations head for 1.0777689; the
# reference value 1.0776216 at M = 2 is the low-node result, not the limit.
for M in (2, 4, 8, 16):
    print(M, crack_row(3.0, M, "safe", with_error=False).k1, crack_row(3.0, M, "paper", with_error=False).k1)

# The error estimate re-solves the system driven by the residual. It sees
# quadrature error but not truncation error in M.
for mode in ("safe", "paper"):
    r = crack_row(3.0, 2, mode)
    print(mode, "Est.Err k1 =", r.err_k1, "k2 =", r.err_k2)
