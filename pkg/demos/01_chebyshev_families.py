import numpy as np

from chebsie.chebyshev import ChebyshevKind, eval_poly, pv_transform, roots, weight
from chebsie.quadrature import gauss_rule

# The four Chebyshev families share one recurrence, P_{j+1} = 2x P_j - P_{j-1},
# and differ only in their first two members.
x = np.linspace(-1, 1, 5)
for kind in ChebyshevKind:
    print(kind.symbol, [np.round(eval_poly(kind, j, x), 3).tolist() for j in range(3)])

# Each family is orthogonal under its own weight. The weight blows up at the
# ends where the family's functions are unbounded.
t = np.array([-0.99, 0.0, 0.99])
for kind in ChebyshevKind:
    print(kind.symbol, "weight at", t, "->", np.round(weight(kind, t), 3))

# Gauss rules for those weights are closed-form: nodes are polynomial roots.
rule = gauss_rule(ChebyshevKind.THIRD, 4)
print("V-weight nodes", rule.nodes)
print("V-weight weights", rule.weights)
print("roots of V_4 agree:", np.allclose(np.sort(roots(ChebyshevKind.THIRD, 3)), np.sort(rule.nodes)))

# A rule with n nodes integrates polynomials of degree 2n - 1 exactly.
print("int w_V * x^6 =", rule.integrate(rule.nodes**6))

# The weighted polynomials have closed-form Cauchy principal values.
# T_j maps to pi U_{j-1}, U_j to -pi T_{j+1}, V_j to pi W_j, W_j to -pi V_j.
for kind in ChebyshevKind:
    img = pv_transform(kind, 2)
    print(f"PV[w {kind.symbol}_2] = {img.sign * img.scale:+.4f} * {img.target_kind.symbol}_{img.target_degree}")
