"""The reduction that powers the solver family, step by step.

Splitting A into its top square block A1 and the remaining rows A2 gives
D = [-A2 A1^+  I] and w = A2 A1^+ b(1:n) - b(n+1:m).  Every residual
r = A x - b satisfies D r = w, so minimizing ||r||_1 under that single
linear constraint and then applying x = A^+ (b + r) solves the fitting
problem without ever optimizing over x directly.
"""

import numpy as np

import l1fit
from l1fit.residual_solvers import residual_linprog

rng = np.random.default_rng(1)
m, n = 9, 3
problem = l1fit.MlmProblem(rng.standard_normal((m, n)), rng.standard_normal(m))

reduced = l1fit.reduce_problem(problem)
print("D shape:", reduced.D.shape, " w shape:", reduced.w.shape)

# the constraint identity: any parameter vector produces a feasible residual
for _ in range(3):
    x = rng.standard_normal(n)
    r = problem.A @ x - problem.b
    print("||D r - w|| =", np.linalg.norm(reduced.D @ r - reduced.w))

# solve the small constrained problem and recover the parameters
res = residual_linprog(reduced.D, reduced.w)
x_opt = l1fit.recover(problem, reduced, res.r)
print("\noptimal residual:", np.round(res.r, 6))
print("l1 cost from the reduction :", l1fit.cost1(problem, x_opt))
print("l1 cost from brute force   :", l1fit.oracle_solve(problem).cost)

# the optimal residual interpolates n rows exactly
zeros = np.abs(res.r) <= 1e-8 * (1 + np.max(np.abs(res.r)))
print("zero-residual rows:", np.flatnonzero(zeros), f"(at least {n} expected)")
