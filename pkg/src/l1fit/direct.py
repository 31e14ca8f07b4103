"""Baselines that attack min ||A x - b||_1 without the residual reduction.

``fit_linprog`` is the classic split-variable linear program over
(r+, r-, x+, x-); ``fit_perturbation`` is the descent scheme that grows the
set of zero residuals along kernel directions and applies a correction step
when the zero set reaches size n.
"""

from __future__ import annotations

import time

import numpy as np

from .linalg import norm_inf, nullspace_basis, pinv
from .reduction import MlmProblem, SolveReport, cost1
from .simplex import OPTIMAL, LpStandardForm, lp_solve

__all__ = ["fit_linprog", "fit_perturbation"]


def fit_linprog(problem: MlmProblem) -> SolveReport:
    """Solve the split-variable LP  min 1^T(r+ + r-)  s.t.  A x - r = b.

    The equality block is [-I, I, A, -A] acting on (r+, r-, x+, x-); the
    optimum is a simplex vertex, so the residual carries at least n zeros.
    """
    A, b = problem.A, problem.b
    m, n = problem.m, problem.n
    t0 = time.perf_counter()
    eye = np.eye(m)
    lp = LpStandardForm(
        cost=np.concatenate([np.ones(2 * m), np.zeros(2 * n)]),
        eq_matrix=np.hstack([-eye, eye, A, -A]),
        eq_rhs=b,
    )
    sol = lp_solve(lp)
    if sol.status != OPTIMAL:
        raise RuntimeError(f"direct linear program came back {sol.status}")
    x = sol.point[2 * m : 2 * m + n] - sol.point[2 * m + n :]
    elapsed = time.perf_counter() - t0
    return SolveReport(
        x=x,
        residual=A @ x - b,
        cost=cost1(problem, x),
        iterations=sol.iterations,
        runtime_s=elapsed,
        method="L1-LP",
        converged=True,
    )


def _zero_mask(r: np.ndarray, zero_tol: float) -> np.ndarray:
    return np.abs(r) <= zero_tol * (1.0 + norm_inf(r))


def _best_step(r_star: np.ndarray, Ad: np.ndarray) -> float:
    """Step over the breakpoint set minimizing ||r_* + v * Ad||_1.

    Ties on the objective prefer the smallest |v|, then the lowest index.
    """
    usable = np.flatnonzero(Ad != 0.0)
    if usable.size == 0:
        raise RuntimeError("kernel direction does not move any nonzero residual")
    steps = -r_star[usable] / Ad[usable]
    objectives = np.sum(np.abs(r_star[:, None] + np.outer(Ad, steps)), axis=0)
    order = np.lexsort((usable, np.abs(steps), objectives))
    return float(steps[order[0]])


def fit_perturbation(
    problem: MlmProblem,
    c: float = 1.0,
    maxiter: int = 15,
    zero_tol: float = 1e-8,
) -> SolveReport:
    """Descent on kernel directions with the sign-based correction step.

    The inner loop enlarges the zero-residual set one row per step; once it
    holds n rows, the decision vector s = (A_z^T)^+ A_*^T sign(r_*) either
    certifies optimality (||s||_inf <= 1) or points to the rows whose
    residual signs to flip via x += c * A_z^+ u(s).
    """
    if not c > 0:
        raise ValueError("correction scale c must be positive")
    if maxiter < 1:
        raise ValueError("maxiter must be at least 1")
    A, b = problem.A, problem.b
    m, n = problem.m, problem.n
    t0 = time.perf_counter()

    x = np.zeros(n)
    outer = 0
    converged = False
    while outer < maxiter:
        outer += 1
        r = A @ x - b
        zmask = _zero_mask(r, zero_tol)
        guard = 0
        while int(np.count_nonzero(zmask)) < n:
            guard += 1
            if guard > m + n:
                raise RuntimeError("zero-set growth stalled; residual ties too degenerate")
            kernel = nullspace_basis(A[zmask])
            if kernel.shape[1] == 0:
                raise RuntimeError(
                    "kernel of the zero-residual block is empty before reaching n zeros"
                )
            d = kernel[:, 0]
            step = _best_step(r[~zmask], A[~zmask] @ d)
            x = x + step * d
            r = A @ x - b
            zmask = _zero_mask(r, zero_tol)

        r_star = r[~zmask]
        if r_star.size == 0:
            converged = True  # interpolates every row; nothing left to improve
            break
        A_z = A[zmask]
        s = pinv(A_z.T) @ (A[~zmask].T @ np.sign(r_star))
        if norm_inf(s) <= 1.0:
            converged = True
            break
        u = (np.abs(s) > 1.0).astype(float)
        x = x + c * (pinv(A_z) @ u)

    elapsed = time.perf_counter() - t0
    return SolveReport(
        x=x,
        residual=A @ x - b,
        cost=cost1(problem, x),
        iterations=outer,
        runtime_s=elapsed,
        method="L1-PTB",
        converged=converged,
    )
