"""Exact brute-force minimizer of ||A x - b||_1 for small instances.

Some optimal solution interpolates n of the m rows (for generic data,
exactly n), so enumerating all nonsingular n-row subsets and solving each
square system exactly yields the global minimum.  This is the ground truth
the solver tests compare against.
"""

from __future__ import annotations

import itertools
import time

import numpy as np

from .linalg import norm1
from .reduction import MlmProblem, SolveReport

__all__ = ["oracle_solve"]

_DET_RTOL = 1e-12


def oracle_solve(problem: MlmProblem, max_m: int = 14, max_n: int = 4) -> SolveReport:
    """Enumerate every n-row subset; return the interpolant of least l1 cost.

    Subsets whose determinant is below 1e-12 times the Hadamard bound are
    skipped as singular.  Cost ties keep the lexicographically smallest
    subset.  Guarded to m <= max_m, n <= max_n.
    """
    m, n = problem.m, problem.n
    if m > max_m or n > max_n:
        raise ValueError(
            f"instance {m}x{n} exceeds the exhaustive-search guard ({max_m}x{max_n})"
        )
    A, b = problem.A, problem.b
    t0 = time.perf_counter()

    best_x = None
    best_cost = np.inf
    evaluated = 0
    for subset in itertools.combinations(range(m), n):
        rows = list(subset)
        sub = A[rows]
        scale = float(np.prod(np.linalg.norm(sub, axis=1)))
        if abs(float(np.linalg.det(sub))) <= _DET_RTOL * scale:
            continue
        evaluated += 1
        x = np.linalg.solve(sub, b[rows])
        cost = norm1(A @ x - b)
        if cost < best_cost:
            best_cost = cost
            best_x = x
    if best_x is None:
        raise RuntimeError("every n-row subset is numerically singular")

    elapsed = time.perf_counter() - t0
    return SolveReport(
        x=best_x,
        residual=A @ best_x - b,
        cost=best_cost,
        iterations=evaluated,
        runtime_s=elapsed,
        method="ORACLE",
        converged=True,
    )
