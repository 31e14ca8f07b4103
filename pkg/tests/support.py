"""Shared helpers: independent brute-force oracles and instance factories."""

import itertools

import numpy as np

from l1fit import MlmProblem


def bp_enumerate(D, w, singular_tol=1e-10):
    """Exact min ||r||_1 s.t. D r = w by enumerating basic solutions.

    Independent of the solvers under test: every subset of k = rows(D)
    columns with a nonsingular square block yields one candidate vertex.
    Only valid for small systems.
    """
    D = np.asarray(D, dtype=float)
    w = np.asarray(w, dtype=float)
    k, m = D.shape
    best = None
    best_cost = np.inf
    for cols in itertools.combinations(range(m), k):
        sub = D[:, cols]
        if abs(np.linalg.det(sub)) <= singular_tol:
            continue
        r = np.zeros(m)
        r[list(cols)] = np.linalg.solve(sub, w)
        cost = float(np.sum(np.abs(r)))
        if cost < best_cost:
            best_cost = cost
            best = r
    assert best is not None, "every candidate basis was singular"
    return best, best_cost


def random_problem(rng, m, n):
    """Gaussian instance with a generic (inconsistent) right-hand side."""
    return MlmProblem(rng.standard_normal((m, n)), rng.standard_normal(m))
