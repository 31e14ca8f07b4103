"""Solvers for the minimum-l1 residual problem  min ||r||_1  s.t.  D r = w.

Seven interchangeable routines are provided: an exact linear-programming
solver and six iterative methods (gradient projection, truncated-Newton
interior point, homotopy path following, iterative shrinkage, alternating
directions, and a proximity-operator scheme).  ``fit_via_residual`` wires
any of them into the reduce -> solve -> recover pipeline.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_triangular

from .linalg import norm1, norm2, norm_inf, pcg, soft
from .reduction import MlmProblem, ReducedSystem, SolveReport, cost1, recover, reduce_problem
from .simplex import OPTIMAL, LpStandardForm, lp_solve

__all__ = [
    "SolverParams",
    "ResidualSolution",
    "residual_linprog",
    "residual_gpsr",
    "residual_tnipm",
    "residual_homotopy",
    "residual_ist",
    "residual_adm",
    "residual_pob",
    "fit_via_residual",
    "RESIDUAL_METHODS",
    "RESIDUAL_LABELS",
]

_ALPHA_MIN = 1e-30
_ALPHA_MAX = 1e30

# continuation grid for the quadratic-relaxation solvers: start a tenth of
# the level at which the zero vector is optimal, halve per level (gentle
# enough that warm starts keep every level cheap)
_LEVEL_START = 0.1
_LEVEL_FACTOR = 0.5
# stationarity target relative to each level's penalty weight; it must be
# tight at every level because the l1 value drifts by (slack / penalty)
# along the constraint kernel and later, smaller levels move too slowly to
# repair slop inherited from earlier ones
_LEVEL_TOL = 1e-4
# a level is abandoned when its stationarity residual stops improving for
# this many iterations (the working precision floor has been reached); the
# iterate then rewinds to the best point the level saw
_LEVEL_STALL = 500
_LEVEL_IMPROVE = 1.0 - 1e-4
# working norm of the rescaled right-hand side in the proximity scheme
_POB_W_NORM = 500.0


@dataclass(frozen=True)
class SolverParams:
    """Shared knobs for the iterative solvers.

    epsilon  stopping / constraint tolerance (also the homotopy's terminal
             regularization level)
    lam      penalty weight of the quadratic relaxation solved by the
             gradient-projection, interior-point and shrinkage methods
    maxiter  iteration cap; solvers report converged=False when they hit it
    tau, mu  proximity-operator parameters; mu=None derives the default
             0.999 * tau / ||D||_2^2 (the alternating-directions method
             instead defaults mu to mean|w_i|)
    zeta     alternating-directions relaxation factor
    zero_tol residual-zero classification threshold
    adm_refresh_alpha  recompute the alternating-directions step size each
             iteration instead of once up front (experimentation flag)
    """

    epsilon: float = 1e-8
    lam: float = 1e-8
    maxiter: int = 10000
    tau: float = 0.02
    mu: float | None = None
    zeta: float = 1.618
    zero_tol: float = 1e-8
    adm_refresh_alpha: bool = False

    def __post_init__(self):
        if not self.epsilon >= 0:
            raise ValueError("epsilon must be nonnegative")
        if not self.lam >= 0:
            raise ValueError("lam must be nonnegative")
        if not self.maxiter >= 1:
            raise ValueError("maxiter must be at least 1")
        if not self.tau > 0:
            raise ValueError("tau must be positive")
        if self.mu is not None and not self.mu > 0:
            raise ValueError("mu must be positive when given")
        if not self.zeta > 0:
            raise ValueError("zeta must be positive")
        if not self.zero_tol >= 0:
            raise ValueError("zero_tol must be nonnegative")


@dataclass(frozen=True)
class ResidualSolution:
    r: np.ndarray
    iterations: int
    converged: bool
    objective: float


def _check_dw(D, w):
    D = np.asarray(D, dtype=float)
    w = np.asarray(w, dtype=float)
    if D.ndim != 2 or w.ndim != 1 or D.shape[0] != w.size:
        raise ValueError(f"constraint shapes do not match: D {D.shape}, w {w.shape}")
    return D, w


def _row_orthonormalize(D, w):
    """Equivalent constraint pair with orthonormal rows (D D^T = I).

    The constraint set {r : D r = w} is unchanged; first-order and
    alternating-direction iterations behave far better when the row Gram
    matrix is the identity (the published step-size recipes assume it).
    """
    L = np.linalg.cholesky(D @ D.T)
    return solve_triangular(L, D, lower=True), solve_triangular(L, w, lower=True)


def _lambda_levels(D, w, lam_target):
    """Geometric penalty schedule from 0.1 * ||D^T w||_inf down to the target."""
    levels = []
    lam = _LEVEL_START * norm_inf(D.T @ w)
    while lam > lam_target:
        levels.append(lam)
        lam *= _LEVEL_FACTOR
    levels.append(lam_target)
    return levels


def _qp_stationarity(r, grad, lam, support_tol):
    """Max violation of the penalized problem's optimality conditions.

    ``grad`` is D^T(D r - w); optimality requires grad_i = -lam * sign(r_i)
    where r_i is nonzero and |grad_i| <= lam elsewhere.
    """
    on = np.abs(r) > support_tol
    worst = 0.0
    if np.any(on):
        worst = float(np.max(np.abs(grad[on] + lam * np.sign(r[on]))))
    if not np.all(on):
        worst = max(worst, max(float(np.max(np.abs(grad[~on]))) - lam, 0.0))
    return worst


def _restore_feasibility(r, D, w):
    """l2-minimal correction onto {r : D r = w} for orthonormal-row D."""
    return r - D.T @ (D @ r - w)


class _LevelTracker:
    """Per-level stop logic: target reached, or residual stopped improving."""

    def __init__(self, lam, patient):
        self.lam = lam
        # the first level (cold start) and the last (the answer) get
        # unlimited patience (the budget still caps them); a middle level
        # that plateaus is abandoned so it cannot starve the schedule
        self.target = _LEVEL_TOL * lam
        self.stall_limit = np.inf if patient else _LEVEL_STALL
        self.best = np.inf
        self.stalled = 0
        self.reached = False
        self.improved = False

    def done(self, stat):
        if stat <= self.target:
            self.reached = True
            return True
        if stat < _LEVEL_IMPROVE * self.best:
            self.best = stat
            self.stalled = 0
            self.improved = True
        else:
            self.stalled += 1
            self.improved = False
        return self.stalled >= self.stall_limit


def residual_linprog(D, w, params: SolverParams | None = None) -> ResidualSolution:
    """Exact minimum-l1 residual at a linear-programming vertex.

    Splits r into positive and negative parts and solves
    min 1^T beta  s.t.  [D, -D] beta = w, beta >= 0.
    """
    D, w = _check_dw(D, w)
    m = D.shape[1]
    lp = LpStandardForm(
        cost=np.ones(2 * m),
        eq_matrix=np.hstack([D, -D]),
        eq_rhs=w,
    )
    sol = lp_solve(lp)
    if sol.status != OPTIMAL:
        raise RuntimeError(
            f"linear program for the residual system came back {sol.status}; "
            "the reduced system should always be consistent"
        )
    r = sol.point[:m] - sol.point[m:]
    return ResidualSolution(r=r, iterations=sol.iterations, converged=True, objective=norm1(r))


def residual_gpsr(D, w, params: SolverParams | None = None) -> ResidualSolution:
    """Gradient projection on the split-variable quadratic program.

    The split iteration (projected Barzilai-Borwein steps with an exact
    line search, step lengths clipped to [1e-30, 1e30]) runs on the
    row-orthonormalized system inside a warm-started continuation over the
    penalty weight; each level is left once the stationarity residual drops
    below _LEVEL_TOL times the level, the last level being ``lam``.
    """
    p = params or SolverParams()
    if not p.lam > 0:
        raise ValueError("gradient projection requires lam > 0")
    D, w = _check_dw(D, w)
    D, w = _row_orthonormalize(D, w)
    m = D.shape[1]

    alpha = 1.0
    r = np.zeros(m)
    u = np.zeros(m)
    v = np.zeros(m)
    Dr = D @ r
    levels = _lambda_levels(D, w, p.lam)
    it = 0
    converged = False
    with np.errstate(over="ignore", invalid="ignore"):
        for depth, lam in enumerate(levels):
            final = depth == len(levels) - 1
            alpha = 1.0  # stale step estimates from the previous level stall
            tracker = _LevelTracker(lam, final or depth == 0)
            snapshot = (r.copy(), u.copy(), v.copy(), Dr.copy(), alpha)
            out_of_budget = False
            stalled_out = False
            while True:
                grad0 = D.T @ (Dr - w)
                stop = tracker.done(_qp_stationarity(r, grad0, lam, 1e-12 * (1.0 + norm2(r))))
                if tracker.improved:
                    snapshot = (r.copy(), u.copy(), v.copy(), Dr.copy(), alpha)
                if stop:
                    stalled_out = not tracker.reached
                    break
                if it >= p.maxiter:
                    out_of_budget = True
                    break
                it += 1
                grad_u = grad0 + lam
                grad_v = -grad_u + 2.0 * lam
                du = np.maximum(u - alpha * grad_u, 0.0) - u
                dv = np.maximum(v - alpha * grad_v, 0.0) - v
                dr = du - dv
                Ddr = D @ dr
                gamma = float(Ddr @ Ddr)
                if np.isfinite(gamma) and gamma > 0.0:
                    beta = min(-(float(grad_u @ du) + float(grad_v @ dv)) / gamma, 1.0)
                elif gamma <= 0.0:
                    beta = 1.0
                else:  # gamma overflowed; the line search rejects the step
                    beta = 0.0
                u_new = u + beta * du
                v_new = v + beta * dv
                shift = np.minimum(u_new, v_new)
                u = u_new - shift
                v = v_new - shift
                r = u - v
                delta = float(du @ du) + float(dv @ dv)
                if gamma <= 0.0:
                    alpha = _ALPHA_MAX
                elif np.isfinite(delta / gamma):
                    alpha = min(_ALPHA_MAX, max(_ALPHA_MIN, delta / gamma))
                Dr = Dr + beta * Ddr
            if stalled_out or out_of_budget:
                r, u, v, Dr, alpha = snapshot  # keep the best point this level saw
            if out_of_budget:
                break
            if final:
                converged = tracker.reached
    r = _restore_feasibility(r, D, w)
    return ResidualSolution(r=r, iterations=it, converged=converged, objective=norm1(r))


def residual_tnipm(D, w, params: SolverParams | None = None) -> ResidualSolution:
    """Truncated-Newton primal interior-point method with PCG directions.

    The Newton system for the log-barrier formulation is solved by
    preconditioned conjugate gradients on the row-orthonormalized system
    (which keeps the Newton systems well conditioned); the duality gap is
    tested relative to the dual objective (only once that is positive).
    When backtracking stalls or the accepted step stops moving the point,
    the best iterate seen is returned with converged=False.
    """
    p = params or SolverParams()
    if not p.lam > 0:
        raise ValueError("interior-point method requires lam > 0")
    D, w = _check_dw(D, w)
    D, w = _row_orthonormalize(D, w)
    m = D.shape[1]

    mu_t, ls_alpha, ls_beta = 2.0, 0.01, 0.5
    r = np.zeros(m)
    u = np.ones(m)
    f = np.concatenate([u - r, u + r])
    df = np.zeros(2 * m)
    step = np.inf
    dobj = -np.inf
    t = min(max(1.0, 1.0 / p.lam), 2.0 * m / p.epsilon)
    DtD = D.T @ D

    best_r = r.copy()
    best_pobj = np.inf
    it = 0
    converged = False
    while it < p.maxiter:
        it += 1
        z = D @ r - w
        nu = z.copy()
        dual_scale = norm_inf(D.T @ nu)
        if dual_scale > p.lam:
            nu *= p.lam / dual_scale
        pobj = 0.5 * float(z @ z) + p.lam * norm1(r)
        dobj = max(-0.5 * float(nu @ nu) - float(nu @ w), dobj)
        if pobj < best_pobj:
            best_pobj = pobj
            best_r = r.copy()
        eta = pobj - dobj
        if eta <= 0.0 or (dobj > 0.0 and eta / dobj < p.epsilon):
            converged = True  # a vanishing gap is exact optimality
            break
        if step >= 0.5:
            t = max(mu_t * min(2.0 * m / eta, t), t)

        q1 = 1.0 / (u + r)
        q2 = 1.0 / (u - r)
        grad = np.concatenate([D.T @ z - (q1 - q2) / t, p.lam - (q1 + q2) / t])
        b1 = (q1 * q1 + q2 * q2) / t
        b2 = (q1 * q1 - q2 * q2) / t

        # the Hessian [[D^T D + diag(b1), diag(b2)], [diag(b2), diag(b1)]]
        # and the preconditioner (D^T D replaced by I) are applied blockwise
        def apply_h(v):
            top, bot = v[:m], v[m:]
            return np.concatenate([DtD @ top + b1 * top + b2 * bot, b2 * top + b1 * bot])

        det = (1.0 + b1) * b1 - b2 * b2

        def apply_prec(v):
            top, bot = v[:m], v[m:]
            return np.concatenate([(b1 * top - b2 * bot) / det, ((1.0 + b1) * bot - b2 * top) / det])

        cg_tol = min(0.1, p.epsilon * eta / min(1.0, norm2(grad)))
        df = pcg(apply_h, -grad, apply_prec, df, cg_tol, maxiter=2 * m)
        dr = df[:m]
        du = df[m:]

        fval = 0.5 * float(z @ z) + p.lam * float(np.sum(u)) - float(np.sum(np.log(f))) / t
        gtd = float(grad @ df)
        step = 1.0
        ok = False
        for _ in range(100):
            r_new = r + step * dr
            u_new = u + step * du
            f_new = np.concatenate([u_new - r_new, u_new + r_new])
            if np.min(f_new) > 0.0:
                z_new = D @ r_new - w
                f_cand = (
                    0.5 * float(z_new @ z_new)
                    + p.lam * float(np.sum(u_new))
                    - float(np.sum(np.log(f_new))) / t
                )
                if f_cand - fval <= ls_alpha * step * gtd:
                    ok = True
                    break
            step *= ls_beta
        if not ok:
            break
        if step * norm2(df) <= 1e-14 * (1.0 + norm2(r) + norm2(u)):
            break  # accepted step moves nothing; numerical floor reached
        r, u, f = r_new, u_new, f_new

    out = r if converged else best_r
    return ResidualSolution(r=out, iterations=it, converged=converged, objective=norm1(out))


def _homotopy_step(support, r_k, v, pvec, dk, level, m):
    """Smallest positive step changing the support, per the path rules.

    Returns (delta, entering index, leaving index, removing?) where unused
    indices are -1.  ``level`` is the current regularization level.
    """
    mask = np.ones(m, dtype=bool)
    mask[support] = False
    comp = np.flatnonzero(mask)

    delta_add = np.inf
    i_add = -1
    if comp.size:
        with np.errstate(divide="ignore", invalid="ignore"):
            cand1 = (level - pvec[comp]) / (1.0 + dk[comp])
            cand2 = (level + pvec[comp]) / (1.0 - dk[comp])
        pos1 = np.flatnonzero(cand1 > 0.0)
        pos2 = np.flatnonzero(cand2 > 0.0)
        d1 = np.inf
        d2 = np.inf
        if pos1.size:
            k1 = pos1[int(np.argmin(cand1[pos1]))]
            d1 = float(cand1[k1])
        if pos2.size:
            k2 = pos2[int(np.argmin(cand2[pos2]))]
            d2 = float(cand2[k2])
        if d1 > d2:
            delta_add, i_add = d2, int(comp[k2])
        elif np.isfinite(d1):
            delta_add, i_add = d1, int(comp[k1])

    with np.errstate(divide="ignore", invalid="ignore"):
        cand3 = -r_k[support] / v[support]
    pos3 = np.flatnonzero(cand3 > 0.0)
    if pos3.size:
        k3 = pos3[int(np.argmin(cand3[pos3]))]
        d3 = float(cand3[k3])
        if d3 <= delta_add:
            return d3, -1, int(support[k3]), True
    return delta_add, i_add, -1, False


def residual_homotopy(D, w, params: SolverParams | None = None, support_trace=None):
    """Follow the regularization path from ||D^T w||_inf down to epsilon.

    Maintains the active support and its Gram matrix, re-solving the small
    direction system densely at each breakpoint.  ``support_trace`` (a list,
    if given) records the support size at every step.
    """
    p = params or SolverParams()
    D, w = _check_dw(D, w)
    m = D.shape[1]
    lam = p.epsilon  # terminal level of the path

    r = np.zeros(m)
    pvec = -(D.T @ w)
    pmax = norm_inf(pvec)
    if pmax <= lam:
        return ResidualSolution(r=r, iterations=0, converged=True, objective=0.0)

    xi = np.flatnonzero(np.abs(pvec) == pmax)
    z = np.zeros(m)
    z[xi] = -np.sign(pvec[xi])
    pvec[xi] = pmax * np.sign(pvec[xi])
    B = D[:, xi].T @ D[:, xi]

    it = 0
    converged = False
    while it < p.maxiter:
        it += 1
        if support_trace is not None:
            support_trace.append(int(xi.size))
        gamma = xi
        v = np.zeros(m)
        try:
            v[gamma] = np.linalg.solve(B, z[gamma])
        except np.linalg.LinAlgError as exc:
            raise RuntimeError(
                f"degenerate support system for indices {sorted(int(i) for i in gamma)}"
            ) from exc
        dk = D.T @ (D @ v)
        delta, i_add, i_del, removing = _homotopy_step(gamma, r, v, pvec, dk, pmax, m)

        if pmax - delta <= lam:
            r = r + (pmax - lam) * v
            converged = True
            break
        r = r + delta * v
        pvec = pvec + delta * dk
        pmax = pmax - delta

        if removing:
            pos = int(np.flatnonzero(gamma == i_del)[0])
            xi = np.delete(gamma, pos)
            B = np.delete(np.delete(B, pos, axis=0), pos, axis=1)
            r[i_del] = 0.0
            pin = gamma  # the leaving index stays pinned this once
        else:
            cvec = D[:, gamma].T @ D[:, i_add]
            dd = float(D[:, i_add] @ D[:, i_add])
            B = np.block([[B, cvec[:, None]], [cvec[None, :], np.array([[dd]])]])
            r[i_add] = 0.0
            xi = np.append(gamma, i_add)
            pin = xi
        z = np.zeros(m)
        z[xi] = -np.sign(pvec[xi])
        pvec[pin] = pmax * np.sign(pvec[pin])

    return ResidualSolution(r=r, iterations=it, converged=converged, objective=norm1(r))


def residual_ist(D, w, params: SolverParams | None = None) -> ResidualSolution:
    """Iterative shrinkage-thresholding with Barzilai-Borwein curvature.

    Same continuation scheme as the gradient-projection solver; within a
    level each shrinkage step must not increase the penalized objective
    (the curvature estimate is doubled until it does not), which keeps the
    non-monotone Barzilai-Borwein choice from blowing up.
    """
    p = params or SolverParams()
    if not p.lam > 0:
        raise ValueError("iterative shrinkage requires lam > 0")
    D, w = _check_dw(D, w)
    D, w = _row_orthonormalize(D, w)
    m = D.shape[1]

    r = np.zeros(m)
    s = D @ r - w
    alpha = 1.0
    levels = _lambda_levels(D, w, p.lam)
    it = 0
    converged = False
    for depth, lam in enumerate(levels):
        final = depth == len(levels) - 1
        f = 0.5 * float(s @ s) + lam * norm1(r)
        tracker = _LevelTracker(lam, final or depth == 0)
        snapshot = (r.copy(), s.copy(), alpha)
        out_of_budget = False
        stalled_out = False
        while True:
            grad = D.T @ s
            stop = tracker.done(_qp_stationarity(r, grad, lam, 0.0))
            if tracker.improved:
                snapshot = (r.copy(), s.copy(), alpha)
            if stop:
                stalled_out = not tracker.reached
                break
            if it >= p.maxiter:
                out_of_budget = True
                break
            it += 1
            r_prev, f_prev, s_prev = r, f, s
            for _ in range(200):
                r = soft(r_prev - grad / alpha, lam / alpha)
                dr = r - r_prev
                z = D @ dr
                s = s_prev + z
                f = 0.5 * float(s @ s) + lam * norm1(r)
                if f <= f_prev + 1e-12 * abs(f_prev):
                    break
                alpha = min(2.0 * alpha, _ALPHA_MAX)
            delta = float(dr @ dr)
            gamma = float(z @ z)
            if delta > 0.0 and gamma > 0.0:
                alpha = min(_ALPHA_MAX, max(_ALPHA_MIN, gamma / delta))
        if stalled_out or out_of_budget:
            r, s, alpha = snapshot
            f = 0.5 * float(s @ s) + lam * norm1(r)
        if out_of_budget:
            break
        if final:
            converged = tracker.reached
    r = _restore_feasibility(r, D, w)
    return ResidualSolution(r=r, iterations=it, converged=converged, objective=norm1(r))


def residual_adm(D, w, params: SolverParams | None = None) -> ResidualSolution:
    """Alternating-directions method on the dual of the residual problem.

    Runs on the row-orthonormalized system, where its single dual gradient
    step is the exact subproblem minimizer (the published step-size formula
    evaluates to 1 there) and the 1.618 relaxation factor is inside its
    convergence range.  Penalty mu defaults to mean|w_i|; the step size is
    computed once before the loop (set ``adm_refresh_alpha`` to recompute it
    each iteration); the stopping ratio uses the original pair (D, w) and the
    returned point gets an l2-minimal feasibility restoration.  A zero w is
    answered immediately with r = 0, which is exactly optimal.
    """
    p = params or SolverParams()
    D0, w0 = _check_dw(D, w)
    wnorm0 = norm2(w0)
    mn, m = D0.shape
    if wnorm0 == 0.0:
        return ResidualSolution(r=np.zeros(m), iterations=0, converged=True, objective=0.0)
    D, w = _row_orthonormalize(D0, w0)
    mu = p.mu if p.mu is not None else float(np.mean(np.abs(w)))

    r = D.T @ w
    z = np.zeros(m)
    y = np.zeros(mn)
    g = np.zeros(m)

    def step_size(s):
        Dts = D.T @ s
        den = float(Dts @ Dts)
        return float(s @ s) / den if den > 0.0 else 1.0

    alpha = step_size(D @ (g - z + r / mu) - w / mu)
    it = 0
    converged = False
    while it < p.maxiter:
        it += 1
        s = D @ (g - z + r / mu) - w / mu
        if p.adm_refresh_alpha:
            alpha = step_size(s)
        y = y - alpha * s
        g = D.T @ y
        z = np.clip(g + r / mu, -1.0, 1.0)
        dr = p.zeta * mu * (g - z)
        r = r + dr
        # feasibility alone can be reached while the multiplier is still
        # moving; also require the update itself to have settled
        if norm2(D0 @ r - w0) <= p.epsilon * wnorm0 and norm2(dr) <= p.epsilon * (1.0 + norm2(r)):
            converged = True
            break
    r = _restore_feasibility(r, D, w)
    return ResidualSolution(r=r, iterations=it, converged=converged, objective=norm1(r))


def residual_pob(D, w, params: SolverParams | None = None) -> ResidualSolution:
    """Proximity-operator scheme: shrinkage step plus a ball projection.

    Requires tau > mu * ||D||_2^2 > 0; by default mu = 0.999 tau / ||D||_2^2.
    The iteration runs on the row-orthonormalized system with w rescaled to
    a fixed working norm (the solution is scaled back afterwards; the
    problem is positively homogeneous), which puts the data on the scale
    the fixed shrinkage threshold 1/tau was tuned for.  The 1e-6 relative
    internal stop only counts once the original constraint is met to
    max(epsilon, 1e-6 * (1 + ||w||_2)); the returned point gets an
    l2-minimal feasibility restoration; a zero w returns r = 0 directly.
    """
    p = params or SolverParams()
    D0, w0 = _check_dw(D, w)
    mn, m = D0.shape
    wnorm0 = norm2(w0)
    if mn == 0 or wnorm0 == 0.0:
        return ResidualSolution(r=np.zeros(m), iterations=0, converged=True, objective=0.0)
    D, w = _row_orthonormalize(D0, w0)
    scale = _POB_W_NORM / norm2(w)
    w = scale * w
    nd2 = 1.0  # rows are orthonormal
    mu = p.mu if p.mu is not None else 0.999 * p.tau / nd2
    if not p.tau > mu * nd2 > 0.0:
        raise ValueError(
            f"need tau > mu * ||D||_2^2 > 0, got tau={p.tau}, mu*||D||^2={mu * nd2}"
        )
    feas_gate = max(p.epsilon, 1e-6 * (1.0 + wnorm0))

    y = np.zeros(mn)
    r = np.zeros(m)
    zdual = y - (D @ r - w)
    it = 0
    converged = False
    while it < p.maxiter:
        it += 1
        s = r
        r = soft(s - (mu / p.tau) * (D.T @ (2.0 * y - zdual)), 1.0 / p.tau)
        ns = norm2(s)
        if ns > 0.0 and norm2(r - s) < 1e-6 * ns and norm2(D0 @ (r / scale) - w0) <= feas_gate:
            converged = True
            break
        zdual = y
        t = D @ r + zdual - w
        nt = norm2(t)
        if nt <= p.epsilon:
            y = np.zeros(mn)
        else:
            y = (1.0 - p.epsilon / nt) * t
    r = _restore_feasibility(r, D, w) / scale
    return ResidualSolution(r=r, iterations=it, converged=converged, objective=norm1(r))


RESIDUAL_METHODS = {
    "linprog": residual_linprog,
    "gpsr": residual_gpsr,
    "tnipm": residual_tnipm,
    "homotopy": residual_homotopy,
    "ist": residual_ist,
    "adm": residual_adm,
    "pob": residual_pob,
}

RESIDUAL_LABELS = {
    "linprog": "L1-RES",
    "gpsr": "L1-GPSR",
    "tnipm": "L1-TNIPM",
    "homotopy": "L1-HP",
    "ist": "L1-IST",
    "adm": "L1-ADM",
    "pob": "L1-POB",
}


def fit_via_residual(
    problem: MlmProblem,
    method: str = "linprog",
    params: SolverParams | None = None,
    reduced: ReducedSystem | None = None,
) -> SolveReport:
    """Solve min ||A x - b||_1 by the reduce -> solve -> recover pipeline.

    ``method`` picks the residual solver; a precomputed ``reduced`` system
    may be passed to amortize the reduction over several solves.
    """
    if method not in RESIDUAL_METHODS:
        raise ValueError(
            f"unknown residual method {method!r}; valid names: "
            + ", ".join(sorted(RESIDUAL_METHODS))
        )
    params = params or SolverParams()
    t0 = time.perf_counter()
    rs = reduced if reduced is not None else reduce_problem(problem)
    if rs.D.shape[0] == 0:
        # square consistent system: no constraints remain and r = 0 is optimal
        res = ResidualSolution(r=np.zeros(problem.m), iterations=0, converged=True, objective=0.0)
    else:
        res = RESIDUAL_METHODS[method](rs.D, rs.w, params)
    x = recover(problem, rs, res.r)
    elapsed = time.perf_counter() - t0
    return SolveReport(
        x=x,
        residual=res.r,
        cost=cost1(problem, x),
        iterations=res.iterations,
        runtime_s=elapsed,
        method=RESIDUAL_LABELS[method],
        converged=res.converged,
    )
