"""Empirical-likelihood engine for a sample of independent points.

The EL ratio at a hypothesized mean mu places probability weights
omega_k on the K observed rows and maximizes prod(K * omega_k) subject
to sum(omega_k (Y_k - mu)) = 0.  The maximum has the closed form
omega_k = 1 / (K (1 + lam'(Y_k - mu))) where the multiplier lam solves
the dual equation mean((Y_k - mu) / (1 + lam'(Y_k - mu))) = 0, and the
test statistic is -2 log R = 2 sum(log(1 + lam'(Y_k - mu))).

The dual is solved by damped Newton on the convex objective
g(lam) = -sum(log*(1 + lam'(Y_k - mu))), where log* is the logarithm
extended quadratically below 1/K so the objective is defined globally;
a final feasibility check (all arguments strictly positive, original
gradient below tolerance) restores the exact hull semantics that
nonnegative weights require.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.stats import chi2

from .errors import DegenerateColumn, NotInConvexHull, NumericalFailure

GRAD_TOL_SCALE = 1e-10
MAX_NEWTON_ITER = 50
MAX_HALVINGS = 40
BISECT_TOL_SCALE = 1e-10

FULL_VECTOR = "full"
COORDINATE = "coordinate"


@dataclass(frozen=True)
class ELResult:
    """Converged Lagrange solve: multiplier, weights and diagnostics.

    ``s_k`` is the centered second-moment matrix of the points (the
    solver's conditioning diagnostic) and ``z_k`` the largest centered
    row norm.
    """

    lam: np.ndarray
    omega: np.ndarray
    neg2logr: float
    s_k: np.ndarray
    z_k: float
    iterations: int
    converged: bool


@dataclass(frozen=True)
class TestResult:
    statistic: float
    df: int
    critical_value: float
    p_value: float
    reject: bool
    kind: str
    j: int | None = None
    level: float = 0.05


def as_points(points) -> np.ndarray:
    """Coerce EL points to a finite (K, p) float matrix."""
    Y = np.asarray(points, dtype=np.float64)
    if Y.ndim == 1:
        Y = Y[:, None]
    if Y.ndim != 2 or Y.shape[0] < 2:
        raise ValueError(f"need a (K>=2, p) matrix of points, got shape {Y.shape}")
    if not np.all(np.isfinite(Y)):
        raise ValueError("EL points contain non-finite entries")
    return Y


def _log_star(x: np.ndarray, k: int) -> np.ndarray:
    eps = 1.0 / k
    out = np.empty_like(x)
    low = x < eps
    out[~low] = np.log(x[~low])
    xl = x[low]
    out[low] = math.log(eps) - 1.5 + 2.0 * xl / eps - xl * xl / (2.0 * eps * eps)
    return out


def _log_star_d1(x: np.ndarray, k: int) -> np.ndarray:
    eps = 1.0 / k
    out = np.empty_like(x)
    low = x < eps
    out[~low] = 1.0 / x[~low]
    out[low] = 2.0 / eps - x[low] / (eps * eps)
    return out


def _log_star_d2(x: np.ndarray, k: int) -> np.ndarray:
    eps = 1.0 / k
    out = np.empty_like(x)
    low = x < eps
    out[~low] = -1.0 / np.square(x[~low])
    out[low] = -1.0 / (eps * eps)
    return out


def solve_el(points, mu, *, grad_tol_scale: float = GRAD_TOL_SCALE,
             max_iter: int = MAX_NEWTON_ITER, max_halvings: int = MAX_HALVINGS) -> ELResult:
    """Solve the Lagrange dual at ``mu`` and evaluate -2 log R.

    Raises NotInConvexHull when ``mu`` is outside (or on the boundary
    of) the convex hull of the rows: exactly for p = 1, and for p > 1
    when damped Newton cannot reach the gradient tolerance with all
    weight arguments positive within the iteration budget.
    """
    Y = as_points(points)
    K, p = Y.shape
    mu = np.asarray(mu, dtype=np.float64).ravel()
    if mu.shape[0] != p:
        raise ValueError(f"mu has length {mu.shape[0]}, expected {p}")
    if not np.all(np.isfinite(mu)):
        raise ValueError("mu contains non-finite entries")

    z = Y - mu
    if p == 1:
        lo, hi = Y.min(), Y.max()
        if mu[0] <= lo or mu[0] >= hi:
            raise NotInConvexHull(f"mu={mu[0]!r} outside ({lo!r}, {hi!r})")

    tol = grad_tol_scale * (1.0 + np.max(np.abs(mu)))

    # Convergence is judged on the original dual gradient (the
    # estimating equation itself), which is only meaningful inside
    # the hull where every weight argument is positive.
    def at_solution(arg: np.ndarray) -> bool:
        if not np.all(arg > 0.0):
            return False
        orig_grad = (z / arg[:, None]).mean(axis=0)
        return bool(np.max(np.abs(orig_grad)) < tol)
    lam = np.zeros(p)
    arg = 1.0 + z @ lam
    obj = -np.sum(_log_star(arg, K))
    iterations = 0
    converged = at_solution(arg)

    while not converged and iterations < max_iter:
        grad = -(z * _log_star_d1(arg, K)[:, None]).sum(axis=0)
        curv = -_log_star_d2(arg, K)
        hess = z.T @ (z * curv[:, None])
        try:
            step = np.linalg.solve(hess, -grad)
        except np.linalg.LinAlgError:
            step = np.linalg.lstsq(hess, -grad, rcond=None)[0]
        if not np.all(np.isfinite(step)):
            raise NumericalFailure("non-finite Newton step")

        t = 1.0
        moved = False
        for _ in range(max_halvings):
            cand = lam + t * step
            cand_arg = 1.0 + z @ cand
            cand_obj = -np.sum(_log_star(cand_arg, K))
            if not np.isfinite(cand_obj):
                raise NumericalFailure("non-finite dual objective")
            if cand_obj < obj:
                lam, arg, obj = cand, cand_arg, cand_obj
                moved = True
                break
            t *= 0.5
        if not moved:
            break  # no decrease available: stationary or stuck

        iterations += 1
        converged = at_solution(arg)

    if not (converged and np.all(arg > 0.0)):
        if p == 1:
            raise NumericalFailure(
                f"dual solve failed for interior 1-D mu after {iterations} iterations")
        raise NotInConvexHull(
            f"damped Newton did not certify mu inside the hull in {iterations} iterations")

    omega = 1.0 / (K * arg)
    neg2logr = float(2.0 * np.sum(np.log(arg)))
    s_k = z.T @ z / K
    z_k = float(np.sqrt(np.square(z).sum(axis=1)).max())
    return ELResult(
        lam=lam,
        omega=omega,
        neg2logr=max(neg2logr, 0.0),
        s_k=s_k,
        z_k=z_k,
        iterations=iterations,
        converged=True,
    )


def _test_from_statistic(statistic: float, df: int, level: float,
                         kind: str, j: int | None) -> TestResult:
    critical = float(chi2.ppf(1.0 - level, df))
    if math.isinf(statistic):
        p_value = 0.0
    else:
        p_value = float(chi2.sf(statistic, df))
    return TestResult(
        statistic=statistic,
        df=df,
        critical_value=critical,
        p_value=p_value,
        reject=bool(statistic > critical),
        kind=kind,
        j=j,
        level=level,
    )


def el_test_full(points, mu0, level: float = 0.05) -> TestResult:
    """Full-vector Wilks test of the p-dimensional mean.

    A hull violation is certain rejection: the statistic is reported as
    +inf with p-value 0.
    """
    Y = as_points(points)
    K, p = Y.shape
    if K < p + 1:
        raise ValueError(f"full-vector inference needs K >= p + 1, got K={K}, p={p}")
    if not 0.0 < level < 1.0:
        raise ValueError("level must lie in (0, 1)")
    try:
        statistic = solve_el(Y, mu0).neg2logr
    except NotInConvexHull:
        statistic = math.inf
    return _test_from_statistic(statistic, p, level, FULL_VECTOR, None)


def el_test_coordinate(points, j: int, c0: float, level: float = 0.05) -> TestResult:
    """Marginal Wilks test of coordinate ``j`` (0-based) at value ``c0``.

    Applies the 1-D EL to the j-th coordinate projection of the points;
    the projection of independent rows is itself a valid EL sample.
    """
    Y = as_points(points)
    if not 0 <= j < Y.shape[1]:
        raise ValueError(f"coordinate {j} out of range for p={Y.shape[1]}")
    if not 0.0 < level < 1.0:
        raise ValueError("level must lie in (0, 1)")
    try:
        statistic = solve_el(Y[:, j], [c0]).neg2logr
    except NotInConvexHull:
        statistic = math.inf
    return _test_from_statistic(statistic, 1, level, COORDINATE, j)


def _coordinate_statistic(col: np.ndarray, c: float) -> float:
    try:
        return solve_el(col, [c]).neg2logr
    except NotInConvexHull:
        return math.inf


def el_confidence_interval(points, j: int, level: float = 0.05,
                           *, tol_scale: float = BISECT_TOL_SCALE) -> tuple[float, float]:
    """Invert the marginal profile into a confidence interval.

    Returns {c : statistic_j(c) <= chi2_{1, 1-level}}.  The statistic is
    0 at the column mean and increases to +inf toward each hull
    endpoint, so each endpoint is found by bisection on its side of the
    mean, stopping when the bracket is narrower than
    ``tol_scale * (1 + |mean|)``.
    """
    Y = as_points(points)
    if not 0 <= j < Y.shape[1]:
        raise ValueError(f"coordinate {j} out of range for p={Y.shape[1]}")
    col = Y[:, j].copy()
    lo, hi = float(col.min()), float(col.max())
    if lo == hi:
        raise DegenerateColumn(f"coordinate {j} is constant at {lo!r}")
    mean = float(col.mean())
    critical = float(chi2.ppf(1.0 - level, 1))
    tol = tol_scale * (1.0 + abs(mean))

    def crossing(inside: float, outside: float) -> float:
        # invariant: statistic(inside) <= critical < statistic(outside)
        while abs(outside - inside) >= tol:
            mid = 0.5 * (inside + outside)
            if _coordinate_statistic(col, mid) > critical:
                outside = mid
            else:
                inside = mid
        return 0.5 * (inside + outside)

    return crossing(mean, lo), crossing(mean, hi)


def neg2logr_profile(points, j: int, grid) -> list[tuple[float, float]]:
    """Marginal statistic along a grid; +inf marks hull violations."""
    Y = as_points(points)
    if not 0 <= j < Y.shape[1]:
        raise ValueError(f"coordinate {j} out of range for p={Y.shape[1]}")
    col = Y[:, j].copy()
    out = []
    for c in grid:
        c = float(c)
        if not math.isfinite(c):
            raise ValueError("profile grid must be finite")
        out.append((c, _coordinate_statistic(col, c)))
    return out
