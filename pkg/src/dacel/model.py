"""Weighted parametric estimators applied per block and per resample.

Each fit accepts optional nonnegative observation weights so the same
code serves the divide-and-conquer blocks (unweighted) and the
multinomial-weighted bootstrap resamples.  All functions are pure and
safe to call concurrently on shared read-only data.
"""
from __future__ import annotations

import numpy as np
from scipy.special import expit

from .data import Dataset, ModelKind, check_weights
from .errors import (
    ConstantColumn,
    EmptyData,
    OneClassOnly,
    Separation,
    SingularDesign,
)

LOGISTIC_TOL = 1e-8
LOGISTIC_MAX_ITER = 25
LOGISTIC_BETA_CAP = 1e3


def _require_kind(data: Dataset, kind: ModelKind, op: str) -> None:
    if data.model_kind is not kind:
        raise ValueError(f"{op} requires a {kind.value} dataset, got {data.model_kind.value}")


def fit_mean(data: Dataset, weights=None) -> np.ndarray:
    """Weighted column mean of the covariate matrix."""
    _require_kind(data, ModelKind.MEAN, "fit_mean")
    if data.X.shape[0] == 0:
        raise EmptyData("no observations")
    if weights is None:
        return data.X.mean(axis=0)
    w = check_weights(weights, data.n)
    return (w @ data.X) / w.sum()


def fit_ols(data: Dataset, weights=None) -> np.ndarray:
    """Weighted least squares solved by orthogonal factorization.

    Minimizes sum_i w_i (y_i - x_i' beta)^2 through `lstsq` on
    sqrt(w)-scaled rows, which avoids forming the Gram matrix
    explicitly.  Raises SingularDesign when the effective rank of the
    weighted design falls below q at the machine-epsilon-scaled
    threshold.
    """
    _require_kind(data, ModelKind.LINEAR, "fit_ols")
    X, y = data.X, data.y
    if weights is not None:
        w = check_weights(weights, data.n)
        sw = np.sqrt(w)
        X = X * sw[:, None]
        y = y * sw
    rcond = np.finfo(np.float64).eps * max(X.shape)
    beta, _, rank, _ = np.linalg.lstsq(X, y, rcond=rcond)
    if rank < X.shape[1]:
        raise SingularDesign(f"weighted design has rank {rank} < {X.shape[1]}")
    return beta


def fit_logistic(
    data: Dataset,
    weights=None,
    *,
    tol: float = LOGISTIC_TOL,
    max_iter: int = LOGISTIC_MAX_ITER,
    beta_cap: float = LOGISTIC_BETA_CAP,
) -> np.ndarray:
    """Weighted logistic MLE via iteratively reweighted least squares.

    Newton updates beta += (X' W X)^{-1} X' (w * (y - pi)) with
    W = diag(w_i pi_i (1 - pi_i)) from beta = 0, declaring convergence
    when max|delta beta| < `tol`.  A sup-norm above `beta_cap` during
    iteration, or an exhausted iteration budget, is reported as
    Separation rather than returned as a divergent estimate: a poisoned
    block estimate would corrupt the downstream EL sample.
    """
    _require_kind(data, ModelKind.LOGISTIC, "fit_logistic")
    X, y = data.X, data.y
    if weights is None:
        w = np.ones(data.n)
    else:
        w = check_weights(weights, data.n)
    effective = y[w > 0]
    if effective.size == 0:
        raise EmptyData("no observations with positive weight")
    if np.all(effective == effective[0]):
        raise OneClassOnly("all positive-weight responses are equal")

    beta = np.zeros(data.q)
    for _ in range(max_iter):
        pi = expit(X @ beta)
        wt = w * pi * (1.0 - pi)
        hess = X.T @ (wt[:, None] * X)
        score = X.T @ (w * (y - pi))
        try:
            step = np.linalg.solve(hess, score)
        except np.linalg.LinAlgError as exc:
            raise SingularDesign(f"IRLS normal matrix is singular: {exc}") from exc
        if not np.all(np.isfinite(step)):
            raise SingularDesign("IRLS step is non-finite")
        beta = beta + step
        if np.max(np.abs(beta)) > beta_cap:
            raise Separation(f"|beta| exceeded {beta_cap:g} during IRLS")
        if np.max(np.abs(step)) < tol:
            return beta
    raise Separation(f"IRLS did not converge in {max_iter} iterations")


def standardize(data: Dataset) -> Dataset:
    """Center and scale each non-intercept column to mean 0, variance 1.

    Uses the n-1 variance divisor; the intercept column (column 0 when
    present) is left untouched.
    """
    X = data.X.copy()
    start = 1 if data.intercept else 0
    for j in range(start, data.q):
        col = X[:, j]
        sd = col.std(ddof=1)
        if sd == 0.0 or not np.isfinite(sd):
            raise ConstantColumn(f"column {data.column_names[j]!r} is constant")
        X[:, j] = (col - col.mean()) / sd
    return Dataset(
        X=X,
        y=data.y,
        model_kind=data.model_kind,
        column_names=data.column_names,
        intercept=data.intercept,
    )


ESTIMATORS = {
    "mean": fit_mean,
    "ols": fit_ols,
    "logistic": fit_logistic,
}

_DEFAULT_BY_KIND = {
    ModelKind.MEAN: "mean",
    ModelKind.LINEAR: "ols",
    ModelKind.LOGISTIC: "logistic",
}


def default_estimator(kind: ModelKind) -> str:
    """Name of the estimator matching a dataset's model kind."""
    return _DEFAULT_BY_KIND[ModelKind(kind)]


def resolve_estimator(selector):
    """Map a selector (name or callable) to a fit function."""
    if callable(selector):
        return selector
    try:
        return ESTIMATORS[selector]
    except KeyError:
        raise ValueError(f"unknown estimator {selector!r}; expected one of {sorted(ESTIMATORS)}") from None
