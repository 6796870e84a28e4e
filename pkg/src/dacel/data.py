"""Core data container shared by the estimators and the pipelines."""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import EmptyData


class ModelKind(str, Enum):
    MEAN = "mean"
    LINEAR = "linear"
    LOGISTIC = "logistic"


@dataclass(frozen=True)
class Dataset:
    """An n x q covariate matrix plus an optional response column.

    ``intercept`` marks column 0 as an all-ones intercept (the census
    pipeline prepends one; the simulation designs have none).
    """

    X: np.ndarray
    y: np.ndarray | None = None
    model_kind: ModelKind = ModelKind.MEAN
    column_names: tuple[str, ...] = field(default=())
    intercept: bool = False

    def __post_init__(self):
        X = np.ascontiguousarray(np.asarray(self.X, dtype=np.float64))
        if X.ndim == 1:
            X = X[:, None]
        if X.ndim != 2:
            raise ValueError(f"X must be 2-D, got shape {X.shape}")
        if X.shape[0] == 0:
            raise EmptyData("dataset has no rows")
        if X.shape[1] == 0:
            raise ValueError("dataset has no columns")
        if not np.all(np.isfinite(X)):
            raise ValueError("X contains non-finite entries")
        object.__setattr__(self, "X", X)

        kind = ModelKind(self.model_kind)
        object.__setattr__(self, "model_kind", kind)

        y = self.y
        if kind is ModelKind.MEAN:
            if y is not None:
                raise ValueError("mean model takes no response column")
        else:
            if y is None:
                raise ValueError(f"{kind.value} model requires a response")
            y = np.ascontiguousarray(np.asarray(y, dtype=np.float64)).ravel()
            if y.shape[0] != X.shape[0]:
                raise ValueError("y length does not match number of rows")
            if not np.all(np.isfinite(y)):
                raise ValueError("y contains non-finite entries")
            if kind is ModelKind.LOGISTIC and not np.all((y == 0.0) | (y == 1.0)):
                raise ValueError("logistic responses must be 0 or 1")
        object.__setattr__(self, "y", y)

        names = tuple(self.column_names)
        if not names:
            names = tuple(f"x{i + 1}" for i in range(X.shape[1]))
        if len(names) != X.shape[1]:
            raise ValueError("column_names length does not match X")
        object.__setattr__(self, "column_names", names)

    @property
    def n(self) -> int:
        return self.X.shape[0]

    @property
    def q(self) -> int:
        return self.X.shape[1]

    def take(self, rows: np.ndarray) -> "Dataset":
        """Row-subset view with the same model metadata."""
        return Dataset(
            X=self.X[rows],
            y=None if self.y is None else self.y[rows],
            model_kind=self.model_kind,
            column_names=self.column_names,
            intercept=self.intercept,
        )


def check_weights(w, n: int) -> np.ndarray:
    """Validate an observation-weight vector: nonnegative, positive total."""
    w = np.asarray(w, dtype=np.float64).ravel()
    if w.shape[0] != n:
        raise ValueError(f"expected {n} weights, got {w.shape[0]}")
    if not np.all(np.isfinite(w)):
        raise ValueError("weights contain non-finite entries")
    if np.any(w < 0):
        raise ValueError("weights must be nonnegative")
    if w.sum() <= 0:
        raise ValueError("weights must have a positive sum")
    return w
