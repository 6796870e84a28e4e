"""Shared fixtures and dataset builders."""
from __future__ import annotations

import numpy as np
import pytest

from dacel.data import Dataset, ModelKind


def mean_data(X) -> Dataset:
    return Dataset(X=np.asarray(X, dtype=float), model_kind=ModelKind.MEAN)


def linear_data(X, y) -> Dataset:
    return Dataset(X=np.asarray(X, dtype=float), y=np.asarray(y, dtype=float),
                   model_kind=ModelKind.LINEAR)


def logistic_data(X, y) -> Dataset:
    return Dataset(X=np.asarray(X, dtype=float), y=np.asarray(y, dtype=float),
                   model_kind=ModelKind.LOGISTIC)


@pytest.fixture
def rng():
    return np.random.default_rng(20240813)
