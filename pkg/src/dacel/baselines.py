"""Resampling baselines: traditional bootstrap, bag of little
bootstraps and the subsampled double bootstrap.

All three ride on the weighted estimators in :mod:`dacel.model`: a
resample of size n from b points is represented by multinomial counts
summing to n, never by materializing duplicated rows.  Every resample
owns an RNG stream derived from (seed, subset index, resample index),
so results do not depend on execution order.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .data import Dataset
from .errors import DacelError
from .model import default_estimator, resolve_estimator

TB = "tb"
BLB = "blb"
SDB = "sdb"

MAX_REDRAWS = 5


@dataclass(frozen=True)
class ResamplePlan:
    """Sizes for one baseline run; ``b`` is round(n^gamma)."""

    method: str
    b: int
    gamma: float
    subsets: int = 1
    resamples: int = 1
    replicates: int = 1
    level: float = 0.05

    @staticmethod
    def blb(n: int, gamma: float = 0.6, subsets: int = 20, resamples: int = 100,
            level: float = 0.05) -> "ResamplePlan":
        return ResamplePlan(BLB, b=_subset_size(n, gamma), gamma=gamma,
                            subsets=subsets, resamples=resamples, level=level)

    @staticmethod
    def sdb(n: int, gamma: float = 0.6, subsets: int = 500,
            level: float = 0.05) -> "ResamplePlan":
        return ResamplePlan(SDB, b=_subset_size(n, gamma), gamma=gamma,
                            subsets=subsets, level=level)


@dataclass(frozen=True)
class IntervalSet:
    """Per-coordinate percentile confidence bounds for one method."""

    method: str
    level: float
    lo: np.ndarray
    hi: np.ndarray

    def length(self) -> np.ndarray:
        return self.hi - self.lo

    def covers(self, values) -> np.ndarray:
        v = np.asarray(values, dtype=np.float64)
        return (self.lo <= v) & (v <= self.hi)


def _subset_size(n: int, gamma: float) -> int:
    return max(1, min(n, round(n ** gamma)))


def multinomial_weights(b: int, n: int, seed) -> np.ndarray:
    """Multinomial(n; uniform over b cells) counts, summing exactly to n."""
    if b < 1 or n < 1:
        raise ValueError("need b >= 1 and n >= 1")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    return rng.multinomial(n, np.full(b, 1.0 / b))


def _percentile_interval(estimates: np.ndarray, level: float) -> tuple[np.ndarray, np.ndarray]:
    lo, hi = np.quantile(estimates, [level / 2.0, 1.0 - level / 2.0], axis=0)
    return lo, hi


def _weighted_fit_with_redraws(fit, data: Dataset, b: int, n: int, stream_key: tuple) -> np.ndarray:
    """One weighted estimate; a failing resample is redrawn a few times."""
    last: DacelError | None = None
    for attempt in range(MAX_REDRAWS + 1):
        w = multinomial_weights(b, n, np.random.SeedSequence(stream_key + (attempt,)))
        try:
            return np.atleast_1d(fit(data, w))
        except DacelError as exc:
            last = exc
    raise last


def tb(data: Dataset, estimator: str | None, b_replicates: int = 100,
       level: float = 0.05, seed: int = 0) -> IntervalSet:
    """Traditional bootstrap: full-size multinomial resamples, percentile CI."""
    fit = resolve_estimator(estimator or _default_name(data))
    est = np.vstack([
        _weighted_fit_with_redraws(fit, data, data.n, data.n, (seed, 0, r))
        for r in range(b_replicates)
    ])
    lo, hi = _percentile_interval(est, level)
    return IntervalSet(method=TB, level=level, lo=lo, hi=hi)


def blb(data: Dataset, estimator: str | None, plan: ResamplePlan, seed: int = 0) -> IntervalSet:
    """Bag of little bootstraps.

    For each of S subsets of size b (drawn without replacement): R
    weighted estimates with multinomial counts summing to n, giving a
    per-subset percentile interval; the final interval averages the S
    subsets' endpoints coordinate-wise.
    """
    if plan.method != BLB:
        raise ValueError(f"plan is for {plan.method!r}, expected {BLB!r}")
    fit = resolve_estimator(estimator or _default_name(data))
    lows, highs = [], []
    for s in range(plan.subsets):
        rng = np.random.default_rng(np.random.SeedSequence((seed, s)))
        subset = data.take(rng.choice(data.n, size=plan.b, replace=False))
        est = np.vstack([
            _weighted_fit_with_redraws(fit, subset, plan.b, data.n, (seed, s, r))
            for r in range(plan.resamples)
        ])
        lo, hi = _percentile_interval(est, plan.level)
        lows.append(lo)
        highs.append(hi)
    return IntervalSet(method=BLB, level=plan.level,
                       lo=np.mean(lows, axis=0), hi=np.mean(highs, axis=0))


def sdb(data: Dataset, estimator: str | None, plan: ResamplePlan, seed: int = 0) -> IntervalSet:
    """Subsampled double bootstrap.

    S subsets of size b, one full-size weighted estimate each; the
    interval is the pooled percentile band of the S estimates.
    """
    if plan.method != SDB:
        raise ValueError(f"plan is for {plan.method!r}, expected {SDB!r}")
    fit = resolve_estimator(estimator or _default_name(data))
    est = []
    for s in range(plan.subsets):
        rng = np.random.default_rng(np.random.SeedSequence((seed, s)))
        subset = data.take(rng.choice(data.n, size=plan.b, replace=False))
        est.append(_weighted_fit_with_redraws(fit, subset, plan.b, data.n, (seed, s, 0)))
    lo, hi = _percentile_interval(np.vstack(est), plan.level)
    return IntervalSet(method=SDB, level=plan.level, lo=lo, hi=hi)


def _default_name(data: Dataset) -> str:
    return default_estimator(data.model_kind)
