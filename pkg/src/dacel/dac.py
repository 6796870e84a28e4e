"""Random disjoint partitioning, parallel block estimation and the
divide-and-conquer + EL inference pipeline.

The two-step method: split the data into K equal blocks at random and
estimate on each block independently; then treat the K block estimates
as one i.i.d. sample and apply empirical likelihood to it.  Block rows
are gathered positionally, so thread scheduling cannot change any
output.
"""
from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import el
from .data import Dataset
from .errors import BlockEstimationFailed, DacelError, TooManyBlocks
from .model import default_estimator, resolve_estimator


@dataclass(frozen=True)
class Partition:
    """K disjoint blocks of common size m over n observations.

    ``indices[k]`` lists the original row numbers of block k; the final
    n mod K rows of the seeded shuffle are dropped and counted.
    """

    indices: np.ndarray  # (K, m) int64
    n: int
    dropped: int

    @property
    def k(self) -> int:
        return self.indices.shape[0]

    @property
    def m(self) -> int:
        return self.indices.shape[1]

    @property
    def assignment(self) -> np.ndarray:
        """Length-n array of block ids in 1..K, 0 for dropped rows."""
        out = np.zeros(self.n, dtype=np.int64)
        for k in range(self.k):
            out[self.indices[k]] = k + 1
        return out


@dataclass(frozen=True)
class BlockEstimates:
    """K x p matrix of per-block parameter estimates."""

    theta: np.ndarray
    m: int
    estimator: str

    def __post_init__(self):
        theta = np.asarray(self.theta, dtype=np.float64)
        if theta.ndim != 2 or theta.shape[0] < 2:
            raise ValueError(f"need a (K>=2, p) estimate matrix, got {theta.shape}")
        if not np.all(np.isfinite(theta)):
            raise ValueError("block estimates contain non-finite entries")
        object.__setattr__(self, "theta", theta)


def partition(n: int, k: int, seed: int, *, min_block_size: int = 2) -> Partition:
    """Cut a seeded uniform shuffle of range(n) into K blocks of m = n // K."""
    if k < 2:
        raise ValueError("need at least K=2 blocks")
    m = n // k
    if m < min_block_size:
        raise TooManyBlocks(f"K={k} leaves blocks of {m} < {min_block_size} rows")
    perm = np.random.default_rng(seed).permutation(n)
    return Partition(indices=perm[: k * m].reshape(k, m), n=n, dropped=n - k * m)


def block_estimates(data: Dataset, part: Partition, estimator: str | None = None,
                    *, workers: int = 1) -> BlockEstimates:
    """Apply the chosen estimator to every block, optionally in parallel."""
    if part.n != data.n:
        raise ValueError(f"partition built for n={part.n}, data has n={data.n}")
    name = estimator or default_estimator(data.model_kind)
    fit = resolve_estimator(name)

    def one(k: int) -> np.ndarray:
        try:
            return np.atleast_1d(fit(data.take(part.indices[k])))
        except DacelError as exc:
            raise BlockEstimationFailed(k, exc) from exc

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(one, range(part.k)))
    else:
        rows = [one(k) for k in range(part.k)]
    return BlockEstimates(theta=np.vstack(rows), m=part.m, estimator=str(name))


def dac_estimate(est: BlockEstimates) -> np.ndarray:
    """Average of the block estimates (the DAC point estimate)."""
    return est.theta.mean(axis=0)


# --- hypothesis specs for the end-to-end pipeline ---


@dataclass(frozen=True)
class FullVectorTest:
    mu0: tuple[float, ...]


@dataclass(frozen=True)
class CoordinateTest:
    j: int
    value: float


@dataclass(frozen=True)
class CoordinateInterval:
    j: int


@dataclass(frozen=True)
class IntervalResult:
    j: int
    lo: float
    hi: float
    level: float


@dataclass
class InferenceReport:
    """DAC point estimate, per-hypothesis results and stage timings.

    ``fit_seconds_max`` is the parallel-time proxy (slowest block) and
    ``fit_seconds_sum`` the sequential cost; ``el_seconds`` covers the
    whole EL stage, mirroring the K*t(m) + c(K) cost decomposition.
    """

    estimate: np.ndarray
    k: int
    m: int
    dropped: int
    level: float
    estimator: str
    results: list = field(default_factory=list)
    fit_seconds_sum: float = 0.0
    fit_seconds_max: float = 0.0
    el_seconds: float = 0.0


def dac_el_infer(data: Dataset, k: int, estimator: str | None = None, tests=(),
                 level: float = 0.05, seed: int = 0, *, workers: int = 1) -> InferenceReport:
    """Run partition -> block estimation -> EL inference in one call.

    ``tests`` is a list of FullVectorTest / CoordinateTest /
    CoordinateInterval specs.  A failed block aborts the whole call with
    BlockEstimationFailed: silently dropping a block would change K and
    bias downstream size estimates.
    """
    name = estimator or default_estimator(data.model_kind)
    part = partition(data.n, k, seed)
    fit = resolve_estimator(name)

    def timed_fit(block: int) -> tuple[np.ndarray, float]:
        t0 = time.perf_counter()
        try:
            row = np.atleast_1d(fit(data.take(part.indices[block])))
        except DacelError as exc:
            raise BlockEstimationFailed(block, exc) from exc
        return row, time.perf_counter() - t0

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            fitted = list(pool.map(timed_fit, range(part.k)))
    else:
        fitted = [timed_fit(b) for b in range(part.k)]
    theta = np.vstack([row for row, _ in fitted])
    times = [t for _, t in fitted]
    est = BlockEstimates(theta=theta, m=part.m, estimator=str(name))

    report = InferenceReport(
        estimate=dac_estimate(est),
        k=part.k,
        m=part.m,
        dropped=part.dropped,
        level=level,
        estimator=str(name),
        fit_seconds_sum=float(sum(times)),
        fit_seconds_max=float(max(times)),
    )

    t0 = time.perf_counter()
    for spec in tests:
        if isinstance(spec, FullVectorTest):
            report.results.append(el.el_test_full(theta, spec.mu0, level))
        elif isinstance(spec, CoordinateTest):
            report.results.append(el.el_test_coordinate(theta, spec.j, spec.value, level))
        elif isinstance(spec, CoordinateInterval):
            lo, hi = el.el_confidence_interval(theta, spec.j, level)
            report.results.append(IntervalResult(j=spec.j, lo=lo, hi=hi, level=level))
        else:
            raise ValueError(f"unknown hypothesis spec {spec!r}")
    report.el_seconds = time.perf_counter() - t0
    return report
