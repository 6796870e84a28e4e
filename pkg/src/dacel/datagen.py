"""Seeded generators for the simulation designs.

Linear designs (cases 1-3): 7 correlated normal covariates with
cov(i, j) = 0.2^|i-j| and additive noise that is standard normal, t(10)
or an equal mixture of N(1,1) and N(-1,1).

Logistic designs (cases 1-6): covariates drawn from, in order, a
centered normal with unit variance and 0.5 cross-correlation, the same
normal shifted to mean 1.5, an equal mixture of the +/-1 shifted
normals, a multivariate t with 3 degrees of freedom scaled by 1/10,
independent rate-2 exponentials, and an equal mixture of the -2.14 and
-2.9 shifted normals (rare events).  Responses are Bernoulli with a
logistic link.

Each dataset draws from three independent child streams (covariates,
mixture coins, response noise) spawned from the design seed, so
changing the noise case never perturbs the covariates at matched seeds.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np
from scipy.special import expit

from .data import Dataset, ModelKind

LINEAR = "linear"
LOGISTIC = "logistic"

LINEAR_CASES = (1, 2, 3)
LOGISTIC_CASES = (1, 2, 3, 4, 5, 6)

DEFAULT_BETA = (0.2,) * 7


@dataclass(frozen=True)
class DesignSpec:
    example: str
    case: int
    n: int
    beta: tuple[float, ...] = DEFAULT_BETA
    seed: int = 0

    def __post_init__(self):
        if self.example not in (LINEAR, LOGISTIC):
            raise ValueError(f"unknown example {self.example!r}")
        cases = LINEAR_CASES if self.example == LINEAR else LOGISTIC_CASES
        if self.case not in cases:
            raise ValueError(f"{self.example} designs have cases {cases}, got {self.case}")
        if self.n < 1:
            raise ValueError("n must be positive")
        object.__setattr__(self, "beta", tuple(float(b) for b in self.beta))

    @property
    def p(self) -> int:
        return len(self.beta)


def covariance_matrix(example: str, p: int) -> np.ndarray:
    """Design covariance: 0.2^|i-j| for linear, 0.5 off-diagonal for logistic."""
    idx = np.arange(p)
    if example == LINEAR:
        return 0.2 ** np.abs(idx[:, None] - idx[None, :])
    if example == LOGISTIC:
        return np.where(idx[:, None] == idx[None, :], 1.0, 0.5)
    raise ValueError(f"unknown example {example!r}")


def _streams(seed: int) -> tuple[np.random.Generator, np.random.Generator, np.random.Generator]:
    cov_ss, coin_ss, noise_ss = np.random.SeedSequence(seed).spawn(3)
    return (np.random.default_rng(cov_ss),
            np.random.default_rng(coin_ss),
            np.random.default_rng(noise_ss))


def sample_covariates(spec: DesignSpec, rng_cov: np.random.Generator,
                      rng_coin: np.random.Generator) -> np.ndarray:
    """Draw the n x p covariate matrix for the design case."""
    n, p = spec.n, spec.p
    chol = np.linalg.cholesky(covariance_matrix(spec.example, p))

    if spec.example == LINEAR:
        return rng_cov.standard_normal((n, p)) @ chol.T

    case = spec.case
    if case == 5:
        return rng_cov.exponential(scale=0.5, size=(n, p))
    base = rng_cov.standard_normal((n, p)) @ chol.T
    if case == 1:
        return base
    if case == 2:
        return base + 1.5
    if case == 4:
        divisor = np.sqrt(rng_cov.chisquare(3, size=n) / 3.0)
        return base / divisor[:, None] / 10.0
    if case == 3:
        means = (1.0, -1.0)
    else:  # case 6, rare events
        means = (-2.14, -2.9)
    coin = rng_coin.random(n) < 0.5
    return base + np.where(coin, means[0], means[1])[:, None]


def gen_linear(spec: DesignSpec) -> Dataset:
    """Linear-model dataset y = X beta + eps for cases 1-3."""
    if spec.example != LINEAR:
        raise ValueError("gen_linear needs a linear design spec")
    rng_cov, rng_coin, rng_noise = _streams(spec.seed)
    X = sample_covariates(spec, rng_cov, rng_coin)
    if spec.case == 1:
        eps = rng_noise.standard_normal(spec.n)
    elif spec.case == 2:
        eps = rng_noise.standard_t(10, size=spec.n)
    else:
        coin = rng_coin.random(spec.n) < 0.5
        eps = rng_noise.standard_normal(spec.n) + np.where(coin, 1.0, -1.0)
    y = X @ np.asarray(spec.beta) + eps
    return Dataset(X=X, y=y, model_kind=ModelKind.LINEAR)


def gen_logistic(spec: DesignSpec) -> Dataset:
    """Logistic-model dataset with Bernoulli(expit(Z beta)) responses."""
    if spec.example != LOGISTIC:
        raise ValueError("gen_logistic needs a logistic design spec")
    rng_cov, rng_coin, rng_noise = _streams(spec.seed)
    Z = sample_covariates(spec, rng_cov, rng_coin)
    probs = expit(Z @ np.asarray(spec.beta))
    y = (rng_noise.random(spec.n) < probs).astype(np.float64)
    return Dataset(X=Z, y=y, model_kind=ModelKind.LOGISTIC)


def generate(spec: DesignSpec) -> Dataset:
    return gen_linear(spec) if spec.example == LINEAR else gen_logistic(spec)


def to_csv(data: Dataset, path) -> None:
    """Write the dataset as CSV: covariate columns then the response."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        header = list(data.column_names)
        if data.y is not None:
            header.append("y")
        writer.writerow(header)
        for i in range(data.n):
            row = [repr(float(v)) for v in data.X[i]]
            if data.y is not None:
                row.append(repr(float(data.y[i])))
            writer.writerow(row)
