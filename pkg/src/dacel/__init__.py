"""Divide-and-conquer empirical-likelihood inference for large datasets.

Split the data into K random blocks, estimate on each block
independently, then treat the K block estimates as one i.i.d. sample
and apply empirical likelihood: Wilks' theorem calibrates tests and
confidence intervals without estimating any covariance matrix.
Includes the traditional bootstrap, bag-of-little-bootstraps and
subsampled-double-bootstrap baselines, the simulation designs used to
benchmark them, and a Monte Carlo harness that regenerates the
size/power/CI-length/timing tables at configurable scale.
"""

from .baselines import IntervalSet, ResamplePlan, blb, multinomial_weights, sdb, tb
from .dac import (
    BlockEstimates,
    CoordinateInterval,
    CoordinateTest,
    FullVectorTest,
    InferenceReport,
    Partition,
    block_estimates,
    dac_el_infer,
    dac_estimate,
    partition,
)
from .data import Dataset, ModelKind
from .datagen import DesignSpec, gen_linear, gen_logistic, generate, sample_covariates
from .el import (
    ELResult,
    TestResult,
    el_confidence_interval,
    el_test_coordinate,
    el_test_full,
    neg2logr_profile,
    solve_el,
)
from .model import fit_logistic, fit_mean, fit_ols, standardize

__version__ = "0.1.0"

__all__ = [
    "BlockEstimates",
    "CoordinateInterval",
    "CoordinateTest",
    "Dataset",
    "DesignSpec",
    "ELResult",
    "FullVectorTest",
    "InferenceReport",
    "IntervalSet",
    "ModelKind",
    "Partition",
    "ResamplePlan",
    "TestResult",
    "blb",
    "block_estimates",
    "dac_el_infer",
    "dac_estimate",
    "el_confidence_interval",
    "el_test_coordinate",
    "el_test_full",
    "fit_logistic",
    "fit_mean",
    "fit_ols",
    "gen_linear",
    "gen_logistic",
    "generate",
    "multinomial_weights",
    "neg2logr_profile",
    "partition",
    "sample_covariates",
    "sdb",
    "solve_el",
    "standardize",
    "tb",
    "__version__",
]
