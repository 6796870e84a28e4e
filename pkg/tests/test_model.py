"""Estimator unit tests against independent oracles."""
import numpy as np
import pytest

from dacel.data import Dataset, ModelKind
from dacel.datagen import DesignSpec, gen_logistic, sample_covariates
from dacel.errors import ConstantColumn, OneClassOnly, Separation, SingularDesign
from dacel.model import fit_logistic, fit_mean, fit_ols, standardize

from conftest import linear_data, logistic_data, mean_data
from oracles import logistic_by_generic_mle, mean_by_summation, ols_by_normal_equations


class TestFitMean:
    def test_unweighted(self):
        assert fit_mean(mean_data([[1.0], [3.0]])) == pytest.approx([2.0])

    def test_weighted(self):
        got = fit_mean(mean_data([[1.0], [3.0]]), weights=[3.0, 1.0])
        assert got == pytest.approx([1.5])

    def test_matches_summation_oracle(self, rng):
        X = rng.normal(size=(5, 2))
        np.testing.assert_allclose(fit_mean(mean_data(X)), mean_by_summation(X), rtol=0, atol=1e-14)

    def test_weight_scale_invariance(self, rng):
        X = rng.normal(size=(9, 3))
        w = rng.uniform(0.5, 2.0, size=9)
        a = fit_mean(mean_data(X), weights=w)
        b = fit_mean(mean_data(X), weights=7.5 * w)
        np.testing.assert_allclose(a, b, atol=1e-15)

    def test_concatenation_linearity(self, rng):
        A = rng.normal(size=(4, 2))
        B = rng.normal(size=(6, 2))
        whole = fit_mean(mean_data(np.vstack([A, B])))
        parts = (4 * fit_mean(mean_data(A)) + 6 * fit_mean(mean_data(B))) / 10
        np.testing.assert_allclose(whole, parts, atol=1e-15)


class TestFitOls:
    def test_identity_design(self):
        got = fit_ols(linear_data([[1.0, 0.0], [0.0, 1.0]], [2.0, 3.0]))
        assert got == pytest.approx([2.0, 3.0])

    def test_noiseless_recovery(self):
        spec = DesignSpec(example="linear", case=1, n=60, seed=5)
        rng_cov = np.random.default_rng(11)
        rng_coin = np.random.default_rng(12)
        X = sample_covariates(spec, rng_cov, rng_coin)
        beta = np.full(7, 0.2)
        got = fit_ols(linear_data(X, X @ beta))
        np.testing.assert_allclose(got, beta, atol=1e-10)

    def test_matches_normal_equation_oracle(self, rng):
        X = rng.normal(size=(50, 3))
        y = X @ np.array([1.0, -0.5, 0.25]) + rng.normal(size=50)
        np.testing.assert_allclose(
            fit_ols(linear_data(X, y)), ols_by_normal_equations(X, y), atol=1e-8)

    def test_weighted_matches_oracle(self, rng):
        X = rng.normal(size=(40, 3))
        y = X @ np.array([0.3, 0.7, -0.2]) + rng.normal(size=40)
        w = rng.integers(0, 5, size=40).astype(float)
        w[0] = 1.0  # keep the total positive
        np.testing.assert_allclose(
            fit_ols(linear_data(X, y), weights=w),
            ols_by_normal_equations(X, y, w), atol=1e-8)

    def test_residual_orthogonality(self, rng):
        X = rng.normal(size=(30, 4))
        y = rng.normal(size=30)
        w = rng.uniform(0.1, 3.0, size=30)
        beta = fit_ols(linear_data(X, y), weights=w)
        resid = X.T @ (w * (y - X @ beta))
        scale = np.abs(X).max() * np.abs(y).max()
        assert np.max(np.abs(resid)) < 1e-8 * scale

    def test_singular_design(self):
        X = np.array([[1.0, 2.0], [2.0, 4.0], [3.0, 6.0]])
        with pytest.raises(SingularDesign):
            fit_ols(linear_data(X, [1.0, 2.0, 3.0]))

    def test_weight_scale_invariance(self, rng):
        X = rng.normal(size=(25, 3))
        y = rng.normal(size=25)
        w = rng.uniform(0.5, 2.0, size=25)
        np.testing.assert_allclose(
            fit_ols(linear_data(X, y), weights=w),
            fit_ols(linear_data(X, y), weights=3.0 * w), atol=1e-12)


class TestFitLogistic:
    def test_intercept_only_half(self):
        X = np.ones((40, 1))
        y = np.array([0.0, 1.0] * 20)
        got = fit_logistic(logistic_data(X, y))
        assert got == pytest.approx([0.0], abs=1e-10)

    def test_intercept_only_three_quarters(self):
        X = np.ones((40, 1))
        y = np.array([1.0, 1.0, 1.0, 0.0] * 10)
        got = fit_logistic(logistic_data(X, y))
        assert got == pytest.approx([np.log(3.0)], abs=1e-8)

    def test_matches_generic_mle_oracle(self):
        spec = DesignSpec(example="logistic", case=1, n=200, seed=77)
        data = gen_logistic(spec)
        got = fit_logistic(data)
        want = logistic_by_generic_mle(data.X, data.y)
        np.testing.assert_allclose(got, want, atol=1e-6)

    def test_weighted_matches_oracle(self, rng):
        spec = DesignSpec(example="logistic", case=1, n=150, seed=3)
        data = gen_logistic(spec)
        w = rng.integers(0, 4, size=150).astype(float)
        w[data.y == 1.0] += 1.0
        w[data.y == 0.0] += 1.0
        got = fit_logistic(data, weights=w)
        want = logistic_by_generic_mle(data.X, data.y, w)
        np.testing.assert_allclose(got, want, atol=1e-6)

    def test_score_at_optimum(self):
        spec = DesignSpec(example="logistic", case=2, n=300, seed=9)
        data = gen_logistic(spec)
        beta = fit_logistic(data)
        from scipy.special import expit

        score = data.X.T @ (data.y - expit(data.X @ beta))
        assert np.max(np.abs(score)) < 1e-6 * max(1.0, np.abs(data.X).max())

    def test_one_class_only(self):
        X = np.ones((10, 1))
        with pytest.raises(OneClassOnly):
            fit_logistic(logistic_data(X, np.ones(10)))

    def test_one_class_after_weighting(self):
        X = np.ones((10, 1))
        y = np.array([1.0] * 9 + [0.0])
        w = np.array([1.0] * 9 + [0.0])
        with pytest.raises(OneClassOnly):
            fit_logistic(logistic_data(X, y), weights=w)

    def test_separated_data_raises(self):
        # perfectly separated on one covariate
        x = np.concatenate([-np.linspace(1, 2, 10), np.linspace(1, 2, 10)])
        y = np.concatenate([np.zeros(10), np.ones(10)])
        with pytest.raises(Separation):
            fit_logistic(logistic_data(x[:, None], y))

    def test_weight_scale_invariance(self):
        spec = DesignSpec(example="logistic", case=1, n=120, seed=21)
        data = gen_logistic(spec)
        w = np.random.default_rng(4).uniform(0.5, 1.5, size=120)
        np.testing.assert_allclose(
            fit_logistic(data, weights=w),
            fit_logistic(data, weights=0.25 * w), atol=1e-9)


class TestStandardize:
    def test_basic_column(self):
        out = standardize(mean_data([[1.0], [2.0], [3.0]]))
        assert out.X[:, 0].mean() == pytest.approx(0.0, abs=1e-12)
        assert out.X[:, 0].std(ddof=1) == pytest.approx(1.0, abs=1e-12)

    def test_idempotent(self, rng):
        X = rng.normal(size=(20, 3))
        once = standardize(mean_data(X))
        twice = standardize(once)
        np.testing.assert_allclose(once.X, twice.X, atol=1e-12)

    def test_constant_column(self):
        with pytest.raises(ConstantColumn):
            standardize(mean_data([[1.0, 5.0], [2.0, 5.0], [3.0, 5.0]]))

    def test_intercept_untouched(self, rng):
        X = np.column_stack([np.ones(15), rng.normal(size=15)])
        data = Dataset(X=X, y=rng.integers(0, 2, size=15).astype(float),
                       model_kind=ModelKind.LOGISTIC, intercept=True)
        out = standardize(data)
        np.testing.assert_array_equal(out.X[:, 0], np.ones(15))
        assert out.X[:, 1].mean() == pytest.approx(0.0, abs=1e-12)


class TestDatasetValidation:
    def test_logistic_requires_binary(self):
        with pytest.raises(ValueError):
            logistic_data([[1.0], [2.0]], [0.5, 1.0])

    def test_rejects_nan(self):
        with pytest.raises(ValueError):
            mean_data([[np.nan], [1.0]])

    def test_empty_raises(self):
        from dacel.errors import EmptyData

        with pytest.raises(EmptyData):
            mean_data(np.empty((0, 2)))

    def test_y_length_checked(self):
        with pytest.raises(ValueError):
            linear_data([[1.0], [2.0]], [1.0])
