"""Least squares with the full diagnostic block."""

from __future__ import annotations

import math

import numpy as np
import pytest
from scipy import stats

from eventgarch import (
    DegenerateInputError,
    InsufficientDataError,
    f_from_r_squared,
    fit_ols,
)


class TestSmallOracles:
    def test_three_point_hand_oracle(self):
        # x = (0, 1, 2), y = (0, 1, 3): slope 3/2, intercept -1/6 from the
        # normal equations; rss = 1/6, tss = 14/3, R^2 = 27/28.
        fit = fit_ols(np.array([0.0, 1.0, 3.0]), np.array([0.0, 1.0, 2.0]))
        assert fit.coefficients[0] == pytest.approx(-1.0 / 6.0, abs=1e-12)
        assert fit.coefficients[1] == pytest.approx(1.5, abs=1e-12)
        assert fit.r_squared == pytest.approx(27.0 / 28.0, rel=1e-12)
        s2 = (1.0 / 6.0) / 1.0
        assert fit.std_errors[1] == pytest.approx(math.sqrt(s2 / 2.0), rel=1e-12)
        assert fit.t_stats[1] == pytest.approx(1.5 / math.sqrt(s2 / 2.0), rel=1e-12)
        assert fit.f_statistic == pytest.approx(27.0, rel=1e-9)

    def test_exact_linear_data_recovers_the_line(self):
        x = np.arange(1.0, 11.0)
        fit = fit_ols(2.0 * x, x)
        assert fit.coefficients[0] == pytest.approx(0.0, abs=1e-10)
        assert fit.coefficients[1] == pytest.approx(2.0, rel=1e-12)
        assert fit.r_squared == pytest.approx(1.0, abs=1e-12)
        np.testing.assert_allclose(fit.std_errors, 0.0, atol=1e-12)
        assert math.isinf(fit.f_statistic) and fit.f_statistic > 0
        assert fit.f_pvalue == 0.0

    def test_perfect_fit_returns_limit_values(self):
        # orthogonal +/-1 regressor with n = 4 (exact column norms): QR
        # reproduces y = 3 + x bit-exactly, so the RSS is exactly zero
        x = np.array([1.0, -1.0, 1.0, -1.0])
        fit = fit_ols(3.0 + x, x)
        rss = float(fit.residuals @ fit.residuals)
        assert rss == 0.0
        np.testing.assert_array_equal(fit.std_errors, 0.0)
        assert fit.t_stats[0] == math.inf and fit.t_stats[1] == math.inf
        np.testing.assert_array_equal(fit.pvalues, 0.0)
        assert math.isinf(fit.f_statistic) and fit.f_statistic > 0
        assert fit.f_pvalue == 0.0
        assert fit.log_likelihood == math.inf
        assert fit.aic == -math.inf and fit.sic == -math.inf
        assert math.isnan(fit.dw)

    def test_matches_independent_full_computation(self):
        rng = np.random.default_rng(31)
        n = 100
        X_cols = rng.normal(size=(n, 2))
        y = 1.0 + X_cols @ np.array([0.5, -2.0]) + rng.normal(0, 0.7, n)
        fit = fit_ols(y, X_cols)

        X = np.column_stack([np.ones(n), X_cols])
        k = 3
        beta = np.linalg.solve(X.T @ X, X.T @ y)
        resid = y - X @ beta
        rss = float(resid @ resid)
        s2 = rss / (n - k)
        se = np.sqrt(np.diag(s2 * np.linalg.inv(X.T @ X)))
        t = beta / se
        p = 2.0 * stats.t.sf(np.abs(t), n - k)
        tss = float(np.sum((y - y.mean()) ** 2))
        r2 = 1.0 - rss / tss
        f = (r2 / (k - 1)) / ((1.0 - r2) / (n - k))
        ll = -(n / 2.0) * (1.0 + math.log(2.0 * math.pi) + math.log(rss / n))
        aic = (-2.0 * ll + 2.0 * k) / n
        sic = (-2.0 * ll + k * math.log(n)) / n
        dw = float(np.sum(np.diff(resid) ** 2) / rss)

        np.testing.assert_allclose(fit.coefficients, beta, rtol=1e-10)
        np.testing.assert_allclose(fit.std_errors, se, rtol=1e-8)
        np.testing.assert_allclose(fit.t_stats, t, rtol=1e-8)
        np.testing.assert_allclose(fit.pvalues, p, rtol=1e-8, atol=1e-12)
        assert fit.r_squared == pytest.approx(r2, rel=1e-10)
        assert fit.f_statistic == pytest.approx(f, rel=1e-8)
        assert fit.f_pvalue == pytest.approx(float(stats.f.sf(f, k - 1, n - k)), rel=1e-8)
        assert fit.log_likelihood == pytest.approx(ll, rel=1e-10)
        assert fit.aic == pytest.approx(aic, rel=1e-10)
        assert fit.sic == pytest.approx(sic, rel=1e-10)
        assert fit.dw == pytest.approx(dw, rel=1e-10)
        np.testing.assert_allclose(fit.residuals, resid, atol=1e-10)
        assert fit.n == n and fit.k == k


class TestInvariants:
    @pytest.fixture()
    def data(self):
        rng = np.random.default_rng(32)
        x = rng.normal(size=80)
        y = 0.3 - 0.9 * x + rng.normal(0, 0.5, 80)
        return y, x

    def test_shifting_y_moves_only_the_intercept(self, data):
        y, x = data
        base = fit_ols(y, x)
        shifted = fit_ols(y + 5.0, x)
        assert shifted.coefficients[0] == pytest.approx(base.coefficients[0] + 5.0, rel=1e-9)
        assert shifted.coefficients[1] == pytest.approx(base.coefficients[1], rel=1e-9)
        assert shifted.r_squared == pytest.approx(base.r_squared, rel=1e-9)
        assert shifted.f_statistic == pytest.approx(base.f_statistic, rel=1e-9)
        assert shifted.dw == pytest.approx(base.dw, rel=1e-9)

    def test_scaling_a_regressor_rescales_its_coefficient(self, data):
        y, x = data
        base = fit_ols(y, x)
        scaled = fit_ols(y, 4.0 * x)
        assert scaled.coefficients[1] == pytest.approx(base.coefficients[1] / 4.0, rel=1e-9)
        assert scaled.t_stats[1] == pytest.approx(base.t_stats[1], rel=1e-9)

    def test_residuals_orthogonal_to_regressors(self, data):
        y, x = data
        fit = fit_ols(y, x)
        e = fit.residuals
        bound = 1e-6 * e.size * np.std(e) * np.std(x)
        assert abs(float(e @ x)) < bound
        assert abs(float(e.sum())) < 1e-6 * e.size * np.std(e)

    def test_z_identity_between_t_and_se(self, data):
        y, x = data
        fit = fit_ols(y, x)
        np.testing.assert_allclose(
            fit.t_stats, fit.coefficients / fit.std_errors, rtol=1e-9
        )

    def test_f_matches_r_squared_identity(self, data):
        y, x = data
        fit = fit_ols(y, x)
        assert fit.f_statistic == pytest.approx(
            f_from_r_squared(fit.r_squared, fit.n, fit.k), rel=1e-6
        )


class TestValidation:
    def test_rank_deficient_design(self):
        rng = np.random.default_rng(33)
        x = rng.normal(size=30)
        with pytest.raises(DegenerateInputError):
            fit_ols(rng.normal(size=30), np.column_stack([x, 2.0 * x]))

    def test_n_must_exceed_k(self):
        with pytest.raises(InsufficientDataError):
            fit_ols(np.array([1.0, 2.0]), np.array([1.0, 2.0]))

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            fit_ols(np.arange(5.0), np.arange(6.0))

    def test_non_finite_inputs(self):
        y = np.arange(10.0)
        y[3] = np.nan
        with pytest.raises(DegenerateInputError):
            fit_ols(y, np.arange(10.0) ** 2)

    def test_constant_dependent_variable(self):
        with pytest.raises(DegenerateInputError):
            fit_ols(np.ones(10), np.arange(10.0))

    def test_custom_names(self):
        fit = fit_ols(np.array([0.0, 1.0, 3.0]), np.array([0.0, 1.0, 2.0]), names=("c1", "c2"))
        assert fit.names == ("c1", "c2")
        with pytest.raises(ValueError):
            fit_ols(np.array([0.0, 1.0, 3.0]), np.array([0.0, 1.0, 2.0]), names=("only",))


class TestFFromRSquared:
    def test_consistency_identity(self):
        assert f_from_r_squared(0.109356, 243, 2) == pytest.approx(
            (0.109356 / 1) / ((1 - 0.109356) / 241), rel=1e-12
        )

    def test_domain_checks(self):
        with pytest.raises(ValueError):
            f_from_r_squared(1.2, 100, 2)
        with pytest.raises(ValueError):
            f_from_r_squared(0.5, 100, 1)
