"""Stationarity and residual diagnostics.

Implements the augmented Dickey-Fuller test with a constant, Ljung-Box Q
statistics, the Jarque-Bera normality test, Engle's ARCH-LM test and the
Durbin-Watson statistic.  ADF critical values come from MacKinnon's
response-surface estimates for the constant-only, single-series case; the
p-value mapping is MacKinnon's 1996 polynomial approximation of the
asymptotic tau distribution.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import stats

from .errors import DegenerateInputError, InsufficientDataError

# Response-surface coefficients for the constant-only test, one series:
# cv(n) = b0 + b1/n + b2/n^2 + b3/n^3.
_CRIT_COEF = {
    "1%": (-3.43035, -6.5393, -16.786, -79.433),
    "5%": (-2.86154, -2.8903, -4.234, -40.040),
    "10%": (-2.56677, -1.5384, -2.809, 0.0),
}

# Polynomial p-value approximation for the same case.  Below _TAU_STAR the
# small-tau polynomial applies (through a normal cdf); above it the large-tau
# one.  Outside [_TAU_MIN, _TAU_MAX] the p-value saturates at 0 or 1.
_TAU_MIN = -18.83
_TAU_MAX = 2.74
_TAU_STAR = -1.61
_TAU_SMALLP = (2.1659, 1.4412, 3.8269e-2)
_TAU_LARGEP = (1.7339, 9.3202e-1, -1.2745e-1, -1.0368e-2)


@dataclass(frozen=True)
class AdfResult:
    statistic: float
    pvalue: float
    lags: int
    nobs: int
    critical_values: dict[str, float]


@dataclass(frozen=True)
class QStat:
    lag: int
    statistic: float
    pvalue: float


@dataclass(frozen=True)
class JbResult:
    statistic: float
    pvalue: float
    skewness: float
    kurtosis: float


@dataclass(frozen=True)
class ArchLmResult:
    lags: int
    lm_statistic: float
    lm_pvalue: float
    f_statistic: float
    f_pvalue: float
    nobs: int


def mackinnon_crit(nobs: int) -> dict[str, float]:
    """Finite-sample 1/5/10 percent critical values for the constant-only
    unit-root t statistic at the given regression sample size."""
    if nobs <= 0:
        raise ValueError(f"nobs must be positive, got {nobs}")
    out: dict[str, float] = {}
    for level, (b0, b1, b2, b3) in _CRIT_COEF.items():
        out[level] = b0 + b1 / nobs + b2 / nobs**2 + b3 / nobs**3
    return out


def mackinnon_pvalue(tau: float) -> float:
    """Asymptotic p-value of the constant-only unit-root t statistic."""
    if tau > _TAU_MAX:
        return 1.0
    if tau < _TAU_MIN:
        return 0.0
    if tau <= _TAU_STAR:
        coefs = _TAU_SMALLP
    else:
        coefs = _TAU_LARGEP
    arg = sum(c * tau**i for i, c in enumerate(coefs))
    return float(stats.norm.cdf(arg))


def _check_series(x: np.ndarray, min_len: int, what: str) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.ndim != 1:
        raise ValueError(f"{what}: expected a 1-d array, got shape {x.shape}")
    if x.size < min_len:
        raise InsufficientDataError(f"{what}: need >= {min_len} observations, got {x.size}")
    if not np.all(np.isfinite(x)):
        raise DegenerateInputError(f"{what}: series contains non-finite values")
    return x


def _lstsq_rss(y: np.ndarray, X: np.ndarray) -> tuple[np.ndarray, np.ndarray, float]:
    beta, _, rank, _ = np.linalg.lstsq(X, y, rcond=None)
    if rank < X.shape[1]:
        raise DegenerateInputError("regressor matrix is rank deficient")
    resid = y - X @ beta
    return beta, resid, float(resid @ resid)


def _adf_design(y: np.ndarray, lag: int, first_row: int) -> tuple[np.ndarray, np.ndarray]:
    # Rows are indexed on the differenced series; row i regresses dy[i] on a
    # constant, the lagged level y[i] and dy[i-1] ... dy[i-lag].
    dy = np.diff(y)
    rows = np.arange(first_row, dy.size)
    cols = [np.ones(rows.size), y[rows]]
    for j in range(1, lag + 1):
        cols.append(dy[rows - j])
    return dy[rows], np.column_stack(cols)


def adf_test(
    series: np.ndarray,
    *,
    lags: int | None = None,
    max_lags: int | None = None,
) -> AdfResult:
    """Augmented Dickey-Fuller test with a constant.

    The regression is dy_t = a + g y_{t-1} + sum d_j dy_{t-j} + e_t and the
    statistic is the t ratio on g.  With ``lags`` fixed, exactly that many
    difference lags enter.  Otherwise the lag is chosen by minimizing SIC
    over 0..max_lags on a common sample (default max is the Schwert rule
    floor(12 (n/100)^(1/4))), ties toward fewer lags, then the test is refit
    on the longest sample the chosen lag allows.  Critical values and the
    p-value come from the MacKinnon response surfaces.
    """
    y = _check_series(series, 12, "adf_test")
    n = y.size
    if np.std(y) == 0.0:
        raise DegenerateInputError("adf_test: series is constant")

    if lags is not None:
        if lags < 0:
            raise ValueError(f"lags must be >= 0, got {lags}")
        if n < lags + 10:
            raise InsufficientDataError(
                f"adf_test: need >= lags + 10 = {lags + 10} observations, got {n}"
            )
        chosen = lags
    else:
        if max_lags is None:
            max_lags = int(np.floor(12.0 * (n / 100.0) ** 0.25))
        if max_lags < 0:
            raise ValueError(f"max_lags must be >= 0, got {max_lags}")
        # Keep enough residual degrees of freedom on the common sample.
        while max_lags > 0 and (n - 1 - max_lags) < (max_lags + 2 + 3):
            max_lags -= 1
        best_sic = np.inf
        chosen = 0
        n_common = n - 1 - max_lags
        for k in range(max_lags + 1):
            dep, X = _adf_design(y, k, max_lags)
            _, _, rss = _lstsq_rss(dep, X)
            if rss <= 0.0:
                raise DegenerateInputError("adf_test: perfect fit in lag selection")
            ll = -(n_common / 2.0) * (1.0 + np.log(2.0 * np.pi) + np.log(rss / n_common))
            sic = (-2.0 * ll + (k + 2) * np.log(n_common)) / n_common
            if sic < best_sic:
                best_sic = sic
                chosen = k

    dep, X = _adf_design(y, chosen, chosen)
    beta, resid, rss = _lstsq_rss(dep, X)
    nobs = dep.size
    dof = nobs - X.shape[1]
    if dof <= 0:
        raise InsufficientDataError("adf_test: no residual degrees of freedom")
    s2 = rss / dof
    xtx_inv = np.linalg.inv(X.T @ X)
    se_gamma = np.sqrt(s2 * xtx_inv[1, 1])
    if se_gamma == 0.0:
        raise DegenerateInputError("adf_test: zero standard error on the lagged level")
    tau = float(beta[1] / se_gamma)

    return AdfResult(
        statistic=tau,
        pvalue=mackinnon_pvalue(tau),
        lags=chosen,
        nobs=nobs,
        critical_values=mackinnon_crit(nobs),
    )


def sample_autocorrelations(series: np.ndarray, max_lag: int) -> np.ndarray:
    """Biased sample autocorrelations at lags 1..max_lag."""
    x = _check_series(series, 2, "sample_autocorrelations")
    n = x.size
    if not 1 <= max_lag <= n - 1:
        raise ValueError(f"max_lag must be in [1, {n - 1}], got {max_lag}")
    centered = x - x.mean()
    denom = float(centered @ centered)
    if denom == 0.0:
        raise DegenerateInputError("sample_autocorrelations: series is constant")
    acf = np.empty(max_lag)
    for j in range(1, max_lag + 1):
        acf[j - 1] = float(centered[j:] @ centered[:-j]) / denom
    return acf


def ljung_box(series: np.ndarray, max_lag: int) -> list[QStat]:
    """Ljung-Box Q statistics for lags 1..max_lag.

    Q(k) = n (n+2) sum_{j<=k} acf_j^2 / (n - j), referred to chi-square(k).
    Requires max_lag < n/2 so the tested lags stay well inside the sample.
    """
    x = _check_series(series, 3, "ljung_box")
    n = x.size
    if max_lag < 1:
        raise ValueError(f"max_lag must be >= 1, got {max_lag}")
    if max_lag >= n / 2:
        raise InsufficientDataError(
            f"ljung_box: max_lag {max_lag} too large for {n} observations (need max_lag < n/2)"
        )
    acf = sample_autocorrelations(x, max_lag)
    out: list[QStat] = []
    q = 0.0
    for k in range(1, max_lag + 1):
        q += acf[k - 1] ** 2 / (n - k)
        statistic = n * (n + 2.0) * q
        out.append(
            QStat(lag=k, statistic=float(statistic), pvalue=float(stats.chi2.sf(statistic, k)))
        )
    return out


def jarque_bera(series: np.ndarray) -> JbResult:
    """Jarque-Bera normality test from raw moment-ratio skewness and kurtosis.

    JB = n/6 (S^2 + (K - 3)^2 / 4), referred to chi-square(2).  K is raw
    kurtosis (normal = 3), not excess, and neither moment is bias adjusted.
    """
    x = _check_series(series, 4, "jarque_bera")
    n = x.size
    centered = x - x.mean()
    m2 = float(np.mean(centered**2))
    if m2 == 0.0:
        raise DegenerateInputError("jarque_bera: series is constant")
    skew = float(np.mean(centered**3)) / m2**1.5
    kurt = float(np.mean(centered**4)) / m2**2
    statistic = n / 6.0 * (skew**2 + (kurt - 3.0) ** 2 / 4.0)
    return JbResult(
        statistic=float(statistic),
        pvalue=float(stats.chi2.sf(statistic, 2)),
        skewness=skew,
        kurtosis=kurt,
    )


def arch_lm(residuals: np.ndarray, lags: int = 1) -> ArchLmResult:
    """Engle's LM test for ARCH effects in a residual series.

    Regresses squared residuals on their own ``lags`` lags plus a constant.
    The LM form is T R^2 against chi-square(lags); the F form tests the lag
    block against F(lags, T - lags - 1), T being the regression sample size.
    """
    if lags < 1:
        raise ValueError(f"lags must be >= 1, got {lags}")
    e = _check_series(residuals, lags + 3, "arch_lm")
    n = e.size
    e2 = e**2
    rows = np.arange(lags, n)
    t_eff = rows.size
    dep = e2[rows]
    cols = [np.ones(t_eff)]
    for j in range(1, lags + 1):
        cols.append(e2[rows - j])
    X = np.column_stack(cols)

    tss = float(np.sum((dep - dep.mean()) ** 2))
    if tss == 0.0:
        raise DegenerateInputError("arch_lm: squared residuals are constant")
    _, _, rss = _lstsq_rss(dep, X)
    r2 = 1.0 - rss / tss

    lm = t_eff * r2
    dof2 = t_eff - lags - 1
    if dof2 <= 0:
        raise InsufficientDataError("arch_lm: no degrees of freedom for the F form")
    f_stat = (r2 / lags) / ((1.0 - r2) / dof2)
    return ArchLmResult(
        lags=lags,
        lm_statistic=float(lm),
        lm_pvalue=float(stats.chi2.sf(lm, lags)),
        f_statistic=float(f_stat),
        f_pvalue=float(stats.f.sf(f_stat, lags, dof2)),
        nobs=t_eff,
    )


def durbin_watson(residuals: np.ndarray) -> float:
    """Durbin-Watson statistic sum (e_t - e_{t-1})^2 / sum e_t^2."""
    e = _check_series(residuals, 2, "durbin_watson")
    denom = float(e @ e)
    if denom == 0.0:
        raise DegenerateInputError("durbin_watson: residuals are identically zero")
    return float(np.sum(np.diff(e) ** 2) / denom)
