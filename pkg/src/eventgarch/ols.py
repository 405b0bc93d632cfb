"""Ordinary least squares with classical inference.

The solver goes through a QR decomposition rather than the normal equations,
both for numerical stability and because the inverse cross-product matrix
needed for classical standard errors falls out of the R factor directly.
The log-likelihood is the Gaussian one concentrated over the error variance,
and the information criteria are per-observation, so OLS and maximum
likelihood fits of the same data land on one comparable scale.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import linalg, stats

from .criteria import gaussian_concentrated_loglik, information_criteria
from .diagnostics import durbin_watson
from .errors import DegenerateInputError, InsufficientDataError


@dataclass(frozen=True)
class OlsFit:
    """Result of one least-squares regression.

    Arrays are read-only and ordered like ``names``.  ``f_statistic`` and
    ``f_pvalue`` are NaN when the regression has no intercept or only an
    intercept, where the usual overall F test is not defined.
    """

    names: tuple[str, ...]
    coefficients: np.ndarray
    std_errors: np.ndarray
    t_stats: np.ndarray
    pvalues: np.ndarray
    r_squared: float
    f_statistic: float
    f_pvalue: float
    log_likelihood: float
    aic: float
    sic: float
    dw: float
    residuals: np.ndarray
    fitted: np.ndarray
    n: int
    k: int


def f_from_r_squared(r_squared: float, n: int, k: int) -> float:
    """Overall F statistic implied by R-squared for a regression with an
    intercept: (R^2 / (k-1)) / ((1 - R^2) / (n - k))."""
    if k < 2 or n <= k:
        raise ValueError(f"need k >= 2 and n > k, got n={n}, k={k}")
    if not 0.0 <= r_squared < 1.0:
        raise ValueError(f"r_squared must lie in [0, 1), got {r_squared}")
    return float((r_squared / (k - 1)) / ((1.0 - r_squared) / (n - k)))


def fit_ols(
    y: np.ndarray,
    x: np.ndarray,
    *,
    names: tuple[str, ...] | None = None,
    include_intercept: bool = True,
) -> OlsFit:
    """Fit y on x (one column per regressor) by least squares.

    Standard errors are classical: s^2 (X'X)^-1 with s^2 = RSS / (n - k).
    Coefficient p-values use the Student t distribution with n - k degrees
    of freedom.  R-squared is centered when an intercept is present and
    uncentered otherwise.  Rank-deficient designs raise; a perfect fit does
    not, it just drives the inference fields to their limits.
    """
    y = np.asarray(y, dtype=float)
    x = np.asarray(x, dtype=float)
    if y.ndim != 1:
        raise ValueError(f"y must be 1-d, got shape {y.shape}")
    if x.ndim == 1:
        x = x[:, None]
    if x.ndim != 2 or x.shape[0] != y.size:
        raise ValueError(f"x shape {x.shape} does not match y length {y.size}")
    if not (np.all(np.isfinite(y)) and np.all(np.isfinite(x))):
        raise DegenerateInputError("fit_ols: inputs contain non-finite values")

    n = y.size
    if include_intercept:
        X = np.column_stack([np.ones(n), x])
        default_names = ("const",) + tuple(f"x{i}" for i in range(1, x.shape[1] + 1))
    else:
        X = x.copy()
        default_names = tuple(f"x{i}" for i in range(1, x.shape[1] + 1))
    k = X.shape[1]
    if names is None:
        names = default_names
    if len(names) != k:
        raise ValueError(f"expected {k} names, got {len(names)}")
    if n <= k:
        raise InsufficientDataError(f"fit_ols: need n > k, got n={n}, k={k}")

    q_factor, r_factor = np.linalg.qr(X, mode="reduced")
    diag = np.abs(np.diag(r_factor))
    tol = max(X.shape) * np.finfo(float).eps * (diag.max() if diag.size else 0.0)
    if np.any(diag <= tol):
        raise DegenerateInputError("fit_ols: design matrix is rank deficient")

    beta = linalg.solve_triangular(r_factor, q_factor.T @ y)
    fitted = X @ beta
    residuals = y - fitted
    rss = float(residuals @ residuals)

    if include_intercept:
        tss = float(np.sum((y - y.mean()) ** 2))
    else:
        tss = float(y @ y)
    if tss == 0.0:
        raise DegenerateInputError("fit_ols: dependent variable is constant")
    r_squared = 1.0 - rss / tss

    # A perfect fit is legal (rss 0): inference degenerates to its limits
    # (zero standard errors, infinite t and F) rather than failing the fit.
    dof = n - k
    s2 = rss / dof
    r_inv = linalg.solve_triangular(r_factor, np.eye(k))
    xtx_inv = r_inv @ r_inv.T
    with np.errstate(divide="ignore", invalid="ignore"):
        std_errors = np.sqrt(s2 * np.diag(xtx_inv))
        t_stats = beta / std_errors
        pvalues = 2.0 * stats.t.sf(np.abs(t_stats), dof)

        if include_intercept and k >= 2:
            if r_squared < 1.0:
                f_statistic = f_from_r_squared(r_squared, n, k)
                f_pvalue = float(stats.f.sf(f_statistic, k - 1, dof))
            else:
                f_statistic = float("inf")
                f_pvalue = 0.0
        else:
            f_statistic = float("nan")
            f_pvalue = float("nan")

    ll = gaussian_concentrated_loglik(rss, n)
    aic, sic = information_criteria(ll, k, n) if np.isfinite(ll) else (-np.inf, -np.inf)

    for arr in (beta, std_errors, t_stats, pvalues, residuals, fitted):
        arr.flags.writeable = False

    return OlsFit(
        names=tuple(names),
        coefficients=beta,
        std_errors=std_errors,
        t_stats=t_stats,
        pvalues=np.asarray(pvalues),
        r_squared=float(r_squared),
        f_statistic=f_statistic,
        f_pvalue=f_pvalue,
        log_likelihood=ll,
        aic=aic,
        sic=sic,
        dw=durbin_watson(residuals) if rss > 0.0 else float("nan"),
        residuals=residuals,
        fitted=fitted,
        n=n,
        k=k,
    )
