"""Per-observation information criteria.

Both criteria are normalized by sample size so models fitted on the same data
are comparable regardless of scale:

    AIC = (-2 ll + 2 k) / n
    SIC = (-2 ll + k ln n) / n
"""

from __future__ import annotations

import numpy as np


def information_criteria(log_likelihood: float, k: int, n: int) -> tuple[float, float]:
    """Per-observation AIC and SIC from a maximized log-likelihood."""
    if n <= 0:
        raise ValueError(f"n must be positive, got {n}")
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    aic = (-2.0 * log_likelihood + 2.0 * k) / n
    sic = (-2.0 * log_likelihood + k * np.log(n)) / n
    return float(aic), float(sic)


def gaussian_concentrated_loglik(rss: float, n: int) -> float:
    """Gaussian log-likelihood of a least-squares fit, concentrated over the
    error variance: -(n/2) (1 + ln 2 pi + ln(rss / n))."""
    if n <= 0:
        raise ValueError(f"n must be positive, got {n}")
    if rss < 0:
        raise ValueError(f"rss must be non-negative, got {rss}")
    if rss == 0.0:
        return float("inf")
    return float(-(n / 2.0) * (1.0 + np.log(2.0 * np.pi) + np.log(rss / n)))
