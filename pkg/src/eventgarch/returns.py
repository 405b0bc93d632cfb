"""Percent returns and descriptive statistics.

Returns are computed in percent: ``100 * ln(P_t / P_{t-1})`` for the log
method and ``100 * (P_t / P_{t-1} - 1)`` for simple returns.  A series of n
prices yields n - 1 returns stamped with the date of the later price.

Descriptive statistics follow the usual small-sample conventions: standard
deviation with the n - 1 divisor, bias-adjusted skewness and bias-adjusted
excess kurtosis.  A zero-variance series has no defined shape, so skewness
and kurtosis come back as ``None`` rather than a misleading 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import date

import numpy as np

from .errors import DegenerateInputError, InsufficientDataError
from .market_data import PriceSeries

_METHODS = ("log", "simple")


@dataclass(frozen=True)
class ReturnSeries:
    """Percent returns for one instrument, one per date."""

    name: str
    dates: tuple[date, ...]
    _values: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.dates) != len(self._values):
            raise InsufficientDataError("return dates and values differ in length")

    def __len__(self) -> int:
        return len(self._values)

    def values(self) -> np.ndarray:
        arr = np.array(self._values, dtype=float)
        arr.flags.writeable = False
        return arr


@dataclass(frozen=True)
class DescriptiveStats:
    """Summary statistics of one sample.

    ``skewness`` and ``excess_kurtosis`` are ``None`` when the sample is too
    short for the bias adjustment (n < 3, resp. n < 4) or has zero variance.
    """

    n: int
    mean: float
    se_mean: float
    std_dev: float
    minimum: float
    median: float
    maximum: float
    skewness: float | None
    excess_kurtosis: float | None


def compute_returns(prices: PriceSeries, method: str = "log") -> ReturnSeries:
    """Percent returns from a price series.

    Needs at least two prices.  The i-th return is stamped with the date of
    price i + 1.
    """
    if method not in _METHODS:
        raise ValueError(f"method must be one of {_METHODS}, got {method!r}")
    if len(prices) < 2:
        raise InsufficientDataError(
            f"series '{prices.name}' has {len(prices)} observation(s), need >= 2"
        )
    levels = prices.values()
    if method == "log":
        rets = 100.0 * np.diff(np.log(levels))
    else:
        rets = 100.0 * (levels[1:] / levels[:-1] - 1.0)
    return ReturnSeries(
        name=prices.name,
        dates=prices.dates[1:],
        _values=tuple(float(r) for r in rets),
    )


def descriptive_stats(values: np.ndarray) -> DescriptiveStats:
    """Summary statistics with small-sample bias adjustments.

    Standard deviation uses the n - 1 divisor and the standard error of the
    mean is std_dev / sqrt(n).  Skewness is the adjusted Fisher-Pearson
    coefficient g1 * sqrt(n (n-1)) / (n - 2); excess kurtosis is
    ((n+1) g2 + 6) (n-1) / ((n-2)(n-3)) where g2 is raw excess kurtosis.
    """
    x = np.asarray(values, dtype=float)
    if x.ndim != 1:
        raise ValueError(f"expected a 1-d sample, got shape {x.shape}")
    n = x.size
    if n < 2:
        raise InsufficientDataError(f"need >= 2 observations, got {n}")
    if not np.all(np.isfinite(x)):
        raise DegenerateInputError("sample contains non-finite values")

    mean = float(np.mean(x))
    std_dev = float(np.std(x, ddof=1))
    se_mean = std_dev / np.sqrt(n)

    centered = x - mean
    m2 = float(np.mean(centered**2))

    skewness: float | None = None
    excess_kurtosis: float | None = None
    if m2 > 0.0:
        if n >= 3:
            g1 = float(np.mean(centered**3)) / m2**1.5
            skewness = g1 * np.sqrt(n * (n - 1.0)) / (n - 2.0)
        if n >= 4:
            g2 = float(np.mean(centered**4)) / m2**2 - 3.0
            excess_kurtosis = ((n + 1.0) * g2 + 6.0) * (n - 1.0) / ((n - 2.0) * (n - 3.0))

    return DescriptiveStats(
        n=n,
        mean=mean,
        se_mean=se_mean,
        std_dev=std_dev,
        minimum=float(np.min(x)),
        median=float(np.median(x)),
        maximum=float(np.max(x)),
        skewness=skewness,
        excess_kurtosis=excess_kurtosis,
    )
