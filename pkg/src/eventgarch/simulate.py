"""Simulation of the event-dummy GARCH process.

The generator draws standardized innovations for burn-in plus sample, then
the exogenous regressor, in that fixed order, so one seed pins the whole
path bit for bit.  The variance recursion starts at the unconditional level
c3 / (1 - c4 - c5); the dummy is applied only inside the recorded sample,
never during burn-in.  Simulation requires a covariance-stationary
configuration (c3 > 0 and c4 + c5 < 1) even though estimation does not
impose one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DataValidationError
from .garch import DISTRIBUTIONS, GarchParams, _shape_constants, _validate_shape


@dataclass(frozen=True)
class SimConfig:
    """Everything that determines one simulated path.

    ``dummy_start``/``dummy_end`` index the recorded sample (0-based,
    inclusive); None means the dummy is never active.  ``x_scale`` is the
    standard deviation of the iid normal exogenous regressor.
    """

    n: int
    params: GarchParams
    distribution: str = "gaussian"
    seed: int = 0
    burn_in: int = 500
    dummy_start: int | None = None
    dummy_end: int | None = None
    x_scale: float = 1.0

    def __post_init__(self) -> None:
        if self.n < 1:
            raise DataValidationError(f"n must be >= 1, got {self.n}")
        if self.burn_in < 0:
            raise DataValidationError(f"burn_in must be >= 0, got {self.burn_in}")
        if self.distribution not in DISTRIBUTIONS:
            raise DataValidationError(
                f"distribution must be one of {DISTRIBUTIONS}, got {self.distribution!r}"
            )
        p = self.params
        if not p.c3 > 0.0:
            raise DataValidationError(f"simulation needs c3 > 0, got {p.c3}")
        if not p.c4 + p.c5 < 1.0:
            raise DataValidationError(
                f"simulation needs c4 + c5 < 1, got {p.c4 + p.c5}"
            )
        if self.distribution != "gaussian":
            if p.nu is None:
                raise DataValidationError(f"{self.distribution} needs params.nu")
            try:
                _validate_shape(self.distribution, p.nu)
            except ValueError as exc:
                raise DataValidationError(str(exc)) from None
        if (self.dummy_start is None) != (self.dummy_end is None):
            raise DataValidationError("dummy_start and dummy_end must be set together")
        if self.dummy_start is not None:
            if not 0 <= self.dummy_start <= self.dummy_end:
                raise DataValidationError(
                    f"need 0 <= dummy_start <= dummy_end, got "
                    f"[{self.dummy_start}, {self.dummy_end}]"
                )
            if self.dummy_end >= self.n:
                raise DataValidationError(
                    f"dummy_end {self.dummy_end} is outside the sample of {self.n}"
                )
        if self.x_scale < 0.0:
            raise DataValidationError(f"x_scale must be >= 0, got {self.x_scale}")


@dataclass(frozen=True)
class SimResult:
    """One simulated path with everything needed to refit the model."""

    config: SimConfig
    y: np.ndarray
    x: np.ndarray
    dummy: np.ndarray
    true_variances: np.ndarray


def _standardized_draws(rng: np.random.Generator, distribution: str, nu: float | None, size: int) -> np.ndarray:
    """Zero-mean, unit-variance innovations for the requested distribution."""
    if distribution == "gaussian":
        return rng.standard_normal(size)
    if distribution == "student_t":
        return rng.standard_t(nu, size) * math.sqrt((nu - 2.0) / nu)
    # GED via the gamma representation: with W ~ Gamma(1/nu, 1),
    # |z| = lam (2 W)^(1/nu) has the right magnitude distribution.
    _, _, lam = _shape_constants("ged", nu)
    magnitude = lam * (2.0 * rng.standard_gamma(1.0 / nu, size)) ** (1.0 / nu)
    signs = rng.integers(0, 2, size) * 2.0 - 1.0
    return magnitude * signs


def simulate_garch(config: SimConfig) -> SimResult:
    """Generate one path of the process; identical configs give identical
    arrays, bit for bit."""
    p = config.params
    rng = np.random.default_rng(config.seed)
    total = config.burn_in + config.n

    z = _standardized_draws(rng, config.distribution, p.nu, total)
    x = rng.normal(0.0, config.x_scale, config.n) if config.x_scale > 0.0 else np.zeros(config.n)

    dummy = np.zeros(config.n)
    if config.dummy_start is not None:
        dummy[config.dummy_start : config.dummy_end + 1] = 1.0

    floor = 1e-12
    sig2 = np.empty(total)
    eps = np.empty(total)
    sig2[0] = p.c3 / (1.0 - p.c4 - p.c5)
    eps[0] = math.sqrt(sig2[0]) * z[0]
    for t in range(1, total):
        active = dummy[t - config.burn_in] if t >= config.burn_in else 0.0
        v = p.c3 + p.c4 * eps[t - 1] ** 2 + p.c5 * sig2[t - 1] + p.c6 * active
        if v < floor:
            v = floor
        sig2[t] = v
        eps[t] = math.sqrt(v) * z[t]

    sample = slice(config.burn_in, total)
    y = p.c1 + p.c2 * x + eps[sample]
    true_variances = sig2[sample].copy()

    for arr in (y, x, dummy, true_variances):
        arr.flags.writeable = False

    return SimResult(config=config, y=y, x=x, dummy=dummy, true_variances=true_variances)
