"""GARCH(1,1) estimation with an event dummy in the variance equation.

Model, with r the dependent series and x a single exogenous regressor:

    mean:      r_t = c1 + c2 x_t + eps_t
    variance:  sig2_t = c3 + c4 eps_{t-1}^2 + c5 sig2_{t-1} + c6 dummy_t

The variance intercept, ARCH, GARCH and dummy coefficients are deliberately
unconstrained in sign; a hard floor keeps each conditional variance positive
and every clamp is counted so a fit that leans on the floor is visible.
Innovations are Gaussian, Student t (shape > 2) or GED (shape > 0), and the
shape can be estimated or pinned.

Estimation maximizes the exact log-likelihood by BFGS from several fixed
starting points, with the shape parameter optimized on an unconstrained log
scale.  Standard errors come from the numerical Hessian of the
log-likelihood in the natural parameter space; when that Hessian cannot be
inverted the fit is still returned, with NaN in place of the unavailable
standard errors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize, stats

from . import _kernels
from .criteria import information_criteria
from .diagnostics import durbin_watson
from .errors import DegenerateInputError, EstimationError, InsufficientDataError
from .ols import fit_ols

__all__ = [
    "DISTRIBUTIONS",
    "GarchSpec",
    "GarchParams",
    "GarchFit",
    "variance_recursion",
    "log_likelihood",
    "fit_garch",
    "standard_errors",
    "hessian_standard_errors",
    "standardized_residuals",
    "information_criteria",
]

DISTRIBUTIONS = ("gaussian", "ged", "student_t")
_DIST_CODE = {
    "gaussian": _kernels.DIST_GAUSSIAN,
    "student_t": _kernels.DIST_STUDENT_T,
    "ged": _kernels.DIST_GED,
}

VARIANCE_FLOOR = _kernels.VARIANCE_FLOOR

_MIN_OBS = 50

# Convergence is declared when the gradient inf-norm and the improvement of
# the last polishing round both fall below these.
_GRAD_TOL = 1e-5
_IMPROVE_TOL = 1e-8

# Starting points: (scale on the variance intercept, ARCH start, GARCH start).
# The first row is the primary start; the rest guard against local maxima.
_START_VARIATIONS = (
    (1.0, 0.05, 0.90),
    (1.0, 0.10, 0.60),
    (2.0, 0.20, 0.30),
    (0.5, 0.01, 0.96),
)

_SHAPE_START = {"student_t": 10.0, "ged": 1.5}

# Bound on the internal log-scale shape parameter; outside it the shape is
# numerically meaningless and the objective reports +inf.
_ETA_BOUND = 30.0


@dataclass(frozen=True)
class GarchSpec:
    """What to fit: innovation distribution and optional fixed shape."""

    distribution: str = "gaussian"
    shape_fixed: float | None = None
    variance_floor: float = VARIANCE_FLOOR

    def __post_init__(self) -> None:
        if self.distribution not in DISTRIBUTIONS:
            raise ValueError(
                f"distribution must be one of {DISTRIBUTIONS}, got {self.distribution!r}"
            )
        if self.variance_floor <= 0.0:
            raise ValueError(f"variance_floor must be positive, got {self.variance_floor}")
        if self.shape_fixed is not None:
            _validate_shape(self.distribution, self.shape_fixed)
        if self.distribution == "gaussian" and self.shape_fixed is not None:
            raise ValueError("gaussian innovations take no shape parameter")

    @property
    def estimates_shape(self) -> bool:
        return self.distribution != "gaussian" and self.shape_fixed is None


@dataclass(frozen=True)
class GarchParams:
    """Coefficients of the mean and variance equations, plus the shape."""

    c1: float
    c2: float
    c3: float
    c4: float
    c5: float
    c6: float
    nu: float | None = None

    def mean_variance_array(self) -> np.ndarray:
        return np.array([self.c1, self.c2, self.c3, self.c4, self.c5, self.c6])


@dataclass(frozen=True)
class GarchFit:
    """A fitted model with inference and per-observation outputs.

    ``estimates`` and friends are ordered like ``param_names``; a NaN
    standard error marks a parameter whose curvature was unusable.
    ``r_squared`` and ``dw`` describe the mean equation evaluated at the
    fitted coefficients.
    """

    spec: GarchSpec
    params: GarchParams
    param_names: tuple[str, ...]
    estimates: np.ndarray
    std_errors: np.ndarray
    z_stats: np.ndarray
    pvalues: np.ndarray
    log_likelihood: float
    aic: float
    sic: float
    k: int
    n: int
    converged: bool
    iterations: int
    clamp_count: int
    conditional_variances: np.ndarray
    standardized_residuals: np.ndarray
    residuals: np.ndarray
    r_squared: float
    dw: float


def _validate_shape(distribution: str, nu: float) -> None:
    if distribution == "student_t" and not nu > 2.0:
        raise ValueError(f"student_t shape must exceed 2, got {nu}")
    if distribution == "ged" and not nu > 0.0:
        raise ValueError(f"ged shape must be positive, got {nu}")


def _shape_constants(distribution: str, nu: float | None) -> tuple[float, float, float]:
    """Constants consumed by the likelihood kernel; see its docstring."""
    if distribution == "gaussian":
        return 0.0, 0.0, 0.0
    if nu is None:
        raise ValueError(f"{distribution} innovations need a shape parameter")
    if distribution == "student_t":
        sa = math.lgamma((nu + 1.0) / 2.0) - math.lgamma(nu / 2.0) - 0.5 * math.log(
            math.pi * (nu - 2.0)
        )
        return sa, (nu + 1.0) / 2.0, nu - 2.0
    log_lam = 0.5 * (
        (-2.0 / nu) * math.log(2.0) + math.lgamma(1.0 / nu) - math.lgamma(3.0 / nu)
    )
    sa = math.log(nu) - log_lam - (1.0 + 1.0 / nu) * math.log(2.0) - math.lgamma(1.0 / nu)
    return sa, nu, math.exp(log_lam)


def _as_float_array(arr: np.ndarray, name: str) -> np.ndarray:
    out = np.ascontiguousarray(arr, dtype=float)
    if out.ndim != 1:
        raise ValueError(f"{name} must be 1-d, got shape {out.shape}")
    if not np.all(np.isfinite(out)):
        raise DegenerateInputError(f"{name} contains non-finite values")
    return out


def _validate_triplet(y: np.ndarray, x: np.ndarray, dummy: np.ndarray):
    y = _as_float_array(y, "y")
    x = _as_float_array(x, "x")
    d = _as_float_array(dummy, "dummy")
    if not (y.size == x.size == d.size):
        raise ValueError(
            f"length mismatch: y has {y.size}, x has {x.size}, dummy has {d.size}"
        )
    if not np.all((d == 0.0) | (d == 1.0)):
        raise ValueError("dummy must contain only 0 and 1")
    return y, x, d


def variance_recursion(
    params: GarchParams,
    residuals: np.ndarray,
    dummy: np.ndarray,
    initial_variance: float,
    *,
    floor: float = VARIANCE_FLOOR,
) -> np.ndarray:
    """Conditional-variance path implied by residuals and coefficients.

    The first element is ``initial_variance``; later elements follow the
    one-lag recursion with the dummy entering contemporaneously.  Values
    below the floor are clamped up to it, so the result is always positive.
    """
    eps = _as_float_array(residuals, "residuals")
    d = _as_float_array(dummy, "dummy")
    if eps.size != d.size:
        raise ValueError(f"length mismatch: residuals {eps.size}, dummy {d.size}")
    if eps.size == 0:
        raise InsufficientDataError("variance_recursion: empty residual series")
    if not (np.isfinite(initial_variance) and initial_variance > 0.0):
        raise ValueError(f"initial_variance must be positive, got {initial_variance}")
    sig2, _ = _kernels.variance_path(
        eps**2, d, params.c3, params.c4, params.c5, params.c6, initial_variance, floor
    )
    return sig2


def _default_initial_variance(y: np.ndarray, x: np.ndarray) -> float:
    fit = fit_ols(y, x)
    return float(np.var(fit.residuals, ddof=1))


def log_likelihood(
    params: GarchParams,
    y: np.ndarray,
    x: np.ndarray,
    dummy: np.ndarray,
    distribution: str = "gaussian",
    *,
    initial_variance: float | None = None,
    floor: float = VARIANCE_FLOOR,
) -> float:
    """Total log-likelihood of the data at the given parameters.

    ``initial_variance`` defaults to the sample variance of the OLS
    residuals of the mean equation.  A non-finite result raises
    :class:`EstimationError` instead of leaking NaN to the caller.
    """
    if distribution not in DISTRIBUTIONS:
        raise ValueError(f"distribution must be one of {DISTRIBUTIONS}, got {distribution!r}")
    y, x, d = _validate_triplet(y, x, dummy)
    if distribution != "gaussian":
        if params.nu is None:
            raise ValueError(f"{distribution} innovations need params.nu")
        _validate_shape(distribution, params.nu)
    if initial_variance is None:
        initial_variance = _default_initial_variance(y, x)
    if not (np.isfinite(initial_variance) and initial_variance > 0.0):
        raise ValueError(f"initial_variance must be positive, got {initial_variance}")

    sa, sb, sc = _shape_constants(distribution, params.nu)
    ll, _ = _kernels.garch_loglik(
        y, x, d,
        params.c1, params.c2, params.c3, params.c4, params.c5, params.c6,
        initial_variance, floor, _DIST_CODE[distribution], sa, sb, sc,
    )
    if not np.isfinite(ll):
        raise EstimationError(
            f"log-likelihood is not finite at c=({params.c1:.6g}, {params.c2:.6g}, "
            f"{params.c3:.6g}, {params.c4:.6g}, {params.c5:.6g}, {params.c6:.6g}), "
            f"nu={params.nu}"
        )
    return float(ll)


def _natural_params(spec: GarchSpec, theta: np.ndarray) -> tuple[np.ndarray, float | None] | None:
    """Map the internal optimizer vector to natural coefficients and shape.

    Returns None when the shape component is outside its usable numeric
    range, which the objective treats as an infinitely bad point.
    """
    coefs = theta[:6]
    if not spec.estimates_shape:
        return coefs, spec.shape_fixed
    eta = theta[6]
    if not (-_ETA_BOUND <= eta <= _ETA_BOUND):
        return None
    if spec.distribution == "student_t":
        return coefs, 2.0 + math.exp(eta)
    return coefs, math.exp(eta)


def _internal_start(spec: GarchSpec, coefs: np.ndarray) -> np.ndarray:
    if not spec.estimates_shape:
        return np.asarray(coefs, dtype=float)
    nu0 = _SHAPE_START[spec.distribution]
    if spec.distribution == "student_t":
        eta = math.log(nu0 - 2.0)
    else:
        eta = math.log(nu0)
    return np.append(np.asarray(coefs, dtype=float), eta)


def _make_objective(spec: GarchSpec, y, x, d, init_var):
    dist_code = _DIST_CODE[spec.distribution]
    floor = spec.variance_floor

    def objective(theta: np.ndarray) -> float:
        if not np.all(np.isfinite(theta)):
            return np.inf
        nat = _natural_params(spec, theta)
        if nat is None:
            return np.inf
        coefs, nu = nat
        try:
            sa, sb, sc = _shape_constants(spec.distribution, nu)
        except (OverflowError, ValueError):
            return np.inf
        if not (np.isfinite(sa) and np.isfinite(sb) and np.isfinite(sc)):
            return np.inf
        ll, _ = _kernels.garch_loglik(
            y, x, d,
            coefs[0], coefs[1], coefs[2], coefs[3], coefs[4], coefs[5],
            init_var, floor, dist_code, sa, sb, sc,
        )
        if not np.isfinite(ll):
            return np.inf
        return -ll

    return objective


def _fd_gradient(func, theta: np.ndarray, f0: float | None = None) -> np.ndarray:
    """Central-difference gradient, falling back to one-sided steps when a
    probe lands on an infeasible point."""
    grad = np.empty(theta.size)
    for i in range(theta.size):
        h = 1e-6 * max(abs(theta[i]), 1.0)
        up = theta.copy()
        up[i] += h
        down = theta.copy()
        down[i] -= h
        fp = func(up)
        fm = func(down)
        if np.isfinite(fp) and np.isfinite(fm):
            grad[i] = (fp - fm) / (2.0 * h)
            continue
        if f0 is None:
            f0 = func(theta)
        if np.isfinite(fp):
            grad[i] = (fp - f0) / h
        elif np.isfinite(fm):
            grad[i] = (f0 - fm) / h
        else:
            grad[i] = 0.0
    return grad


def _fd_hessian(func, theta: np.ndarray, *, rel_step: float = 1e-4, min_step: float = 1e-6):
    """Central-difference Hessian with per-coordinate steps
    max(rel_step |theta_i|, min_step).  Returns None when any probe is
    non-finite."""
    theta = np.asarray(theta, dtype=float)
    m = theta.size
    steps = np.maximum(rel_step * np.abs(theta), min_step)
    f0 = func(theta)
    if not np.isfinite(f0):
        return None
    hess = np.empty((m, m))
    for i in range(m):
        hi = steps[i]
        up = theta.copy()
        up[i] += hi
        down = theta.copy()
        down[i] -= hi
        hess[i, i] = (func(up) - 2.0 * f0 + func(down)) / hi**2
        for j in range(i + 1, m):
            hj = steps[j]
            pp = theta.copy()
            pp[[i, j]] += (hi, hj)
            pm = theta.copy()
            pm[i] += hi
            pm[j] -= hj
            mp = theta.copy()
            mp[i] -= hi
            mp[j] += hj
            mm = theta.copy()
            mm[[i, j]] -= (hi, hj)
            value = (func(pp) - func(pm) - func(mp) + func(mm)) / (4.0 * hi * hj)
            hess[i, j] = value
            hess[j, i] = value
    if not np.all(np.isfinite(hess)):
        return None
    return hess


def _newton_polish(objective, theta, f, grad, gnorm, max_steps: int = 12):
    """Drive the gradient norm down with damped Newton steps.

    A step is accepted only when it shrinks the gradient inf-norm without
    meaningfully raising the objective; quasi-Newton line searches stall on
    finite-difference noise long before this criterion is met.
    """
    steps_taken = 0
    for _ in range(max_steps):
        if gnorm < _GRAD_TOL / 10.0:
            break
        hess = _fd_hessian(objective, theta)
        if hess is None:
            break
        try:
            delta = np.linalg.solve(hess, -grad)
        except np.linalg.LinAlgError:
            break
        if not np.all(np.isfinite(delta)):
            break
        slack = 1e-10 * max(1.0, abs(f))
        accepted = False
        for scale in (1.0, 0.5, 0.25, 0.1):
            cand = theta + scale * delta
            f_cand = objective(cand)
            if not np.isfinite(f_cand) or f_cand > f + slack:
                continue
            g_cand = _fd_gradient(objective, cand, f_cand)
            gn_cand = float(np.max(np.abs(g_cand)))
            if gn_cand < gnorm:
                theta, f, grad, gnorm = cand, f_cand, g_cand, gn_cand
                steps_taken += 1
                accepted = True
                break
        if not accepted:
            break
    return theta, f, grad, gnorm, steps_taken


def _polish(objective, theta0: np.ndarray):
    """BFGS plus Newton refinement, restarted until stationary.

    Convergence requires the gradient inf-norm under _GRAD_TOL and a final
    round that changed the objective by less than _IMPROVE_TOL.
    """
    theta = np.asarray(theta0, dtype=float)
    f = objective(theta)
    if not np.isfinite(f):
        return None
    iterations = 0
    converged = False
    for _ in range(4):
        f_round_start = f
        result = optimize.minimize(
            objective,
            theta,
            method="BFGS",
            jac=lambda t: _fd_gradient(objective, t),
            options={"gtol": 5e-6, "maxiter": 300},
        )
        iterations += int(result.nit)
        if np.isfinite(result.fun) and float(result.fun) <= f:
            theta = np.asarray(result.x, dtype=float)
            f = float(result.fun)
        grad = _fd_gradient(objective, theta, f)
        gnorm = float(np.max(np.abs(grad)))
        theta, f, grad, gnorm, newton_steps = _newton_polish(objective, theta, f, grad, gnorm)
        iterations += newton_steps
        improvement = abs(f_round_start - f)
        if gnorm < _GRAD_TOL and improvement < _IMPROVE_TOL:
            converged = True
            break
    return theta, f, converged, iterations


def fit_garch(
    spec: GarchSpec,
    y: np.ndarray,
    x: np.ndarray,
    dummy: np.ndarray,
) -> GarchFit:
    """Estimate the model by maximum likelihood.

    Starting values: mean coefficients from OLS; variance intercept at a
    tenth of the OLS residual variance; several fixed ARCH/GARCH seeds to
    reduce the chance of settling on a local maximum.  The best of the
    polished candidates wins on log-likelihood.  A fit that fails the
    convergence criteria is still returned with ``converged`` False.
    """
    y, x, d = _validate_triplet(y, x, dummy)
    n = y.size
    if n < _MIN_OBS:
        raise InsufficientDataError(f"fit_garch: need >= {_MIN_OBS} observations, got {n}")
    if np.std(y) == 0.0:
        raise DegenerateInputError("fit_garch: dependent series is constant")

    ols_fit = fit_ols(y, x)
    init_var = float(np.var(ols_fit.residuals, ddof=1))
    if init_var <= 0.0:
        raise DegenerateInputError("fit_garch: OLS residual variance is zero")

    objective = _make_objective(spec, y, x, d, init_var)

    # Cheap exploration from every start, full polish only of the best
    # basin; GARCH likelihood surfaces are smooth enough that a short
    # quasi-Newton run separates basins reliably.
    explored = []
    exploration_iters = 0
    for c3_scale, arch_start, garch_start in _START_VARIATIONS:
        coefs = np.array(
            [
                ols_fit.coefficients[0],
                ols_fit.coefficients[1],
                0.1 * init_var * c3_scale,
                arch_start,
                garch_start,
                0.0,
            ]
        )
        theta0 = _internal_start(spec, coefs)
        f0 = objective(theta0)
        if not np.isfinite(f0):
            continue
        probe = optimize.minimize(
            objective,
            theta0,
            method="BFGS",
            jac=lambda t: _fd_gradient(objective, t),
            options={"gtol": 1e-3, "maxiter": 60},
        )
        exploration_iters += int(probe.nit)
        if np.isfinite(probe.fun) and float(probe.fun) <= f0:
            explored.append((float(probe.fun), probe.x))
        else:
            explored.append((f0, theta0))
    if not explored:
        raise EstimationError("fit_garch: no starting point gave a finite likelihood")

    best_theta = min(explored, key=lambda c: c[0])[1]
    polished = _polish(objective, best_theta)
    if polished is None:
        raise EstimationError("fit_garch: polishing left the feasible region")
    theta, neg_ll, converged, iterations = polished
    iterations += exploration_iters
    nat = _natural_params(spec, theta)
    if nat is None:
        raise EstimationError("fit_garch: optimizer left the usable shape range")
    coefs, nu = nat

    params = GarchParams(
        c1=float(coefs[0]),
        c2=float(coefs[1]),
        c3=float(coefs[2]),
        c4=float(coefs[3]),
        c5=float(coefs[4]),
        c6=float(coefs[5]),
        nu=None if spec.distribution == "gaussian" else float(nu),
    )

    ll = -float(neg_ll)
    k = 7 if spec.estimates_shape else 6
    aic, sic = information_criteria(ll, k, n)

    residuals = y - params.c1 - params.c2 * x
    sig2, clamp_count = _kernels.variance_path(
        residuals**2, d, params.c3, params.c4, params.c5, params.c6,
        init_var, spec.variance_floor,
    )
    std_resid = residuals / np.sqrt(sig2)

    if spec.estimates_shape:
        names = ("c1", "c2", "c3", "c4", "c5", "c6", "nu")
        theta_nat = np.append(coefs, nu)
    else:
        names = ("c1", "c2", "c3", "c4", "c5", "c6")
        theta_nat = np.asarray(coefs, dtype=float)

    se = _standard_errors_natural(spec, y, x, d, init_var, theta_nat)
    with np.errstate(invalid="ignore", divide="ignore"):
        z_stats = theta_nat / se
        pvalues = 2.0 * stats.norm.sf(np.abs(z_stats))

    tss = float(np.sum((y - y.mean()) ** 2))
    r_squared = 1.0 - float(residuals @ residuals) / tss

    for arr in (theta_nat, se, z_stats, pvalues, sig2, std_resid, residuals):
        arr.flags.writeable = False

    return GarchFit(
        spec=spec,
        params=params,
        param_names=names,
        estimates=theta_nat,
        std_errors=se,
        z_stats=np.asarray(z_stats),
        pvalues=np.asarray(pvalues),
        log_likelihood=ll,
        aic=aic,
        sic=sic,
        k=k,
        n=n,
        converged=bool(converged),
        iterations=int(iterations),
        clamp_count=int(clamp_count),
        conditional_variances=sig2,
        standardized_residuals=std_resid,
        residuals=residuals,
        r_squared=float(r_squared),
        dw=durbin_watson(residuals),
    )


def hessian_standard_errors(loglik_fn, theta: np.ndarray) -> np.ndarray:
    """Standard errors from the numerical Hessian of a log-likelihood.

    Central differences with per-coordinate steps max(1e-4 |theta_i|, 1e-6).
    Returns NaN for every parameter when the Hessian is non-invertible or
    non-finite, and for any parameter whose implied variance is not
    positive; it never raises on curvature problems.
    """
    theta = np.asarray(theta, dtype=float)
    m = theta.size
    nan_out = np.full(m, np.nan)

    hess = _fd_hessian(loglik_fn, theta)
    if hess is None:
        return nan_out
    try:
        cov = np.linalg.inv(-hess)
    except np.linalg.LinAlgError:
        return nan_out
    diag = np.diag(cov)
    se = np.full(m, np.nan)
    positive = np.isfinite(diag) & (diag > 0.0)
    se[positive] = np.sqrt(diag[positive])
    return se


def _standard_errors_natural(
    spec: GarchSpec,
    y: np.ndarray,
    x: np.ndarray,
    d: np.ndarray,
    init_var: float,
    theta_nat: np.ndarray,
) -> np.ndarray:
    dist_code = _DIST_CODE[spec.distribution]
    floor = spec.variance_floor
    estimates_shape = spec.estimates_shape
    fixed_nu = spec.shape_fixed

    def total_ll(theta: np.ndarray) -> float:
        nu = theta[6] if estimates_shape else fixed_nu
        if spec.distribution == "student_t" and (nu is None or nu <= 2.0):
            return np.nan
        if spec.distribution == "ged" and (nu is None or nu <= 0.0):
            return np.nan
        try:
            sa, sb, sc = _shape_constants(spec.distribution, nu)
        except (OverflowError, ValueError):
            return np.nan
        ll, _ = _kernels.garch_loglik(
            y, x, d,
            theta[0], theta[1], theta[2], theta[3], theta[4], theta[5],
            init_var, floor, dist_code, sa, sb, sc,
        )
        return ll

    return hessian_standard_errors(total_ll, theta_nat)


def standard_errors(
    params: GarchParams,
    y: np.ndarray,
    x: np.ndarray,
    dummy: np.ndarray,
    distribution: str = "gaussian",
    *,
    shape_fixed: float | None = None,
    initial_variance: float | None = None,
) -> np.ndarray:
    """Hessian standard errors at given parameter values.

    Ordered (c1..c6) and, when the distribution has a free shape, (c1..c6,
    nu).  Pass ``shape_fixed`` to treat the shape as known and exclude it.
    """
    spec = GarchSpec(distribution=distribution, shape_fixed=shape_fixed)
    y, x, d = _validate_triplet(y, x, dummy)
    if initial_variance is None:
        initial_variance = _default_initial_variance(y, x)
    theta = params.mean_variance_array()
    if spec.estimates_shape:
        if params.nu is None:
            raise ValueError(f"{distribution} innovations need params.nu")
        theta = np.append(theta, params.nu)
    return _standard_errors_natural(spec, y, x, d, float(initial_variance), theta)


def standardized_residuals(fit: GarchFit) -> np.ndarray:
    """Residuals divided by the conditional standard deviation."""
    return fit.standardized_residuals
