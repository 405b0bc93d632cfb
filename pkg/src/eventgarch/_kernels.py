"""Hot loops for the conditional-variance recursion and the log-likelihood.

Compiled with numba when it is importable; otherwise the same functions run
as plain Python, which keeps every feature working at reduced speed.  The
kernels take only scalars and contiguous float arrays so the compiled and
interpreted paths behave identically.
"""

from __future__ import annotations

import math

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def wrap(func):
            return func

        return wrap


# Conditional variances below this are clamped up to it; each clamp is counted.
VARIANCE_FLOOR = 1e-12

_HALF_LOG_2PI = 0.9189385332046727  # 0.5 * ln(2 pi)

# Distribution codes shared with the wrappers.
DIST_GAUSSIAN = 0
DIST_STUDENT_T = 1
DIST_GED = 2


@njit(cache=True)
def variance_path(eps2, dummy, c3, c4, c5, c6, init_var, floor):
    """sigma2[0] = init_var; sigma2[t] = c3 + c4 eps2[t-1] + c5 sigma2[t-1]
    + c6 dummy[t], clamped below at ``floor``.  Returns (path, clamp count)."""
    n = eps2.shape[0]
    sig2 = np.empty(n)
    v = init_var
    if v < floor:
        v = floor
    sig2[0] = v
    clamps = 0
    for t in range(1, n):
        v = c3 + c4 * eps2[t - 1] + c5 * sig2[t - 1] + c6 * dummy[t]
        if v < floor:
            v = floor
            clamps += 1
        sig2[t] = v
    return sig2, clamps


@njit(cache=True)
def garch_loglik(y, x, dummy, c1, c2, c3, c4, c5, c6, init_var, floor, dist_code, sa, sb, sc):
    """Total log-likelihood of y given x under the one-lag recursion.

    The shape constants sa/sb/sc are precomputed by the caller:
      student t: sa = lgamma((v+1)/2) - lgamma(v/2) - 0.5 ln(pi (v-2)),
                 sb = (v+1)/2, sc = v - 2
      ged:       sa = ln v - ln lam - (1 + 1/v) ln 2 - lgamma(1/v),
                 sb = v, sc = lam
    Returns (log-likelihood, clamp count); the value is -inf when a term
    underflows, never NaN for finite inputs.
    """
    n = y.shape[0]
    ll = 0.0
    clamps = 0
    sig2 = init_var
    if sig2 < floor:
        sig2 = floor
    prev_eps2 = 0.0
    for t in range(n):
        if t > 0:
            v = c3 + c4 * prev_eps2 + c5 * sig2 + c6 * dummy[t]
            if v < floor:
                v = floor
                clamps += 1
            sig2 = v
        eps = y[t] - c1 - c2 * x[t]
        lsig = math.log(sig2)
        if dist_code == 0:
            ll += -_HALF_LOG_2PI - 0.5 * lsig - 0.5 * (eps * eps) / sig2
        elif dist_code == 1:
            ll += sa - 0.5 * lsig - sb * math.log1p((eps * eps) / (sig2 * sc))
        else:
            az = abs(eps) / (math.sqrt(sig2) * sc)
            if az > 0.0:
                p = sb * math.log(az)
                if p > 708.0:
                    return -np.inf, clamps
                apow = math.exp(p)
            else:
                apow = 0.0
            ll += sa - 0.5 * lsig - 0.5 * apow
        prev_eps2 = eps * eps
    return ll, clamps
