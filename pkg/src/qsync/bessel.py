"""Bessel functions of the first kind (integer order) and zeros of J0.

Self-contained evaluation: ascending power series for small argument and
Miller's downward recurrence with sum-rule normalization otherwise.  No
external special-function dependency, so accuracy is controlled here:
better than 1e-12 absolute for |n| <= 32, |x| <= 200 (and in practice for
the larger orders used internally, up to n ~ 100).
"""

from __future__ import annotations

import math

import numpy as np

# Orders at or below this argument use the ascending series; above it the
# alternating series starts losing digits to cancellation.
_SERIES_CUTOFF = 8.0

_MAX_ZERO_INDEX = 16


def _series_jn(n: int, x: float) -> float:
    # Ascending series sum_m (-1)^m (x/2)^(n+2m) / (m! (n+m)!), n >= 0.
    half = 0.5 * x
    term = half**n / math.factorial(n)
    total = term
    m = 0
    while True:
        m += 1
        term *= -(half * half) / (m * (n + m))
        total += term
        if abs(term) <= 1e-18 * max(abs(total), 1e-300) or m > 300:
            return total


def _miller_jn(n_max: int, x: float) -> np.ndarray:
    # Downward recurrence j_{k-1} = (2k/x) j_k - j_{k+1}, normalized by
    # J_0 + 2 sum_{k>=1} J_{2k} = 1.  Returns J_0..J_{n_max} for x > 0.
    top = max(n_max, int(math.ceil(x)))
    start = top + 30 + int(15 * top ** (1.0 / 3.0))
    if start % 2:
        start += 1
    out = np.zeros(n_max + 1)
    jp = 0.0  # j_{k+1}
    jc = 1e-30  # j_k, seeded at k = start (even)
    norm = 2.0 * jc
    if start <= n_max:
        out[start] = jc
    for k in range(start, 0, -1):
        jm = (2.0 * k / x) * jc - jp  # j_{k-1}
        jp = jc
        jc = jm
        if k - 1 <= n_max:
            out[k - 1] = jc
        if (k - 1) % 2 == 0:
            norm += 2.0 * jc if k - 1 > 0 else jc
        if abs(jc) > 1e250:
            jc *= 1e-250
            jp *= 1e-250
            norm *= 1e-250
            out *= 1e-250
    return out / norm


def bessel_jn_seq(n_max: int, x: float) -> np.ndarray:
    """J_0(x) .. J_{n_max}(x) as an array, for any finite real x."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    if not math.isfinite(x):
        raise ValueError("x must be finite")
    if x < 0:
        signs = np.array([(-1.0) ** k for k in range(n_max + 1)])
        return signs * bessel_jn_seq(n_max, -x)
    if x == 0.0:
        out = np.zeros(n_max + 1)
        out[0] = 1.0
        return out
    if x <= _SERIES_CUTOFF:
        return np.array([_series_jn(k, x) for k in range(n_max + 1)])
    return _miller_jn(n_max, x)


def bessel_j(n: int, x: float) -> float:
    """Bessel function of the first kind J_n(x), integer n of either sign.

    The reflection rule J_{-n}(x) = (-1)^n J_n(x) holds exactly by
    construction.
    """
    n = int(n)
    if n < 0:
        return (-1.0) ** n * bessel_j(-n, x)
    return float(bessel_jn_seq(n, x)[n])


def bessel_j0_zero(k: int) -> float:
    """The k-th positive zero of J_0, k = 1..16, located by bisection.

    Brackets come from the asymptotic spacing of roughly pi between
    consecutive zeros; bisection runs to an interval below 1e-13.
    """
    if not 1 <= k <= _MAX_ZERO_INDEX:
        raise ValueError(f"zero index k={k} outside supported range 1..{_MAX_ZERO_INDEX}")
    beta = (k - 0.25) * math.pi
    lo, hi = beta - 0.5, beta + 0.5
    flo = bessel_j(0, lo)
    fhi = bessel_j(0, hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0:  # pragma: no cover - brackets are safe for k <= 16
        raise RuntimeError(f"bisection bracket failed for J0 zero k={k}")
    while hi - lo > 1e-13:
        mid = 0.5 * (lo + hi)
        fmid = bessel_j(0, mid)
        if fmid == 0.0:
            return mid
        if flo * fmid < 0:
            hi = mid
        else:
            lo, flo = mid, fmid
    return 0.5 * (lo + hi)
