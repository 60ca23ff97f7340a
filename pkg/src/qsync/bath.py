"""Drude-Lorentz bath: spectral density, correlation function, Matsubara expansion.

Spectral density J(w) = 2*lambda*gamma*w / (w^2 + gamma^2); the bath
correlation function used throughout is

    C(t) = (1/pi) * int_0^inf dw J(w) [coth(w/2T) cos(wt) - i sin(wt)],

whose pole expansion is C(t) = sum_k c_k exp(-nu_k t) with the Drude pole
c_0 = lambda*gamma*(cot(gamma/2T) - i), nu_0 = gamma, and Matsubara terms
c_k = 4*lambda*gamma*T*nu_k/(nu_k^2 - gamma^2) at nu_k = 2*pi*k*T.  The
truncated tail is summarized by the Markovian residual
Delta_K = 2*lambda*T/gamma - Re sum_{k<=K} c_k/nu_k >= 0, consumed by the
solver's terminator.

Note C(t) is log-divergent at t = 0 (the Matsubara series diverges there),
so quadrature reference values exist only for t > 0.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.integrate import IntegrationWarning, quad
from scipy.special import sici


class QuadratureError(RuntimeError):
    """Adaptive quadrature failed to reach the requested accuracy."""


@dataclass(frozen=True)
class BathParams:
    """Coupling strength, cutoff and temperature, in units of omega0 (T in hbar*omega0/k_B)."""

    lam: float = 1.0
    gamma: float = 0.5
    temperature: float = 0.5

    def __post_init__(self):
        if self.lam < 0:
            raise ValueError("lam must be >= 0 (0 means decoupled)")
        if not self.gamma > 0:
            raise ValueError("gamma must be positive")
        if not self.temperature > 0:
            raise ValueError("temperature must be positive")


@dataclass(frozen=True)
class ExponentialExpansion:
    """C(t) ~ sum_k ck exp(-vk t) plus a Markovian residual for the tail."""

    ck: np.ndarray  # complex coefficients, units omega0^2
    vk: np.ndarray  # positive decay rates, units omega0
    residual: float  # Delta_K >= 0, units omega0

    def __post_init__(self):
        object.__setattr__(self, "ck", np.asarray(self.ck, dtype=complex))
        object.__setattr__(self, "vk", np.asarray(self.vk, dtype=float))
        if self.ck.shape != self.vk.shape:
            raise ValueError("ck and vk must have matching shapes")

    @property
    def n_terms(self) -> int:
        return self.ck.size

    def correlation(self, t):
        """Truncated correlation function sum_k ck exp(-vk t); vectorized in t."""
        t = np.asarray(t, dtype=float)
        return np.exp(-np.multiply.outer(t, self.vk)) @ self.ck


def spectral_density(w, b: BathParams):
    """Drude-Lorentz J(w) = 2*lam*gamma*w/(w^2+gamma^2), odd in w; vectorized."""
    w = np.asarray(w, dtype=float)
    out = 2.0 * b.lam * b.gamma * w / (w * w + b.gamma * b.gamma)
    return out if out.ndim else float(out)


def matsubara_expansion(b: BathParams, n_terms: int) -> ExponentialExpansion:
    """Drude pole plus ``n_terms`` Matsubara terms and the tail residual.

    Raises ValueError when gamma collides with a Matsubara frequency
    (simultaneously a pole of the cotangent and of the Matsubara
    coefficients), where the simple-pole expansion breaks down.
    """
    if n_terms < 0:
        raise ValueError("number of Matsubara terms must be >= 0")
    lam, gam, temp = b.lam, b.gamma, b.temperature
    x = gam / (2.0 * temp)
    # gamma = 2*pi*m*T for integer m >= 1 is a double pole: cot(x) and the
    # k = m Matsubara coefficient blow up together.
    m_near = round(x / np.pi)
    if m_near >= 1 and abs(x - m_near * np.pi) < 1e-10 * max(1.0, x):
        raise ValueError(
            f"gamma = {gam:g} coincides with Matsubara frequency 2*pi*{m_near}*T; "
            "the pole expansion is singular there (shift gamma or T)"
        )
    ck = np.empty(n_terms + 1, dtype=complex)
    vk = np.empty(n_terms + 1, dtype=float)
    ck[0] = lam * gam * (1.0 / np.tan(x) - 1.0j)
    vk[0] = gam
    for k in range(1, n_terms + 1):
        nu = 2.0 * np.pi * k * temp
        ck[k] = 4.0 * lam * gam * temp * nu / (nu * nu - gam * gam)
        vk[k] = nu
    residual = 2.0 * lam * temp / gam - float(np.sum((ck / vk).real))
    return ExponentialExpansion(ck=ck, vk=vk, residual=residual)


def _quad_checked(f, a, bnd, tol_abs, **kw):
    with warnings.catch_warnings():
        warnings.simplefilter("error", IntegrationWarning)
        try:
            val, err = quad(f, a, bnd, **kw)
        except IntegrationWarning as exc:
            raise QuadratureError(f"quadrature did not converge: {exc}") from exc
    if err > tol_abs:
        raise QuadratureError(f"quadrature error estimate {err:.2e} above {tol_abs:.2e}")
    return val


def correlation_quadrature(t: float, b: BathParams) -> complex:
    """Reference C(t) by adaptive quadrature of the spectral integral, t > 0.

    The thermal part J(w)(coth(w/2T)-1) decays exponentially and is handled
    by oscillatory (QAWO) quadrature; the zero-temperature part J(w) has a
    1/w tail integrated analytically via Si/Ci beyond a cutoff.  Accuracy is
    a few 1e-11 absolute at the default parameters.  At t = 0 the real part
    is log-divergent and a QuadratureError is raised.
    """
    lam, gam, temp = b.lam, b.gamma, b.temperature
    if lam == 0.0:
        return 0.0j
    if t < 0:
        raise ValueError("t must be >= 0")
    if t == 0.0:
        raise QuadratureError(
            "C(0) is log-divergent for the Drude-Lorentz bath; use t > 0"
        )

    def j_w(w):
        return 2.0 * lam * gam * w / (w * w + gam * gam)

    def thermal(w):
        # J(w) * (coth(w/2T) - 1) = J(w) * 2/(exp(w/T)-1); finite at w = 0.
        if w == 0.0:
            return 4.0 * lam * temp / gam
        return j_w(w) * 2.0 / np.expm1(w / temp)

    w_thermal = 40.0 * temp + 20.0 * gam
    w_cut = 20.0 * gam

    def zero_t_correction(w):
        # J(w) - 2*lam*gam/w, the absolutely integrable remainder of the tail.
        return -2.0 * lam * gam * gam * gam / (w * (w * w + gam * gam))

    scale = max(lam * gam, 1e-12)
    budget = 2e-8 * scale
    kw = dict(epsabs=1e-12 * scale, epsrel=1e-10, limit=800)
    re_th = _quad_checked(thermal, 0.0, w_thermal, budget, weight="cos", wvar=t, **kw)
    re_lo = _quad_checked(j_w, 0.0, w_cut, budget, weight="cos", wvar=t, **kw)
    si, ci = sici(w_cut * t)
    re_tail = -2.0 * lam * gam * ci
    re_corr = _quad_checked(zero_t_correction, w_cut, np.inf, budget, weight="cos", wvar=t, **kw)
    im_lo = _quad_checked(j_w, 0.0, w_cut, budget, weight="sin", wvar=t, **kw)
    im_tail = 2.0 * lam * gam * (0.5 * np.pi - si)
    im_corr = _quad_checked(zero_t_correction, w_cut, np.inf, budget, weight="sin", wvar=t, **kw)

    re = (re_th + re_lo + re_tail + re_corr) / np.pi
    im = -(im_lo + im_tail + im_corr) / np.pi
    return complex(re, im)


def dephasing_exponent(t: float, b: BathParams) -> float:
    """Pure-dephasing decoherence integral for an sx coupling (eigenvalues +-1):

        Gamma(t) = (4/pi) int_0^inf dw J(w) coth(w/2T) (1 - cos(wt)) / w^2,

    so the coherence between the coupling eigenstates decays as exp(-Gamma).
    Uses the cancellation-free form (1-cos)/w^2 = (t^2/2) sinc^2(wt/2pi).
    """
    lam, gam, temp = b.lam, b.gamma, b.temperature
    if lam == 0.0 or t == 0.0:
        return 0.0
    if t < 0:
        raise ValueError("t must be >= 0")
    w_max = 400.0

    def f(w):
        if w == 0.0:
            jcoth = 4.0 * lam * temp / gam
        else:
            jw = 2.0 * lam * gam * w / (w * w + gam * gam)
            jcoth = jw / np.tanh(w / (2.0 * temp))
        s = np.sinc(w * t / (2.0 * np.pi))
        return jcoth * 0.5 * t * t * s * s

    breaks = [np.pi * (k + 1) / t for k in range(90) if np.pi * (k + 1) / t < w_max]
    val = _quad_checked(f, 0.0, w_max, 1e-6 * max(lam, 1e-12), points=breaks or None, limit=1500)
    # non-oscillatory tail of the w^-3 decay beyond the cutoff
    val += lam * gam / (w_max * w_max)
    return 4.0 * val / np.pi
