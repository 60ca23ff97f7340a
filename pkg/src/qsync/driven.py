"""Closed-system model of the periodically driven two-level system.

Units: hbar = k_B = 1 and the level splitting omega0 sets the frequency,
energy and time scales.  ``delta``, ``Omega`` and ``omega`` are stored as
dimensionless multiples of omega0; times are in units of 1/omega0.

The lab-frame Hamiltonian is

    H(t) = (omega0/2) sz + (delta*omega0/2) sx + (Omega*omega0/2) cos(omega*omega0*t) sx

and the analysis side works in the rotating frame generated by the drive
term, where H splits into operator-valued Fourier components with Bessel
coefficients.  Keeping only the n = 0 component gives the static
approximation whose sz part vanishes at the resonant-ratio condition
omega = Omega / z_k, z_k the k-th zero of J0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bessel import bessel_j, bessel_j0_zero, bessel_jn_seq
from .ode import OdeTolerance, integrate_adaptive
from .su2 import IDENTITY2, SIGMA_X, SIGMA_Y, SIGMA_Z, expm_su2

# Steps per drive period the integrator must resolve whenever the drive is on.
DRIVE_RESOLUTION = 50


@dataclass(frozen=True)
class DriveParams:
    """Drive and system parameters, all in units of omega0 (see module docs)."""

    omega0: float = 1.0
    delta: float = 0.0
    Omega: float = 0.0
    omega: float = 1.0

    def __post_init__(self):
        if not self.omega0 > 0:
            raise ValueError("omega0 must be positive")
        for name in ("delta", "Omega", "omega"):
            if not np.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")

    @property
    def drive_angular_frequency(self) -> float:
        """omega in absolute units (rad / time)."""
        return self.omega * self.omega0

    @property
    def period(self) -> float:
        """Drive period 2*pi/omega."""
        if self.omega <= 0:
            raise ValueError("period requires omega > 0")
        return 2.0 * np.pi / self.drive_angular_frequency


def hamiltonian(t: float, p: DriveParams) -> np.ndarray:
    """Lab-frame Hamiltonian H(t); Hermitian 2x2."""
    w0 = p.omega0
    h = 0.5 * w0 * SIGMA_Z + 0.5 * p.delta * w0 * SIGMA_X
    if p.Omega != 0.0:
        h = h + 0.5 * p.Omega * w0 * np.cos(p.drive_angular_frequency * t) * SIGMA_X
    return h


def rotating_frame_unitary(t: float, p: DriveParams) -> np.ndarray:
    """U_r(t) = exp(-i (Omega/2 omega) sin(omega t) sx); identity at t = 0."""
    if p.omega <= 0:
        raise ValueError("rotating frame requires omega > 0")
    if p.Omega == 0.0:
        return IDENTITY2.copy()
    phase = (p.Omega / (2.0 * p.omega)) * np.sin(p.drive_angular_frequency * t)
    return expm_su2(SIGMA_X, phase)


def fourier_component(n: int, p: DriveParams) -> np.ndarray:
    """Operator-valued Fourier component H_n of the rotating-frame Hamiltonian.

    Even orders n = 2k carry (omega0/2) J_2k(Omega/omega) sz plus, for k = 0,
    the bias (delta*omega0/2) sx; odd orders carry
    i (omega0/2) J_n(Omega/omega) sy.  Negative orders follow from the Bessel
    reflection rule, which makes H_{-n} the adjoint of H_n.
    """
    if p.omega <= 0:
        raise ValueError("Fourier components require omega > 0")
    n = int(n)
    ratio = p.Omega / p.omega
    w0 = p.omega0
    if n % 2 == 0:
        h = 0.5 * w0 * bessel_j(n, ratio) * SIGMA_Z
        if n == 0:
            h = h + 0.5 * p.delta * w0 * SIGMA_X
        return h
    return 1j * 0.5 * w0 * bessel_j(n, ratio) * SIGMA_Y


def rotating_hamiltonian(t: float, p: DriveParams, n_max: int) -> np.ndarray:
    """Partial Fourier sum of H_r(t) over |n| <= n_max.

    Converges entrywise (superexponentially once n_max exceeds Omega/omega)
    to U_r(t)^dag V U_r(t) with V the time-independent part of H(t).
    """
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    ratio = p.Omega / p.omega
    w0 = p.omega0
    wt = p.drive_angular_frequency * t
    js = bessel_jn_seq(n_max, ratio)
    # n = 0 term, then adjoint-paired +-n terms combined into real cos/sin sums.
    h = 0.5 * w0 * js[0] * SIGMA_Z + 0.5 * p.delta * w0 * SIGMA_X
    for n in range(1, n_max + 1):
        if n % 2 == 0:
            h = h + w0 * js[n] * np.cos(n * wt) * SIGMA_Z
        else:
            h = h + w0 * js[n] * np.sin(n * wt) * SIGMA_Y
    return h


def static_hamiltonian(p: DriveParams) -> np.ndarray:
    """Static (n = 0) approximation: (omega0/2) J0(Omega/omega) sz + bias sx."""
    if p.omega <= 0:
        raise ValueError("static approximation requires omega > 0")
    w0 = p.omega0
    return (
        0.5 * w0 * bessel_j(0, p.Omega / p.omega) * SIGMA_Z
        + 0.5 * p.delta * w0 * SIGMA_X
    )


def rrc_frequency(k: int, Omega: float) -> float:
    """Resonant-ratio drive frequency omega_rrc^k = Omega / z_k."""
    if not Omega > 0:
        raise ValueError("Omega must be positive")
    return Omega / bessel_j0_zero(k)


def schrodinger_propagator(
    p: DriveParams,
    t0: float,
    t1: float,
    tol: OdeTolerance,
    hamiltonian_fn=None,
) -> np.ndarray:
    """Time-ordered propagator U(t1, t0) of i dU/dt = H(t) U, via integration."""
    ham = hamiltonian_fn if hamiltonian_fn is not None else (lambda t: hamiltonian(t, p))
    max_step = tol.max_step
    if p.Omega != 0.0 and p.omega > 0:
        max_step = min(max_step, p.period / DRIVE_RESOLUTION)
    tol_eff = OdeTolerance(tol.atol, tol.rtol, max_step, tol.min_step)

    def rhs(t, y):
        u = y.reshape(2, 2)
        return (-1j * (ham(t) @ u)).ravel()

    out = integrate_adaptive(rhs, IDENTITY2.ravel(), t0, t1, tol_eff, [t1])
    return out[0].reshape(2, 2)


def floquet_quasienergies(
    p: DriveParams, tol: OdeTolerance | None = None, t_start: float = 0.0
) -> np.ndarray:
    """Quasienergies of the lab-frame Hamiltonian, folded to [-omega/2, omega/2).

    The monodromy matrix U(t_start + T, t_start) is integrated over one drive
    period; its unit-modulus eigenvalues exp(-i eps T) give the quasienergies
    on the principal branch.  Returned sorted ascending.
    """
    if p.omega <= 0:
        raise ValueError("Floquet analysis requires omega > 0")
    if tol is None:
        tol = OdeTolerance(atol=1e-13, rtol=1e-11)
    period = p.period
    u = schrodinger_propagator(p, t_start, t_start + period, tol)
    eigvals = np.linalg.eigvals(u)
    eps = -np.angle(eigvals) / period
    return np.sort(eps)


def quasienergy_splitting(p: DriveParams, tol: OdeTolerance | None = None) -> float:
    """Gauge-invariant quasienergy gap: circle distance on the Brillouin zone."""
    eps = floquet_quasienergies(p, tol)
    gap = float(eps[1] - eps[0])
    w = p.drive_angular_frequency
    return min(gap, w - gap)


def fourier_component_quadrature(
    n: int, p: DriveParams, n_nodes: int = 1024
) -> np.ndarray:
    """Independent oracle for H_n: direct Fourier quadrature over one period.

    Evaluates (1/T) int_0^T U_r(t)^dag V U_r(t) e^{+i n omega t} dt with the
    periodic trapezoid rule, which is spectrally accurate here; no Bessel
    machinery is involved.
    """
    if p.omega <= 0:
        raise ValueError("Fourier quadrature requires omega > 0")
    v = 0.5 * p.omega0 * SIGMA_Z + 0.5 * p.delta * p.omega0 * SIGMA_X
    period = p.period
    ts = np.arange(n_nodes) * (period / n_nodes)
    acc = np.zeros((2, 2), dtype=complex)
    for t in ts:
        u = rotating_frame_unitary(t, p)
        acc += (u.conj().T @ v @ u) * np.exp(1j * n * p.drive_angular_frequency * t)
    return acc / n_nodes
