"""Phase-space synchronization diagnostics on the Bloch sphere.

Spin coherent states |theta, phi> = cos(theta/2)|e> + e^{i phi} sin(theta/2)|g>
(the +1 eigenvector of sigma.n), the Husimi Q function
Q = <psi|rho|psi>/(2 pi) = (1 + m.n)/(4 pi), and the synchronization
measure

    S(phi, t) = int_0^pi dtheta sin(theta) Q(theta, phi, t) - 1/(2 pi)
              = (Re c cos(phi) - Im c sin(phi)) / 4,

whose maximum over phi is |c|/4 <= 1/8 at phi* = -arg(c).  A persistent
nonzero S signals azimuthal symmetry breaking, i.e. phase locking.

Density matrices are 2x2 arrays with p = rho[0, 0] the excited-state
population and c = rho[0, 1] the coherence.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .su2 import SIGMA_X, SIGMA_Y, SIGMA_Z

BLOCH_DEGENERACY_TOL = 1e-9


def density_from_bloch(m) -> np.ndarray:
    """rho = (1 + m.sigma)/2 for a Bloch vector with |m| <= 1."""
    m = np.asarray(m, dtype=float)
    if m.shape != (3,):
        raise ValueError("Bloch vector must have 3 components")
    if np.linalg.norm(m) > 1.0 + 1e-9:
        raise ValueError("Bloch vector must have norm <= 1")
    return 0.5 * (np.eye(2, dtype=complex) + m[0] * SIGMA_X + m[1] * SIGMA_Y + m[2] * SIGMA_Z)


def bloch_vector(rho: np.ndarray) -> np.ndarray:
    """(m_x, m_y, m_z) = tr(rho sigma_i)."""
    rho = np.asarray(rho, dtype=complex)
    mx = (rho[0, 1] + rho[1, 0]).real
    my = (1j * (rho[0, 1] - rho[1, 0])).real
    mz = (rho[0, 0] - rho[1, 1]).real
    return np.array([mx, my, mz])


def coherent_state(theta, phi) -> np.ndarray:
    """Spin coherent state, broadcast over angle arrays; last axis is spin."""
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    comp_e = np.cos(theta / 2.0) * np.ones_like(phi)
    comp_g = np.exp(1j * phi) * np.sin(theta / 2.0)
    return np.stack(np.broadcast_arrays(comp_e, comp_g), axis=-1)


def husimi_q(rho: np.ndarray, theta, phi):
    """Husimi Q(theta, phi) = <psi|rho|psi> / (2 pi); broadcasts over angles."""
    rho = np.asarray(rho, dtype=complex)
    psi = coherent_state(theta, phi)
    q = np.einsum("...a,ab,...b->...", psi.conj(), rho, psi).real / (2.0 * np.pi)
    return float(q) if q.ndim == 0 else q


def sync_measure_closed(rho: np.ndarray, phi) -> float:
    """S(phi) = (Re c cos(phi) - Im c sin(phi)) / 4 from the coherence."""
    c = np.asarray(rho, dtype=complex)[0, 1]
    out = 0.25 * (c.real * np.cos(phi) - c.imag * np.sin(phi))
    return float(out) if np.ndim(out) == 0 else out


@dataclass(frozen=True)
class SphereGrid:
    """Quadrature grid over the unit sphere with measure sin(theta) dtheta dphi.

    Gauss-Legendre nodes in theta on [0, pi] with the sin(theta) measure
    folded into the weights, and a uniform periodic trapezoid in phi; total
    weight is 4 pi.  (Nodes in theta rather than cos(theta): the sphere
    integrands here are trigonometric polynomials of theta, which this rule
    integrates to machine precision at modest node counts, whereas in the
    cos(theta) variable they pick up square-root terms that degrade
    Gauss-Legendre to algebraic convergence.)
    """

    thetas: np.ndarray
    theta_weights: np.ndarray
    phis: np.ndarray
    phi_weights: np.ndarray

    @classmethod
    def gauss_legendre(cls, n_theta: int = 128, n_phi: int = 256) -> "SphereGrid":
        if n_theta < 2 or n_phi < 2:
            raise ValueError("grid needs at least 2 nodes per axis")
        nodes, weights = np.polynomial.legendre.leggauss(n_theta)
        thetas = 0.5 * np.pi * (nodes + 1.0)
        theta_weights = 0.5 * np.pi * weights * np.sin(thetas)
        phis = np.arange(n_phi) * (2.0 * np.pi / n_phi)
        phi_weights = np.full(n_phi, 2.0 * np.pi / n_phi)
        return cls(thetas, theta_weights, phis, phi_weights)

    @property
    def total_weight(self) -> float:
        return float(np.sum(self.theta_weights) * np.sum(self.phi_weights))


def sync_measure_integral(rho: np.ndarray, phi: float, grid: SphereGrid) -> float:
    """The theta-marginal definition of S(phi), evaluated by quadrature."""
    if grid.thetas.size < 64:
        raise ValueError("sync_measure_integral needs >= 64 theta nodes")
    q = husimi_q(rho, grid.thetas, phi)
    return float(np.dot(grid.theta_weights, q) - 1.0 / (2.0 * np.pi))


class SyncMaximum(NamedTuple):
    phi_star: float
    value: float


def max_sync(rho: np.ndarray) -> SyncMaximum:
    """Analytic maximum of |S(phi)|: value |c|/4 at phi* = -arg(c) mod 2pi.

    For c = 0 the maximizer is degenerate and reported as phi* = 0.
    """
    c = np.asarray(rho, dtype=complex)[0, 1]
    r = abs(c)
    if r == 0.0:
        return SyncMaximum(0.0, 0.0)
    return SyncMaximum(float((-np.angle(c)) % (2.0 * np.pi)), float(0.25 * r))


class QArgmax(NamedTuple):
    theta: float
    phi: float
    degenerate: bool


def q_argmax(rho: np.ndarray) -> QArgmax:
    """Angles maximizing Q: the direction of the Bloch vector.

    Flags the fully mixed case |m| <= 1e-9 (uniform Q) as degenerate; the
    azimuth is reported as 0 when the Bloch vector lies on the z axis.
    """
    m = bloch_vector(rho)
    norm = np.linalg.norm(m)
    if norm <= BLOCH_DEGENERACY_TOL:
        return QArgmax(0.0, 0.0, True)
    theta = float(np.arccos(np.clip(m[2] / norm, -1.0, 1.0)))
    if np.hypot(m[0], m[1]) <= BLOCH_DEGENERACY_TOL * norm:
        return QArgmax(theta, 0.0, False)
    return QArgmax(theta, float(np.arctan2(m[1], m[0]) % (2.0 * np.pi)), False)


def window_average(times, values, t_center: float, width: float) -> float:
    """Trapezoidal mean of a sampled series over [t_center +- width/2].

    A zero (or sub-sample) width falls back to the nearest-sample value;
    an empty window raises ValueError.
    """
    times = np.asarray(times, dtype=float)
    values = np.asarray(values, dtype=float)
    if times.shape != values.shape or times.ndim != 1:
        raise ValueError("times and values must be matching 1-d arrays")
    if width < 0:
        raise ValueError("width must be >= 0")
    if width == 0.0:
        if t_center < times[0] or t_center > times[-1]:
            raise ValueError("t_center outside the sampled range")
        return float(values[np.argmin(np.abs(times - t_center))])
    lo, hi = t_center - 0.5 * width, t_center + 0.5 * width
    mask = (times >= lo) & (times <= hi)
    if not np.any(mask):
        raise ValueError(
            f"window [{lo:g}, {hi:g}] contains no samples of the series"
        )
    if np.count_nonzero(mask) == 1:
        return float(values[mask][0])
    t_sel = times[mask]
    v_sel = values[mask]
    return float(np.trapezoid(v_sel, t_sel) / (t_sel[-1] - t_sel[0]))
