"""Complex 2x2 matrix helpers: Pauli basis, checks, closed-form exponentials.

All two-level operators in this package are plain ``numpy`` arrays of shape
``(2, 2)`` and dtype ``complex128``, row-major, in the basis where index 0 is
the excited state (sigma_z eigenvalue +1) and index 1 the ground state.
"""

from __future__ import annotations

import numpy as np

IDENTITY2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)

PAULI = (SIGMA_X, SIGMA_Y, SIGMA_Z)

HERMITIAN_TOL = 1e-12
UNITARY_TOL = 1e-10


def hermiticity_deviation(m: np.ndarray) -> float:
    """Max absolute entry of m - m^dagger."""
    m = np.asarray(m, dtype=complex)
    return float(np.max(np.abs(m - m.conj().T)))


def is_hermitian(m: np.ndarray, tol: float = HERMITIAN_TOL) -> bool:
    return hermiticity_deviation(m) <= tol


def unitarity_deviation(u: np.ndarray) -> float:
    """Max absolute entry of u^dagger u - 1."""
    u = np.asarray(u, dtype=complex)
    return float(np.max(np.abs(u.conj().T @ u - IDENTITY2)))


def is_unitary(u: np.ndarray, tol: float = UNITARY_TOL) -> bool:
    return unitarity_deviation(u) <= tol


def pauli_components(m: np.ndarray) -> tuple[complex, complex, complex, complex]:
    """Coefficients (a0, ax, ay, az) with m = a0*1 + ax*sx + ay*sy + az*sz."""
    m = np.asarray(m, dtype=complex)
    a0 = 0.5 * (m[0, 0] + m[1, 1])
    az = 0.5 * (m[0, 0] - m[1, 1])
    ax = 0.5 * (m[0, 1] + m[1, 0])
    ay = 0.5j * (m[0, 1] - m[1, 0])
    return a0, ax, ay, az


def expm_su2(h: np.ndarray, s: float) -> np.ndarray:
    """exp(-i*s*h) for Hermitian 2x2 h, via the closed Pauli-decomposition form.

    For h = a0 + a.sigma the result is
    exp(-i*s*a0) * (cos(s*|a|) - i sin(s*|a|) (a.sigma)/|a|),
    which is exactly unitary up to rounding.

    Raises ValueError if h deviates from Hermitian by more than 1e-9.
    """
    h = np.asarray(h, dtype=complex)
    dev = hermiticity_deviation(h)
    if dev > 1e-9:
        raise ValueError(f"expm_su2 requires a Hermitian matrix (deviation {dev:.3e})")
    a0, ax, ay, az = pauli_components(h)
    a0, ax, ay, az = a0.real, ax.real, ay.real, az.real
    r = np.sqrt(ax * ax + ay * ay + az * az)
    phase = np.exp(-1j * s * a0)
    if r == 0.0:
        return phase * IDENTITY2
    n_dot_sigma = (ax * SIGMA_X + ay * SIGMA_Y + az * SIGMA_Z) / r
    return phase * (np.cos(s * r) * IDENTITY2 - 1j * np.sin(s * r) * n_dot_sigma)
