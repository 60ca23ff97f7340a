import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20260811)


def random_density_matrix(rng):
    """Hilbert-Schmidt random 2x2 density matrix (Ginibre construction)."""
    g = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_hermitian(rng, scale=1.0):
    a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    return scale * 0.5 * (a + a.conj().T)
