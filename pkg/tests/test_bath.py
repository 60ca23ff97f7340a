"""Drude-Lorentz bath: spectral density, quadrature checks, pole expansion."""

import numpy as np
import pytest

from qsync.bath import (
    BathParams,
    QuadratureError,
    correlation_quadrature,
    dephasing_exponent,
    matsubara_expansion,
    spectral_density,
)

BATH = BathParams(lam=1.0, gamma=0.5, temperature=0.5)


def test_spectral_density_zero_and_peak():
    assert spectral_density(0.0, BATH) == 0.0
    # J(gamma) = lam exactly
    assert spectral_density(BATH.gamma, BATH) == pytest.approx(1.0, rel=1e-14)
    ws = np.linspace(1e-3, 20.0, 20000)
    peak = ws[np.argmax(spectral_density(ws, BATH))]
    assert peak == pytest.approx(BATH.gamma, abs=2e-3)


def test_spectral_density_odd():
    ws = np.linspace(0.1, 5.0, 7)
    assert np.allclose(spectral_density(-ws, BATH), -spectral_density(ws, BATH))


def test_matsubara_frequencies():
    exp4 = matsubara_expansion(BATH, 4)
    assert exp4.vk[0] == BATH.gamma
    assert exp4.vk[1] == pytest.approx(2 * np.pi * BATH.temperature, rel=1e-15)
    assert np.all(np.diff(exp4.vk[1:]) > 0)


def test_reconstruction_matches_quadrature():
    exp4 = matsubara_expansion(BATH, 4)
    nu_next = 2 * np.pi * 5 * BATH.temperature
    scale0 = abs(exp4.correlation(0.0))
    # C(t) is log-divergent at t = 0, so the comparison starts just above;
    # the residual-broadening bound covers the early-time truncation gap.
    for t in np.linspace(0.05, 10.0 / BATH.gamma, 25):
        diff = abs(exp4.correlation(t) - correlation_quadrature(float(t), BATH))
        tol = max(1e-3 * scale0, exp4.residual * nu_next * np.exp(-nu_next * t))
        assert diff < tol


def test_imaginary_part_closed_form():
    # Im C(t) = -lam*gamma*exp(-gamma t), the pi-free Drude pole residue
    for t in (0.1, 0.7, 2.0, 10.0):
        c = correlation_quadrature(t, BATH)
        assert c.imag == pytest.approx(-BATH.lam * BATH.gamma * np.exp(-BATH.gamma * t), abs=1e-9)


def test_correlation_conjugation_symmetry():
    # C(-t) = conj(C(t)): Re even, Im odd; quadrature represents t > 0
    c = correlation_quadrature(0.8, BATH)
    assert np.conj(c).imag == -c.imag
    assert np.conj(c).real == c.real


def test_correlation_decays():
    t_far = 50.0 / BATH.gamma
    assert abs(correlation_quadrature(t_far, BATH)) < 1e-6 * BATH.lam * BATH.gamma


def test_decoupled_bath_is_zero():
    b0 = BathParams(lam=0.0, gamma=0.5, temperature=0.5)
    assert correlation_quadrature(1.0, b0) == 0.0
    assert dephasing_exponent(1.0, b0) == 0.0


def test_zero_time_real_part_reported_divergent():
    with pytest.raises(QuadratureError):
        correlation_quadrature(0.0, BATH)


def test_residual_positive_and_decreasing():
    prev = None
    for k in range(0, 9):
        exp = matsubara_expansion(BATH, k)
        assert exp.residual >= 0.0
        if prev is not None:
            assert exp.residual < prev
        prev = exp.residual
    assert matsubara_expansion(BATH, 6).residual < 0.05 * (
        2 * BATH.lam * BATH.temperature / BATH.gamma
    )


def test_expansion_truncation_error_decreases_with_terms():
    ts = np.linspace(0.05, 5.0, 12)
    prev = None
    for k in (1, 2, 4, 8):
        exp = matsubara_expansion(BATH, k)
        worst = max(
            abs(exp.correlation(float(t)) - correlation_quadrature(float(t), BATH))
            for t in ts
        )
        if prev is not None:
            assert worst < prev
        prev = worst


def test_high_temperature_drude_coefficient():
    b = BathParams(lam=1.0, gamma=0.5, temperature=20 * 0.5)
    c0 = matsubara_expansion(b, 0).ck[0]
    expected = 2 * b.lam * b.temperature - 1j * b.lam * b.gamma
    assert abs(c0 - expected) / abs(expected) < 0.05


def test_pole_collision_rejected():
    with pytest.raises(ValueError, match="Matsubara"):
        matsubara_expansion(BathParams(lam=1.0, gamma=np.pi, temperature=0.5), 4)


def test_parameter_validation():
    with pytest.raises(ValueError):
        BathParams(lam=-1.0, gamma=0.5, temperature=0.5)
    with pytest.raises(ValueError):
        BathParams(lam=1.0, gamma=0.0, temperature=0.5)
    with pytest.raises(ValueError):
        BathParams(lam=1.0, gamma=0.5, temperature=0.0)


def test_dephasing_exponent_shape():
    # quadratic at early times, linear at late times, and monotone
    b = BathParams(lam=0.25, gamma=0.5, temperature=0.5)
    ts = np.array([0.05, 0.2, 0.5, 1.0, 2.0, 3.0])
    gs = np.array([dephasing_exponent(float(t), b) for t in ts])
    assert np.all(np.diff(gs) > 0)
    # frozen reference from the truncated-pole series summed to K = 1e5
    assert dephasing_exponent(1.5, b) == pytest.approx(1.029006276, rel=1e-4)
