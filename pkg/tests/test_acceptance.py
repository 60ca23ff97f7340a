"""Acceptance suite: every exit criterion at its stated tolerance.

Each criterion prints one PASS/FAIL line (run with `pytest -s` to see them
live).  The solver-hygiene criterion aggregates metrics from every
hierarchy run performed by the earlier criteria, so this module is meant
to run in file order (pytest's default).

Criteria 9 and 10 run the desk-scale sweeps and dominate the wall time
(roughly 10-20 minutes on two workers).
"""

import os

import numpy as np
import pytest

from conftest import random_density_matrix
from qsync.bath import BathParams, dephasing_exponent
from qsync.config import config_from_mapping
from qsync.driven import (
    DriveParams,
    fourier_component,
    fourier_component_quadrature,
    quasienergy_splitting,
    rrc_frequency,
    schrodinger_propagator,
)
from qsync.heom import SolverConfig, convergence_check, propagate
from qsync.ode import OdeTolerance
from qsync.phasespace import (
    SphereGrid,
    density_from_bloch,
    max_sync,
    sync_measure_closed,
    sync_measure_integral,
)
from qsync.sweeps import run_single, sweep_bath, sweep_drive

WORKERS = min(2, os.cpu_count() or 1)

OMEGA_RRC = rrc_frequency(1, 60.0)
FIG1_DRIVE = DriveParams(delta=0.0, Omega=60.0, omega=OMEGA_RRC)
FIG1_BATH = BathParams(lam=1.0, gamma=0.5, temperature=0.5)

# hygiene metrics from every hierarchy run in this module, keyed by context
HYGIENE: list[tuple[str, float, float, float]] = []


def _track_hygiene(tag: str, res) -> None:
    if hasattr(res, "trace_deviation"):  # HeomResult
        HYGIENE.append(
            (
                tag,
                float(res.trace_deviation.max()),
                float(res.hermiticity_deviation.max()),
                float(res.min_eigenvalue.min()),
            )
        )
    else:  # TimeSeriesResult
        HYGIENE.append(
            (
                tag,
                float(res.trace_dev.max()),
                float(res.herm_dev.max()),
                float(res.min_eig.min()),
            )
        )


def _report(criterion: int, passed: bool, detail: str) -> None:
    print(f"ACCEPTANCE {criterion:2d} {'PASS' if passed else 'FAIL'}: {detail}")
    assert passed, f"criterion {criterion}: {detail}"


def test_criterion_01_measure_equivalence():
    rng = np.random.default_rng(11)
    grid = SphereGrid.gauss_legendre(64, 8)
    phis = np.linspace(0.0, 2 * np.pi, 16, endpoint=False)
    worst = 0.0
    for _ in range(1000):
        rho = random_density_matrix(rng)
        for phi in phis:
            diff = abs(
                sync_measure_integral(rho, phi, grid) - sync_measure_closed(rho, phi)
            )
            worst = max(worst, diff)
    _report(1, worst < 1e-8, f"integral vs closed S: worst |diff| = {worst:.3e} < 1e-8")


def test_criterion_02_bound_attainment():
    rng = np.random.default_rng(12)
    worst = max(max_sync(random_density_matrix(rng)).value for _ in range(2000))
    plus_x = density_from_bloch([1.0, 0.0, 0.0])
    eq_gap = abs(max_sync(plus_x).value - 0.125)
    _report(
        2,
        worst <= 0.125 + 1e-12 and eq_gap < 1e-10,
        f"max_sync <= 1/8 (worst {worst:.6f}); |+x> attains 1/8 within {eq_gap:.1e}",
    )


def test_criterion_03_fourier_coefficients():
    worst = 0.0
    for Omega, omega in [(60.0, 24.95), (60.0, 35.0), (30.0, 12.5)]:
        p = DriveParams(delta=0.0, Omega=Omega, omega=omega)
        for n in range(-7, 8):
            diff = np.max(
                np.abs(fourier_component(n, p) - fourier_component_quadrature(n, p))
            )
            worst = max(worst, float(diff))
    _report(3, worst < 1e-8, f"closed-form vs quadrature H_n: worst {worst:.3e} < 1e-8")


def test_criterion_04_decoupled_limit():
    bath0 = BathParams(lam=0.0, gamma=0.5, temperature=0.5)
    cfg = SolverConfig(
        tolerances=OdeTolerance(atol=1e-12, rtol=1e-10, max_step=0.05)
    )
    times = np.linspace(0.1, 30.0, 120)
    res = propagate(density_from_bloch([1, 0, 0]), FIG1_DRIVE, bath0, cfg, times)
    _track_hygiene("criterion4", res)
    rho0 = density_from_bloch([1, 0, 0])
    tol = OdeTolerance(atol=1e-13, rtol=1e-11)
    u = np.eye(2, dtype=complex)
    t_prev = 0.0
    worst = 0.0
    for i, t in enumerate(times):
        u = schrodinger_propagator(FIG1_DRIVE, t_prev, float(t), tol) @ u
        t_prev = float(t)
        diff = res.rhos[i] - u @ rho0 @ u.conj().T
        worst = max(worst, 0.5 * float(np.sum(np.abs(np.linalg.eigvalsh(diff)))))
    _report(4, worst < 1e-6, f"lambda=0 hierarchy vs unitary: trace distance {worst:.3e} < 1e-6")


def test_criterion_05_exact_dephasing():
    bath = BathParams(lam=0.25, gamma=0.5, temperature=0.5)
    drive = DriveParams(delta=0.0, Omega=0.0, omega=1.0)
    cfg = SolverConfig(matsubara_terms=4, hierarchy_depth=6)
    zero_h = np.zeros((2, 2), dtype=complex)
    times = np.linspace(0.1, 3.2, 32)
    rho0 = density_from_bloch([0.0, 0.0, 1.0])
    res = propagate(rho0, drive, bath, cfg, times, hamiltonian_fn=lambda t: zero_h)
    _track_hygiene("criterion5", res)
    worst = 0.0
    for i, t in enumerate(times):
        gamma_t = dephasing_exponent(float(t), bath)
        if gamma_t > 3.0:
            break
        measured = float(np.hypot(res.bloch[i, 2], res.bloch[i, 1]))
        worst = max(worst, abs(measured - np.exp(-gamma_t)) / np.exp(-gamma_t))
    _report(5, worst < 0.02, f"dephasing vs Gamma(t) quadrature: rel err {worst:.4f} < 0.02")


@pytest.fixture(scope="module")
def rrc_three_state_runs():
    # Initial states tilted off the equator relax their (y, z) transient
    # through the strongly coupled channel, which self-audits below 1e-3
    # only from hierarchy depth 10 upward at this operating point.
    cfg = config_from_mapping({"hierarchy_depth": 10})
    runs = {}
    for mx in (0.8, 0.5, 0.0):
        m0 = [mx, 0.0, float(np.sqrt(1.0 - mx * mx))]
        res = run_single(cfg, initial_state=m0)
        runs[mx] = res
        _track_hygiene(f"criterion6_mx{mx}", res)
    return cfg, runs


def test_criterion_06_rrc_coherence_preservation(rrc_three_state_runs):
    cfg, runs = rrc_three_state_runs
    details = []
    ok = True
    for mx, res in runs.items():
        drift = abs(res.bloch[-1, 0] - res.bloch[0, 0])
        details.append(f"mx={mx}: |drift|={drift:.4f}")
        ok = ok and drift <= 0.05
        assert res.convergence is not None and res.convergence.converged
        assert res.convergence.max_deviation < 1e-3
    _report(6, ok, "; ".join(details) + " (all <= 0.05, L/K deviation < 1e-3)")


@pytest.fixture(scope="module")
def contrast_runs():
    # The detuned points sit in the strong-coupling regime where the
    # hierarchy converges slowly in depth (the windowed value settles only
    # around L = 12, depth-ladder deviation ~1e-3); the RRC point is
    # dephasing-protected and already converged at the default depth.
    runs = {}
    for tag, omega in [
        ("rrc", OMEGA_RRC),
        ("minus", OMEGA_RRC - 10.0),
        ("plus", OMEGA_RRC + 10.0),
    ]:
        depth = {"rrc": 7}.get(tag, 12)
        cfg = config_from_mapping({"omega": omega, "hierarchy_depth": depth})
        res = run_single(cfg, check_convergence=(tag == "rrc"))
        runs[tag] = (cfg, res)
        _track_hygiene(f"criterion7_{tag}", res)
    return runs


def test_criterion_07_rrc_contrast(contrast_runs):
    windowed = {}
    for tag, (cfg, res) in contrast_runs.items():
        windowed[tag] = res.windowed_max_sync(cfg.t_max, cfg.effective_window)
    contrast_ok = windowed["rrc"] >= 2.0 * max(windowed["minus"], windowed["plus"])

    cfg, res = contrast_runs["rrc"]
    phi_end = res.phi_star[-1]
    phi_dist = min(phi_end, 2 * np.pi - phi_end)
    phase_ok = phi_dist <= 0.1

    # stability: plateau above half the early peak, final quarter within 20%
    quarter = res.times.size // 4
    early_peak = float(res.s_max[:quarter].max())
    plateau = windowed["rrc"]
    tail = res.s_max[-quarter:]
    stable_ok = plateau > 0.5 * early_peak and np.all(
        np.abs(tail - plateau) <= 0.2 * plateau
    )

    # detuned runs decay below half the RRC value by t_max
    detuned_ok = (
        res_s_end("minus", contrast_runs) < 0.5 * res.s_max[-1]
        and res_s_end("plus", contrast_runs) < 0.5 * res.s_max[-1]
    )
    _report(
        7,
        contrast_ok and phase_ok and stable_ok and detuned_ok,
        f"windowed S: rrc={windowed['rrc']:.4f}, -10={windowed['minus']:.4f}, "
        f"+10={windowed['plus']:.4f}; |phi*|={phi_dist:.3f} rad; plateau/early="
        f"{plateau / early_peak:.2f}",
    )


def res_s_end(tag, runs):
    return float(runs[tag][1].s_max[-1])


def test_criterion_08_floquet_degeneracy():
    split_rrc = quasienergy_splitting(FIG1_DRIVE)
    split_lo = quasienergy_splitting(DriveParams(Omega=60.0, omega=OMEGA_RRC - 10))
    split_hi = quasienergy_splitting(DriveParams(Omega=60.0, omega=OMEGA_RRC + 10))
    ratio = split_rrc / min(split_lo, split_hi)
    _report(
        8,
        ratio <= 0.1,
        f"quasienergy splitting ratio rrc/detuned = {ratio:.2e} <= 0.1",
    )


def test_criterion_09_drive_sweep_ridge():
    cfg = config_from_mapping({"workers": WORKERS})
    grid = sweep_drive(cfg, out_dir=None)
    HYGIENE.append(("criterion9_sweep", *grid.hygiene))
    cell = float(grid.axis2[1] - grid.axis2[0])
    z1 = 2.4048255576957693
    bad = []
    for i, big_omega in enumerate(grid.axis1):
        ridge = big_omega / z1
        argmax_omega = float(grid.axis2[np.nanargmax(grid.values[i])])
        if abs(argmax_omega - ridge) > cell + 1e-12:
            bad.append(f"Omega={big_omega}: argmax {argmax_omega} vs {ridge:.2f}")
    assert np.all(np.isfinite(grid.values)), f"failed cells: {grid.errors}"
    _report(
        9,
        not bad,
        "per-Omega argmax tracks Omega/z1 within one cell"
        + (f"; violations: {bad}" if bad else f" (cell {cell:.2f})"),
    )


def test_criterion_10_bath_sweep_monotonicity():
    cfg = config_from_mapping({"workers": WORKERS})
    grid = sweep_bath(cfg, out_dir=None)
    HYGIENE.append(("criterion10_sweep", *grid.hygiene))
    assert np.all(np.isfinite(grid.values)), f"failed cells: {grid.errors}"
    v = grid.values
    rows_ok = np.all(v[1:, :] <= v[:-1, :] * 1.02)
    cols_ok = np.all(v[:, 1:] <= v[:, :-1] * 1.02)
    _report(
        10,
        bool(rows_ok and cols_ok),
        f"windowed S non-increasing in lambda and gamma within 2% "
        f"(range {v.min():.4f}..{v.max():.4f})",
    )


def test_trajectories_close_into_limit_cycles(rrc_three_state_runs):
    # supporting check (trajectory pipeline): the last drive period of each
    # run returns to within 0.05 of its start in the (m_y, m_z) plane
    cfg, runs = rrc_three_state_runs
    period = cfg.drive.period
    for mx, res in runs.items():
        t_end = res.times[-1]
        yz_end = res.bloch[-1, 1:]
        yz_prev = np.array(
            [
                np.interp(t_end - period, res.times, res.bloch[:, 1]),
                np.interp(t_end - period, res.times, res.bloch[:, 2]),
            ]
        )
        assert np.linalg.norm(yz_end - yz_prev) < 0.05, f"mx={mx}"


def test_q_argmax_locks_at_rrc_and_oscillates_detuned(contrast_runs):
    # supporting check (phase-space pipeline): the Husimi argmax angles are
    # the Bloch-vector direction, so they can be tracked from the series
    def angles(res):
        m = res.bloch
        norm = np.linalg.norm(m, axis=1)
        theta = np.arccos(np.clip(m[:, 2] / norm, -1, 1))
        phi = np.unwrap(np.arctan2(m[:, 1], m[:, 0]))
        return theta, phi

    spreads = {}
    for tag, (cfg, res) in contrast_runs.items():
        quarter = res.times.size // 4
        theta, phi = angles(res)
        spreads[tag] = max(np.ptp(theta[-quarter:]), np.ptp(phi[-quarter:]))
    # locked at the RRC: settled at (pi/2, 0) with small late-time wobble
    cfg, res = contrast_runs["rrc"]
    theta, phi = angles(res)
    quarter = res.times.size // 4
    assert abs(np.mean(theta[-quarter:]) - np.pi / 2) < 0.1
    assert abs(np.mean(phi[-quarter:])) < 0.1
    assert spreads["rrc"] < 0.1
    # detuned: persistent large swings
    assert min(spreads["minus"], spreads["plus"]) > 3.0 * spreads["rrc"]


def test_criterion_11_solver_hygiene():
    assert HYGIENE, "no hierarchy runs were recorded"
    worst_trace = max(h[1] for h in HYGIENE)
    worst_herm = max(h[2] for h in HYGIENE)
    worst_eig = min(h[3] for h in HYGIENE)
    _report(
        11,
        worst_trace < 1e-8 and worst_herm < 1e-8 and worst_eig > -1e-6,
        f"across {len(HYGIENE)} runs: trace dev {worst_trace:.2e} < 1e-8, "
        f"hermiticity dev {worst_herm:.2e} < 1e-8, min eigenvalue {worst_eig:.2e} > -1e-6",
    )
