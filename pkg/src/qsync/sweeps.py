"""Simulation drivers: single runs, parameter sweeps, snapshots, validation.

Every driver emits deterministic CSV files with pinned headers:

    time series   t,mx,my,mz,p,re_c,im_c,s_max,phi_star,trace_dev
    sweep grids   axis1,axis2,value,converged
    Q fields      theta,phi,q
    RRC sidecar   k,z_k,omega_rrc

Sweep cells are independent jobs executed by a fixed-size process pool and
gathered by cell index, so output ordering (and the bytes written) do not
depend on scheduling.  Cell failures are recorded in the grid (value nan,
converged false) and the sweep continues; single runs fail fast.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .bath import (
    BathParams,
    QuadratureError,
    correlation_quadrature,
    dephasing_exponent,
    matsubara_expansion,
)
from .bessel import bessel_j0_zero
from .config import RunConfig
from .driven import (
    DriveParams,
    fourier_component,
    fourier_component_quadrature,
    hamiltonian,
    quasienergy_splitting,
    rrc_frequency,
    schrodinger_propagator,
)
from .heom import ConvergenceReport, convergence_check, propagate
from .ode import OdeTolerance, StepUnderflowError
from .phasespace import (
    SphereGrid,
    density_from_bloch,
    husimi_q,
    max_sync,
    q_argmax,
    window_average,
)

TIME_SERIES_HEADER = "t,mx,my,mz,p,re_c,im_c,s_max,phi_star,trace_dev"
GRID_HEADER = "axis1,axis2,value,converged"
QFIELD_HEADER = "theta,phi,q"
RRC_SIDECAR_HEADER = "k,z_k,omega_rrc"
ARGMAX_HEADER = "t,theta,phi,degenerate"


class SolverFailure(RuntimeError):
    """A simulation could not produce trustworthy output (CLI exit code 3)."""


def _fmt(x: float) -> str:
    return f"{x:.12e}"


def _write_lines(path: Path, lines) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for line in lines:
            fh.write(line + "\n")


@dataclass(frozen=True)
class TimeSeriesResult:
    """Observables of one propagation, ready for CSV emission."""

    times: np.ndarray
    bloch: np.ndarray
    populations: np.ndarray
    coherences: np.ndarray
    s_max: np.ndarray
    phi_star: np.ndarray
    trace_dev: np.ndarray
    convergence: ConvergenceReport | None
    # solver hygiene at the output times (not CSV columns)
    herm_dev: np.ndarray | None = None
    min_eig: np.ndarray | None = None

    def csv_lines(self):
        yield TIME_SERIES_HEADER
        for i, t in enumerate(self.times):
            cells = (
                t,
                self.bloch[i, 0],
                self.bloch[i, 1],
                self.bloch[i, 2],
                self.populations[i],
                self.coherences[i].real,
                self.coherences[i].imag,
                self.s_max[i],
                self.phi_star[i],
                self.trace_dev[i],
            )
            yield ",".join(_fmt(c) for c in cells)

    def write_csv(self, path) -> None:
        _write_lines(Path(path), self.csv_lines())

    def windowed_max_sync(self, t_center: float, width: float) -> float:
        return window_average(self.times, self.s_max, t_center, width)


def _to_time_series(times, rhos, convergence=None) -> TimeSeriesResult:
    from .heom import HeomResult

    res = HeomResult(times=np.asarray(times), rhos=np.asarray(rhos))
    sm = np.empty(res.times.size)
    ps = np.empty(res.times.size)
    for i in range(res.times.size):
        ps[i], sm[i] = max_sync(res.rhos[i])
    return TimeSeriesResult(
        times=res.times,
        bloch=res.bloch,
        populations=res.populations,
        coherences=res.coherences,
        s_max=sm,
        phi_star=ps,
        trace_dev=res.trace_deviation,
        convergence=convergence,
        herm_dev=res.hermiticity_deviation,
        min_eig=res.min_eigenvalue,
    )


def run_single(
    cfg: RunConfig,
    initial_state: np.ndarray | None = None,
    force: bool = False,
    hamiltonian_fn=None,
    check_convergence: bool = True,
) -> TimeSeriesResult:
    """Propagate one trajectory at the configured operating point.

    Unless ``force`` is set, a convergence self-audit at (L+1, K+1) runs
    first and a failure aborts with SolverFailure.
    """
    bloch0 = cfg.initial_state if initial_state is None else np.asarray(initial_state)
    rho0 = density_from_bloch(bloch0)
    report = None
    if check_convergence:
        report = convergence_check(
            cfg.drive,
            cfg.bath,
            cfg.solver,
            rho0,
            probe_time=min(cfg.probe_time, cfg.t_max),
            hamiltonian_fn=hamiltonian_fn,
        )
        if not report.converged and not force:
            raise SolverFailure(
                f"convergence check failed: max Bloch deviation "
                f"{report.max_deviation:.3e} >= {report.threshold:.0e} "
                "(rerun with --force to override)"
            )
    try:
        res = propagate(
            rho0, cfg.drive, cfg.bath, cfg.solver, cfg.output_times, hamiltonian_fn
        )
    except (StepUnderflowError, ValueError) as exc:
        raise SolverFailure(str(exc)) from exc
    return _to_time_series(res.times, res.rhos, report)


def trajectories(
    cfg: RunConfig, initial_states, out_dir=None, force: bool = False
) -> list[TimeSeriesResult]:
    """One run per initial Bloch vector on the shared output-time grid."""
    states = [np.asarray(s, dtype=float) for s in initial_states]
    if not states:
        raise SolverFailure("trajectories requires at least one initial state")
    results = []
    for i, m0 in enumerate(states):
        res = run_single(cfg, initial_state=m0, force=force, check_convergence=(i == 0))
        results.append(res)
        if out_dir is not None:
            res.write_csv(Path(out_dir) / f"trajectory_{i}.csv")
    return results


# ---------------------------------------------------------------------------
# sweeps


@dataclass(frozen=True)
class SweepGrid:
    """Rectangular sweep result: windowed max-sync per cell plus flags."""

    axis1_label: str
    axis2_label: str
    axis1: np.ndarray
    axis2: np.ndarray
    values: np.ndarray  # shape (len(axis1), len(axis2))
    converged: np.ndarray  # bool, same shape
    errors: tuple = ()
    # worst-case solver hygiene across all cells:
    # (max trace deviation, max hermiticity deviation, min eigenvalue)
    hygiene: tuple = (np.nan, np.nan, np.nan)

    def csv_lines(self):
        yield GRID_HEADER
        for i, a in enumerate(self.axis1):
            for j, b in enumerate(self.axis2):
                flag = "true" if self.converged[i, j] else "false"
                yield f"{_fmt(a)},{_fmt(b)},{_fmt(self.values[i, j])},{flag}"

    def write_csv(self, path) -> None:
        _write_lines(Path(path), self.csv_lines())


def _windowed_cell(mapping: dict) -> tuple[float, bool, tuple]:
    """Run one sweep cell from a flat config mapping.

    Returns (windowed value, convergence flag, hygiene triple).
    """
    from .config import config_from_mapping

    cfg = config_from_mapping(mapping)
    rho0 = density_from_bloch(cfg.initial_state)
    report = convergence_check(
        cfg.drive,
        cfg.bath,
        cfg.solver,
        rho0,
        probe_time=min(cfg.probe_time, cfg.t_max),
    )
    res = propagate(rho0, cfg.drive, cfg.bath, cfg.solver, cfg.output_times)
    hygiene = (
        float(res.trace_deviation.max()),
        float(res.hermiticity_deviation.max()),
        float(res.min_eigenvalue.min()),
    )
    ts = _to_time_series(res.times, res.rhos)
    value = ts.windowed_max_sync(cfg.t_max, cfg.effective_window)
    return value, bool(report.converged), hygiene


def _cell_worker(payload):
    index, mapping = payload
    try:
        value, flag, hygiene = _windowed_cell(mapping)
        return index, value, flag, "", hygiene
    except (SolverFailure, StepUnderflowError, QuadratureError, ValueError) as exc:
        return index, float("nan"), False, f"{type(exc).__name__}: {exc}", None


def _run_cells(payloads, workers: int):
    if workers <= 1:
        return [_cell_worker(p) for p in payloads]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_cell_worker, payloads))


def write_rrc_sidecar(cfg: RunConfig, path, orders=(1, 2, 3)) -> None:
    """k, z_k and omega_rrc = Omega/z_k for the configured drive amplitude."""
    lines = [RRC_SIDECAR_HEADER]
    for k in orders:
        z = bessel_j0_zero(k)
        lines.append(f"{k},{_fmt(z)},{_fmt(cfg.drive.Omega / z)}")
    _write_lines(Path(path), lines)


def sweep_drive(cfg: RunConfig, out_dir=None) -> SweepGrid:
    """Windowed max-sync over the (Omega, omega) grid; Fig. 5 analog."""
    omegas_drive, omegas = cfg.drive_grid
    payloads = []
    for i, big_omega in enumerate(omegas_drive):
        for j, omega in enumerate(omegas):
            mapping = dict(cfg.to_mapping())
            mapping["Omega"] = float(big_omega)
            mapping["omega"] = float(omega)
            payloads.append(((i, j), mapping))
    grid = _collect(
        payloads, "Omega", "omega", omegas_drive, omegas, cfg.workers
    )
    if out_dir is not None:
        grid.write_csv(Path(out_dir) / "sweep_drive.csv")
        write_rrc_sidecar(cfg, Path(out_dir) / "rrc_lines.csv")
    return grid


def sweep_bath(cfg: RunConfig, out_dir=None) -> SweepGrid:
    """Windowed max-sync over the (lambda, gamma) grid at the first RRC."""
    lams, gams = cfg.bath_grid
    omega_rrc = rrc_frequency(1, cfg.drive.Omega)
    payloads = []
    for i, lam in enumerate(lams):
        for j, gam in enumerate(gams):
            mapping = dict(cfg.to_mapping())
            mapping["lambda"] = float(lam)
            mapping["gamma"] = float(gam)
            mapping["omega"] = float(omega_rrc)
            payloads.append(((i, j), mapping))
    grid = _collect(payloads, "lambda", "gamma", lams, gams, cfg.workers)
    if out_dir is not None:
        grid.write_csv(Path(out_dir) / "sweep_bath.csv")
        write_rrc_sidecar(cfg, Path(out_dir) / "rrc_lines.csv")
    return grid


def _collect(payloads, label1, label2, axis1, axis2, workers) -> SweepGrid:
    values = np.full((axis1.size, axis2.size), np.nan)
    flags = np.zeros((axis1.size, axis2.size), dtype=bool)
    errors = []
    worst = [0.0, 0.0, np.inf]
    for (i, j), value, flag, err, hygiene in _run_cells(payloads, workers):
        values[i, j] = value
        flags[i, j] = flag
        if err:
            errors.append(((i, j), err))
        if hygiene is not None:
            worst[0] = max(worst[0], hygiene[0])
            worst[1] = max(worst[1], hygiene[1])
            worst[2] = min(worst[2], hygiene[2])
    return SweepGrid(
        axis1_label=label1,
        axis2_label=label2,
        axis1=axis1,
        axis2=axis2,
        values=values,
        converged=flags,
        errors=tuple(errors),
        hygiene=tuple(worst),
    )


# ---------------------------------------------------------------------------
# phase-space snapshots


def qsnapshot(cfg: RunConfig, out_dir=None):
    """Q(theta, phi) fields at the snapshot times plus the argmax series.

    Returns (fields, argmax_rows): one (2d array) field per snapshot time on
    the configured sphere grid, and per-output-time argmax angles.
    """
    times = np.asarray(
        sorted(set(np.concatenate([cfg.output_times, cfg.snapshot_times])))
    )
    rho0 = density_from_bloch(cfg.initial_state)
    try:
        res = propagate(rho0, cfg.drive, cfg.bath, cfg.solver, times)
    except (StepUnderflowError, ValueError) as exc:
        raise SolverFailure(str(exc)) from exc
    grid = SphereGrid.gauss_legendre(cfg.theta_nodes, cfg.phi_nodes)

    fields = []
    for snap in cfg.snapshot_times:
        idx = int(np.argmin(np.abs(times - snap)))
        q = husimi_q(res.rhos[idx], grid.thetas[:, None], grid.phis[None, :])
        fields.append(q)
        if out_dir is not None:
            lines = [QFIELD_HEADER]
            for a, th in enumerate(grid.thetas):
                for b, ph in enumerate(grid.phis):
                    lines.append(f"{_fmt(th)},{_fmt(ph)},{_fmt(q[a, b])}")
            _write_lines(Path(out_dir) / f"qfield_{snap:.6g}.csv", lines)

    argmax_rows = []
    for i, t in enumerate(times):
        theta, phi, degenerate = q_argmax(res.rhos[i])
        argmax_rows.append((t, theta, phi, degenerate))
    if out_dir is not None:
        lines = [ARGMAX_HEADER]
        for t, theta, phi, deg in argmax_rows:
            lines.append(
                f"{_fmt(t)},{_fmt(theta)},{_fmt(phi)},{'true' if deg else 'false'}"
            )
        _write_lines(Path(out_dir) / "q_argmax.csv", lines)
    return fields, argmax_rows


# ---------------------------------------------------------------------------
# validation oracle bundle


def validate(cfg: RunConfig, out_dir=None, fault_c0_scale: float = 1.0) -> dict:
    """Run the independent-oracle suite; report machine-readable pass/fail.

    fault_c0_scale is a sensitivity hook for tests: scaling the Drude
    coefficient must break the expansion-vs-quadrature oracle.
    """
    report: dict = {"oracles": {}}

    def record(name, status, error, threshold, detail=""):
        report["oracles"][name] = {
            "status": status,
            "error": None if error is None else float(error),
            "threshold": None if threshold is None else float(threshold),
            "detail": detail,
        }

    # 1. closed-form Fourier components vs direct quadrature
    worst = 0.0
    for n in range(-cfg.fourier_n_max, cfg.fourier_n_max + 1):
        diff = np.max(
            np.abs(
                fourier_component(n, cfg.drive)
                - fourier_component_quadrature(n, cfg.drive)
            )
        )
        worst = max(worst, float(diff))
    record(
        "fourier_vs_quadrature",
        "pass" if worst < 1e-8 else "fail",
        worst,
        1e-8,
        f"|n| <= {cfg.fourier_n_max} at Omega={cfg.drive.Omega}, omega={cfg.drive.omega}",
    )

    # 2. Matsubara expansion vs correlation quadrature
    if cfg.bath.lam == 0.0:
        record("expansion_vs_quadrature", "skipped", None, None, "lambda = 0: not applicable")
    else:
        exp = matsubara_expansion(cfg.bath, cfg.solver.matsubara_terms)
        ck = exp.ck.copy()
        ck[0] *= fault_c0_scale
        exp = replace(exp, ck=ck)
        gamma = cfg.bath.gamma
        nu_next = 2.0 * np.pi * (cfg.solver.matsubara_terms + 1) * cfg.bath.temperature
        ts = np.linspace(0.05, 10.0 / gamma, 40)
        scale0 = abs(exp.correlation(0.0))
        worst_excess = -np.inf
        worst_pair = (0.0, 0.0)
        for t in ts:
            diff = abs(exp.correlation(t) - correlation_quadrature(float(t), cfg.bath))
            tol_t = max(1e-3 * scale0, exp.residual * nu_next * np.exp(-nu_next * t))
            if diff - tol_t > worst_excess:
                worst_excess = diff - tol_t
                worst_pair = (diff, tol_t)
        record(
            "expansion_vs_quadrature",
            "pass" if worst_excess < 0 else "fail",
            worst_pair[0],
            worst_pair[1],
            f"K={cfg.solver.matsubara_terms}, t in [0.05, {10.0 / gamma:.3g}]",
        )

    # 3. decoupled limit: lambda = 0 hierarchy vs unitary integration,
    # both sides at reference precision so the comparison probes the
    # hierarchy structure rather than integrator phase drift
    decoupled = replace(cfg.bath, lam=0.0)
    rho0 = density_from_bloch(cfg.initial_state)
    short_times = np.linspace(0.01, min(10.0, cfg.t_max), 200)
    tight = replace(
        cfg.solver,
        tolerances=OdeTolerance(
            atol=1e-12, rtol=1e-10, max_step=cfg.solver.tolerances.max_step
        ),
    )
    res = propagate(rho0, cfg.drive, decoupled, tight, short_times)
    tol = OdeTolerance(atol=1e-13, rtol=1e-11)
    worst = 0.0
    u_prev = np.eye(2, dtype=complex)
    t_prev = 0.0
    for i, t in enumerate(short_times):
        u_prev = schrodinger_propagator(cfg.drive, t_prev, float(t), tol) @ u_prev
        t_prev = float(t)
        rho_exact = u_prev @ rho0 @ u_prev.conj().T
        diff = res.rhos[i] - rho_exact
        tr_dist = 0.5 * float(np.sum(np.abs(np.linalg.eigvalsh(diff))))
        worst = max(worst, tr_dist)
    record(
        "decoupled_limit",
        "pass" if worst < 1e-6 else "fail",
        worst,
        1e-6,
        f"trace distance over t in [0, {short_times[-1]:.3g}]",
    )

    # 4. pure dephasing vs the decoherence-integral quadrature
    if cfg.bath.lam == 0.0:
        record("dephasing", "skipped", None, None, "lambda = 0: not applicable")
    else:
        worst = _dephasing_error(cfg)
        record(
            "dephasing",
            "pass" if worst < 0.02 else "fail",
            worst,
            0.02,
            "relative coherence error while Gamma <= 3",
        )

    # 5. Floquet degeneracy contrast at the RRC
    omega_rrc = rrc_frequency(1, cfg.drive.Omega)
    d = cfg.floquet_detuning
    split_rrc = quasienergy_splitting(replace(cfg.drive, omega=omega_rrc))
    split_lo = quasienergy_splitting(replace(cfg.drive, omega=omega_rrc - d))
    split_hi = quasienergy_splitting(replace(cfg.drive, omega=omega_rrc + d))
    ratio = split_rrc / min(split_lo, split_hi)
    record(
        "floquet_degeneracy",
        "pass" if ratio <= 0.1 else "fail",
        ratio,
        0.1,
        f"splitting {split_rrc:.3e} at RRC vs {min(split_lo, split_hi):.3e} detuned",
    )

    report["all_pass"] = all(
        o["status"] != "fail" for o in report["oracles"].values()
    )
    if out_dir is not None:
        path = Path(out_dir) / "validation.json"
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(report, indent=2) + "\n", encoding="utf-8")
    return report


def _dephasing_error(cfg: RunConfig) -> float:
    """Max relative coherence error of the hierarchy against exp(-Gamma(t)).

    Uses the pure-dephasing configuration: the sz part of the system
    Hamiltonian is removed (test hook), so sx coherences decay exactly as
    the decoherence integral predicts.
    """
    drive = replace(cfg.drive, Omega=0.0)
    bias = hamiltonian(0.0, replace(drive, omega0=cfg.drive.omega0))
    bias = bias - 0.5 * cfg.drive.omega0 * np.array([[1, 0], [0, -1]], dtype=complex)

    def ham(t):
        return bias

    # pick the horizon where Gamma reaches 3
    t_hi = 1.0
    while dephasing_exponent(t_hi, cfg.bath) < 3.0 and t_hi < 200.0:
        t_hi *= 1.5
    times = np.linspace(t_hi / 40.0, t_hi, 40)
    rho0 = density_from_bloch([0.0, 0.0, 1.0])  # coherence 1/2 between sx states
    res = propagate(rho0, drive, cfg.bath, cfg.solver, times, hamiltonian_fn=ham)
    worst = 0.0
    for i, t in enumerate(times):
        gamma_t = dephasing_exponent(float(t), cfg.bath)
        if gamma_t > 3.0:
            break
        # coherence between sx eigenstates = (mz + i my)/2 here; initial 1/2
        m = res.bloch[i]
        decay = np.hypot(m[2], m[1])
        rel = abs(decay - np.exp(-gamma_t)) / np.exp(-gamma_t)
        worst = max(worst, rel)
    return worst
