"""Run configuration: a flat JSON key set mapped onto the solver objects.

One structured text file drives every CLI entry point so sweeps are
reproducible from a single artifact; CLI flags override file values.
Unknown keys are rejected to catch typos early.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .bath import BathParams
from .driven import DriveParams
from .heom import SolverConfig
from .ode import OdeTolerance


class ConfigError(ValueError):
    """Invalid or inconsistent run configuration (CLI exit code 2)."""


NAMED_STATES = {
    "+x": (1.0, 0.0, 0.0),
    "-x": (-1.0, 0.0, 0.0),
    "+y": (0.0, 1.0, 0.0),
    "-y": (0.0, -1.0, 0.0),
    "+z": (0.0, 0.0, 1.0),
    "-z": (0.0, 0.0, -1.0),
    "mixed": (0.0, 0.0, 0.0),
}

DEFAULTS: dict[str, Any] = {
    # drive (units of omega0; omega defaults to the first resonant ratio for Omega=60)
    "omega0": 1.0,
    "delta": 0.0,
    "Omega": 60.0,
    "omega": None,  # None -> Omega / z_1
    # bath (T in hbar*omega0/k_B)
    "lambda": 1.0,
    "gamma": 0.5,
    "temperature": 0.5,
    # solver truncation and integration
    "matsubara_terms": 4,
    "hierarchy_depth": 7,
    "atol": 1e-10,
    "rtol": 1e-8,
    "max_step": 0.05,
    "min_step": 1e-13,
    "use_scaling": True,
    "use_terminator": True,
    "max_ado_mb": 1024,
    # run shape
    "initial_state": "+x",
    "t_max": 30.0,
    "samples": 1501,
    "window_width": None,  # None -> one drive period
    "probe_time": 5.0,
    # drive sweep grid (Fig. 5 analog, desk scale)
    "Omega_min": 20.0,
    "Omega_max": 80.0,
    "Omega_count": 9,
    "omega_min": 5.0,
    "omega_max": 45.0,
    "omega_count": 9,
    # bath sweep grid (Fig. 6 analog, desk scale)
    "lambda_min": 0.25,
    "lambda_max": 2.0,
    "lambda_count": 5,
    "gamma_min": 0.25,
    "gamma_max": 2.0,
    "gamma_count": 5,
    # phase-space sampling
    "snapshot_times": None,  # None -> [0, t_max/2, t_max]
    "theta_nodes": 64,
    "phi_nodes": 128,
    # analysis helpers
    "floquet_detuning": 10.0,
    "fourier_n_max": 7,
    # execution
    "workers": 1,
    "seed": 1234,
}


def _as_bloch(value) -> np.ndarray:
    if isinstance(value, str):
        if value not in NAMED_STATES:
            raise ConfigError(
                f"unknown named state {value!r}; options: {sorted(NAMED_STATES)}"
            )
        return np.array(NAMED_STATES[value])
    vec = np.asarray(value, dtype=float)
    if vec.shape != (3,):
        raise ConfigError("initial_state must be a named state or a 3-vector")
    if np.linalg.norm(vec) > 1.0 + 1e-9:
        raise ConfigError("initial Bloch vector must have norm <= 1")
    return vec


@dataclass(frozen=True)
class RunConfig:
    """Validated run configuration; see DEFAULTS for the JSON key set."""

    drive: DriveParams
    bath: BathParams
    solver: SolverConfig
    initial_state: np.ndarray
    t_max: float
    samples: int
    window_width: float | None
    probe_time: float
    drive_grid: tuple[np.ndarray, np.ndarray]  # (Omega values, omega values)
    bath_grid: tuple[np.ndarray, np.ndarray]  # (lambda values, gamma values)
    snapshot_times: tuple[float, ...]
    theta_nodes: int
    phi_nodes: int
    floquet_detuning: float
    fourier_n_max: int
    workers: int
    seed: int
    raw: dict = field(repr=False, default_factory=dict)

    @property
    def output_times(self) -> np.ndarray:
        return np.linspace(0.0, self.t_max, self.samples)

    @property
    def effective_window(self) -> float:
        if self.window_width is not None:
            return self.window_width
        return self.drive.period

    def to_mapping(self) -> dict:
        """The flat JSON mapping that reproduces this configuration."""
        return dict(self.raw)


def _axis(mapping, name) -> np.ndarray:
    lo = mapping[f"{name}_min"]
    hi = mapping[f"{name}_max"]
    count = mapping[f"{name}_count"]
    if count < 1:
        raise ConfigError(f"{name}_count must be >= 1")
    if count > 1 and not hi > lo:
        raise ConfigError(f"{name}_max must exceed {name}_min")
    return np.linspace(lo, hi, count)


def config_from_mapping(overrides: dict | None = None) -> RunConfig:
    """Merge overrides onto DEFAULTS and build the validated RunConfig."""
    mapping = dict(DEFAULTS)
    if overrides:
        unknown = set(overrides) - set(DEFAULTS)
        if unknown:
            raise ConfigError(f"unknown configuration keys: {sorted(unknown)}")
        mapping.update(overrides)
    try:
        omega = mapping["omega"]
        if omega is None:
            from .driven import rrc_frequency

            omega = rrc_frequency(1, mapping["Omega"])
        drive = DriveParams(
            omega0=mapping["omega0"],
            delta=mapping["delta"],
            Omega=mapping["Omega"],
            omega=omega,
        )
        bath = BathParams(
            lam=mapping["lambda"],
            gamma=mapping["gamma"],
            temperature=mapping["temperature"],
        )
        solver = SolverConfig(
            matsubara_terms=int(mapping["matsubara_terms"]),
            hierarchy_depth=int(mapping["hierarchy_depth"]),
            tolerances=OdeTolerance(
                atol=mapping["atol"],
                rtol=mapping["rtol"],
                max_step=mapping["max_step"],
                min_step=mapping["min_step"],
            ),
            use_scaling=bool(mapping["use_scaling"]),
            use_terminator=bool(mapping["use_terminator"]),
            max_ado_bytes=int(mapping["max_ado_mb"]) << 20,
        )
    except (ValueError, TypeError) as exc:
        raise ConfigError(str(exc)) from exc

    t_max = float(mapping["t_max"])
    samples = int(mapping["samples"])
    if not t_max > 0:
        raise ConfigError("t_max must be positive")
    if samples < 2:
        raise ConfigError("samples must be >= 2")
    window = mapping["window_width"]
    if window is not None and window < 0:
        raise ConfigError("window_width must be >= 0")
    snaps = mapping["snapshot_times"]
    if snaps is None:
        snaps = (0.0, 0.5 * t_max, t_max)
    snaps = tuple(float(s) for s in snaps)
    if any(s < 0 or s > t_max for s in snaps):
        raise ConfigError("snapshot_times must lie within [0, t_max]")
    workers = int(mapping["workers"])
    if workers < 1:
        raise ConfigError("workers must be >= 1")

    return RunConfig(
        drive=drive,
        bath=bath,
        solver=solver,
        initial_state=_as_bloch(mapping["initial_state"]),
        t_max=t_max,
        samples=samples,
        window_width=window,
        probe_time=float(mapping["probe_time"]),
        drive_grid=(_axis(mapping, "Omega"), _axis(mapping, "omega")),
        bath_grid=(_axis(mapping, "lambda"), _axis(mapping, "gamma")),
        snapshot_times=snaps,
        theta_nodes=int(mapping["theta_nodes"]),
        phi_nodes=int(mapping["phi_nodes"]),
        floquet_detuning=float(mapping["floquet_detuning"]),
        fourier_n_max=int(mapping["fourier_n_max"]),
        workers=workers,
        seed=int(mapping["seed"]),
        raw=mapping,
    )


def load_config(path: str | None, overrides: dict | None = None) -> RunConfig:
    """Read a JSON config file (optional) and apply CLI overrides on top."""
    file_values: dict = {}
    if path is not None:
        try:
            with open(path, "r", encoding="utf-8") as fh:
                file_values = json.load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read config file {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config file {path} is not valid JSON: {exc}") from exc
        if not isinstance(file_values, dict):
            raise ConfigError("config file must contain a JSON object")
    merged = dict(file_values)
    if overrides:
        merged.update(overrides)
    return config_from_mapping(merged)
