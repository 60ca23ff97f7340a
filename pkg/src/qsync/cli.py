"""Command-line entry point.

Subcommands: simulate, trajectories, qsnapshot, sweep-drive, sweep-bath,
floquet, fourier, validate.  Global flags on every subcommand:
--config PATH (flat JSON, see config.DEFAULTS), --out DIR, --workers N,
--force.  Exit codes: 0 success, 2 config error, 3 solver failure,
4 validation failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from .config import ConfigError, load_config
from .driven import fourier_component, quasienergy_splitting, floquet_quasienergies
from .sweeps import (
    SolverFailure,
    _fmt,
    _write_lines,
    qsnapshot,
    run_single,
    sweep_bath,
    sweep_drive,
    trajectories,
    validate,
    write_rrc_sidecar,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_SOLVER = 3
EXIT_VALIDATION = 4


def _common_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--config", metavar="PATH", help="flat JSON configuration file")
    sub.add_argument("--out", metavar="DIR", default="out", help="output directory")
    sub.add_argument("--workers", type=int, metavar="N", help="sweep worker processes")
    sub.add_argument(
        "--force",
        action="store_true",
        help="run even if the convergence self-audit fails",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qsync",
        description=(
            "Numerically exact simulation of a driven two-level system in a "
            "bosonic bath, with phase-space synchronization diagnostics"
        ),
    )
    subs = parser.add_subparsers(dest="command", required=True)
    for name, descr in [
        ("simulate", "single trajectory time series at the configured point"),
        ("trajectories", "Bloch trajectories for several initial states"),
        ("qsnapshot", "Husimi-Q fields at snapshot times plus the argmax series"),
        ("sweep-drive", "windowed max-sync over the (Omega, omega) grid"),
        ("sweep-bath", "windowed max-sync over the (lambda, gamma) grid at the RRC"),
        ("floquet", "quasienergies at the configured drive and detuned points"),
        ("fourier", "operator-valued Fourier components of the rotating frame"),
        ("validate", "run the independent-oracle suite"),
    ]:
        sub = subs.add_parser(name, help=descr)
        _common_flags(sub)
        if name == "trajectories":
            sub.add_argument(
                "--initial-mx",
                default="0.8,0.5,0",
                help="comma-separated x components; states are pure, in the x-z plane",
            )
    return parser


def _cmd_simulate(cfg, out_dir, force):
    res = run_single(cfg, force=force)
    res.write_csv(out_dir / "timeseries.csv")
    print(f"wrote {out_dir / 'timeseries.csv'}")
    return EXIT_OK


def _cmd_trajectories(cfg, out_dir, force, initial_mx):
    try:
        mxs = [float(s) for s in initial_mx.split(",") if s.strip()]
    except ValueError as exc:
        raise ConfigError(f"bad --initial-mx: {exc}") from exc
    if any(abs(m) > 1 for m in mxs):
        raise ConfigError("--initial-mx components must lie in [-1, 1]")
    states = [np.array([mx, 0.0, np.sqrt(max(0.0, 1.0 - mx * mx))]) for mx in mxs]
    trajectories(cfg, states, out_dir=out_dir, force=force)
    print(f"wrote {len(states)} trajectory CSVs to {out_dir}")
    return EXIT_OK


def _cmd_qsnapshot(cfg, out_dir):
    qsnapshot(cfg, out_dir=out_dir)
    print(f"wrote Q fields and q_argmax.csv to {out_dir}")
    return EXIT_OK


def _cmd_sweep_drive(cfg, out_dir):
    grid = sweep_drive(cfg, out_dir=out_dir)
    n_bad = int(np.sum(~grid.converged))
    print(f"wrote {out_dir / 'sweep_drive.csv'} ({n_bad} unconverged cells)")
    for cell, err in grid.errors:
        print(f"  cell {cell}: {err}", file=sys.stderr)
    return EXIT_OK


def _cmd_sweep_bath(cfg, out_dir):
    grid = sweep_bath(cfg, out_dir=out_dir)
    n_bad = int(np.sum(~grid.converged))
    print(f"wrote {out_dir / 'sweep_bath.csv'} ({n_bad} unconverged cells)")
    for cell, err in grid.errors:
        print(f"  cell {cell}: {err}", file=sys.stderr)
    return EXIT_OK


def _cmd_floquet(cfg, out_dir):
    rows = ["omega,eps_minus,eps_plus,splitting"]
    d = cfg.floquet_detuning
    for omega in (cfg.drive.omega - d, cfg.drive.omega, cfg.drive.omega + d):
        if omega <= 0:
            continue
        p = replace(cfg.drive, omega=omega)
        eps = floquet_quasienergies(p)
        rows.append(
            f"{_fmt(omega)},{_fmt(eps[0])},{_fmt(eps[1])},{_fmt(quasienergy_splitting(p))}"
        )
    _write_lines(out_dir / "floquet.csv", rows)
    print(f"wrote {out_dir / 'floquet.csv'}")
    return EXIT_OK


def _cmd_fourier(cfg, out_dir):
    rows = ["n,h00_re,h00_im,h01_re,h01_im,h10_re,h10_im,h11_re,h11_im"]
    for n in range(-cfg.fourier_n_max, cfg.fourier_n_max + 1):
        h = fourier_component(n, cfg.drive)
        cells = [str(n)]
        for a in range(2):
            for b in range(2):
                cells.append(_fmt(h[a, b].real))
                cells.append(_fmt(h[a, b].imag))
        rows.append(",".join(cells))
    _write_lines(out_dir / "fourier.csv", rows)
    write_rrc_sidecar(cfg, out_dir / "rrc_lines.csv")
    print(f"wrote {out_dir / 'fourier.csv'}")
    return EXIT_OK


def _cmd_validate(cfg, out_dir):
    report = validate(cfg, out_dir=out_dir)
    for name, entry in report["oracles"].items():
        err = "-" if entry["error"] is None else f"{entry['error']:.3e}"
        print(f"{entry['status']:>7}  {name}  (error {err})")
    if not report["all_pass"]:
        print("validation FAILED", file=sys.stderr)
        return EXIT_VALIDATION
    print("validation passed")
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        overrides = {}
        if args.workers is not None:
            overrides["workers"] = args.workers
        cfg = load_config(args.config, overrides)
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        # keep the exact configuration next to the outputs for reproducibility
        (out_dir / "config.json").write_text(
            json.dumps(cfg.to_mapping(), indent=2, default=float) + "\n",
            encoding="utf-8",
        )
        if args.command == "simulate":
            return _cmd_simulate(cfg, out_dir, args.force)
        if args.command == "trajectories":
            return _cmd_trajectories(cfg, out_dir, args.force, args.initial_mx)
        if args.command == "qsnapshot":
            return _cmd_qsnapshot(cfg, out_dir)
        if args.command == "sweep-drive":
            return _cmd_sweep_drive(cfg, out_dir)
        if args.command == "sweep-bath":
            return _cmd_sweep_bath(cfg, out_dir)
        if args.command == "floquet":
            return _cmd_floquet(cfg, out_dir)
        if args.command == "fourier":
            return _cmd_fourier(cfg, out_dir)
        if args.command == "validate":
            return _cmd_validate(cfg, out_dir)
        raise ConfigError(f"unknown command {args.command}")  # pragma: no cover
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except SolverFailure as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
