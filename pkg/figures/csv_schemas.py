"""Shared loader for the simulation CSV artifacts.

Validates the documented headers exactly before parsing; every figure
script goes through here so schema drift aborts with the offending column
named instead of mis-plotting.  No physics happens in this package: every
plotted number originates in a CSV.
"""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

TIME_SERIES_COLUMNS = [
    "t", "mx", "my", "mz", "p", "re_c", "im_c", "s_max", "phi_star", "trace_dev",
]
GRID_COLUMNS = ["axis1", "axis2", "value", "converged"]
QFIELD_COLUMNS = ["theta", "phi", "q"]
RRC_COLUMNS = ["k", "z_k", "omega_rrc"]
ARGMAX_COLUMNS = ["t", "theta", "phi", "degenerate"]


class SchemaError(ValueError):
    """A CSV does not match its documented schema."""


def _read_rows(path: Path, expected: list[str]) -> list[list[str]]:
    try:
        with open(path, "r", encoding="utf-8", newline="") as fh:
            rows = list(csv.reader(fh))
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from exc
    if not rows:
        raise SchemaError(f"{path} is empty (expected header {','.join(expected)})")
    header = rows[0]
    if header != expected:
        for i, name in enumerate(expected):
            if i >= len(header) or header[i] != name:
                got = header[i] if i < len(header) else "<missing>"
                raise SchemaError(
                    f"{path}: column {i} is {got!r}, expected {name!r}"
                )
        raise SchemaError(
            f"{path}: {len(header)} columns, expected {len(expected)}"
        )
    if len(rows) == 1:
        raise SchemaError(f"{path} has a header but no data rows")
    return rows[1:]


def _bool(cell: str) -> bool:
    return cell.strip().lower() == "true"


def load_time_series(path) -> dict[str, np.ndarray]:
    """Columns of a time-series CSV as float arrays keyed by column name."""
    rows = _read_rows(Path(path), TIME_SERIES_COLUMNS)
    data = np.array([[float(c) for c in row] for row in rows])
    return {name: data[:, i] for i, name in enumerate(TIME_SERIES_COLUMNS)}


def load_grid(path) -> dict:
    """A sweep grid reshaped to (axis1, axis2, values, converged) arrays."""
    rows = _read_rows(Path(path), GRID_COLUMNS)
    a1 = np.array([float(r[0]) for r in rows])
    a2 = np.array([float(r[1]) for r in rows])
    vals = np.array([float(r[2]) for r in rows])
    conv = np.array([_bool(r[3]) for r in rows])
    axis1 = np.unique(a1)
    axis2 = np.unique(a2)
    if axis1.size * axis2.size != len(rows):
        raise SchemaError(
            f"{path}: {len(rows)} rows do not fill a "
            f"{axis1.size} x {axis2.size} grid"
        )
    shape = (axis1.size, axis2.size)
    values = np.full(shape, np.nan)
    converged = np.zeros(shape, dtype=bool)
    i1 = np.searchsorted(axis1, a1)
    i2 = np.searchsorted(axis2, a2)
    values[i1, i2] = vals
    converged[i1, i2] = conv
    return {"axis1": axis1, "axis2": axis2, "values": values, "converged": converged}


def load_qfield(path) -> dict:
    """A Q(theta, phi) field reshaped onto its angle grid."""
    rows = _read_rows(Path(path), QFIELD_COLUMNS)
    th = np.array([float(r[0]) for r in rows])
    ph = np.array([float(r[1]) for r in rows])
    q = np.array([float(r[2]) for r in rows])
    thetas = np.unique(th)
    phis = np.unique(ph)
    if thetas.size * phis.size != len(rows):
        raise SchemaError(f"{path}: rows do not fill the theta x phi grid")
    field = np.full((thetas.size, phis.size), np.nan)
    field[np.searchsorted(thetas, th), np.searchsorted(phis, ph)] = q
    return {"thetas": thetas, "phis": phis, "q": field}


def load_rrc_lines(path) -> list[dict]:
    """The RRC sidecar: one dict per resonance order."""
    rows = _read_rows(Path(path), RRC_COLUMNS)
    return [
        {"k": int(r[0]), "z_k": float(r[1]), "omega_rrc": float(r[2])} for r in rows
    ]


def load_argmax_series(path) -> dict[str, np.ndarray]:
    """The Husimi-argmax track: t, theta, phi arrays plus a degeneracy mask."""
    rows = _read_rows(Path(path), ARGMAX_COLUMNS)
    return {
        "t": np.array([float(r[0]) for r in rows]),
        "theta": np.array([float(r[1]) for r in rows]),
        "phi": np.array([float(r[2]) for r in rows]),
        "degenerate": np.array([_bool(r[3]) for r in rows]),
    }
