"""Husimi-Q heatmaps, one panel per qfield_*.csv snapshot.

Panels are ordered by snapshot time (parsed from the filename suffix the
simulator writes), sharing one color scale fixed to the Q bound 1/(2 pi).

Usage: fig2-husimi-maps --in DIR --out PATH [--cmap NAME]
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

import figstyle
import matplotlib.pyplot as plt
from csv_schemas import SchemaError, load_qfield


def qfield_files(in_dir: Path) -> list[Path]:
    def snap_time(path: Path) -> float:
        try:
            return float(path.stem.split("_", 1)[1])
        except (IndexError, ValueError):
            return np.inf

    files = sorted(in_dir.glob("qfield_*.csv"), key=snap_time)
    if not files:
        raise SchemaError(f"no qfield_*.csv files in {in_dir}")
    return files


def build_figure(in_dir, cmap="viridis"):
    in_dir = Path(in_dir)
    files = qfield_files(in_dir)
    fig, axes = plt.subplots(
        1, len(files), figsize=(2.6 * len(files), 2.6), squeeze=False, sharey=True
    )
    vmax = 1.0 / (2.0 * np.pi)
    mesh = None
    for ax, path in zip(axes[0], files):
        field = load_qfield(path)
        mesh = ax.pcolormesh(
            field["phis"],
            field["thetas"],
            field["q"],
            cmap=cmap,
            vmin=0.0,
            vmax=vmax,
            shading="nearest",
        )
        ax.set_title(f"t = {path.stem.split('_', 1)[1]}")
        ax.set_xlabel(r"$\varphi$")
        ax.invert_yaxis()
    axes[0][0].set_ylabel(r"$\theta$")
    fig.colorbar(mesh, ax=axes[0], label="Q", fraction=0.05)
    return fig


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--in", dest="in_dir", required=True, metavar="DIR")
    parser.add_argument("--out", required=True, metavar="PATH")
    parser.add_argument("--cmap", default="viridis")
    args = parser.parse_args(argv)
    try:
        fig = build_figure(args.in_dir, cmap=args.cmap)
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return 1
    figstyle.save(fig, args.out)
    print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
