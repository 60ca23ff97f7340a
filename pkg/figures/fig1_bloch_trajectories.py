"""Bloch-sphere trajectories, one 3D path per trajectory CSV.

Reads every trajectory_*.csv in the input directory (falling back to
timeseries.csv for a single-run directory), draws each on a translucent
unit sphere with lighter colors at later times and a dot at the start.

Usage: fig1-bloch-trajectories --in DIR --out PATH [--elev DEG --azim DEG]
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

import figstyle
import matplotlib.pyplot as plt
from csv_schemas import SchemaError, load_time_series

COLORMAPS = ["Blues_r", "Greens_r", "Oranges_r", "Purples_r", "Reds_r", "Greys_r"]


def trajectory_files(in_dir: Path) -> list[Path]:
    files = sorted(in_dir.glob("trajectory_*.csv"))
    if not files and (in_dir / "timeseries.csv").exists():
        files = [in_dir / "timeseries.csv"]
    if not files:
        raise SchemaError(f"no trajectory_*.csv or timeseries.csv in {in_dir}")
    return files


def build_figure(in_dir, elev=20.0, azim=-60.0):
    in_dir = Path(in_dir)
    fig = plt.figure(figsize=(5.0, 5.0))
    ax = fig.add_subplot(projection="3d")

    u = np.linspace(0, 2 * np.pi, 60)
    v = np.linspace(0, np.pi, 30)
    ax.plot_surface(
        np.outer(np.cos(u), np.sin(v)),
        np.outer(np.sin(u), np.sin(v)),
        np.outer(np.ones_like(u), np.cos(v)),
        color="0.92",
        alpha=0.15,
        linewidth=0,
    )

    import matplotlib as mpl

    for i, path in enumerate(trajectory_files(in_dir)):
        cols = load_time_series(path)
        t = cols["t"]
        shade = (t - t[0]) / (t[-1] - t[0]) if t[-1] > t[0] else np.zeros_like(t)
        cmap = mpl.colormaps[COLORMAPS[i % len(COLORMAPS)]]
        # segment-wise coloring: lighter at later times
        for j in range(len(t) - 1):
            ax.plot(
                cols["mx"][j : j + 2],
                cols["my"][j : j + 2],
                cols["mz"][j : j + 2],
                color=cmap(0.75 * shade[j]),
                linewidth=0.7,
            )
        ax.scatter(
            [cols["mx"][0]], [cols["my"][0]], [cols["mz"][0]],
            color=cmap(0.0), s=25, depthshade=False, label=path.stem,
        )

    ax.set_xlabel("$m_x$")
    ax.set_ylabel("$m_y$")
    ax.set_zlabel("$m_z$")
    ax.set_xlim(-1, 1)
    ax.set_ylim(-1, 1)
    ax.set_zlim(-1, 1)
    ax.view_init(elev=elev, azim=azim)
    ax.legend(loc="upper left", fontsize=7)
    fig.tight_layout()
    return fig


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--in", dest="in_dir", required=True, metavar="DIR")
    parser.add_argument("--out", required=True, metavar="PATH")
    parser.add_argument("--elev", type=float, default=20.0)
    parser.add_argument("--azim", type=float, default=-60.0)
    args = parser.parse_args(argv)
    try:
        fig = build_figure(args.in_dir, elev=args.elev, azim=args.azim)
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return 1
    figstyle.save(fig, args.out)
    print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
