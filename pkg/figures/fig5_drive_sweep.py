"""Windowed synchronization over the (Omega, omega) plane with RRC overlays.

Heatmap of sweep_drive.csv with exactly the resonance lines listed in the
rrc_lines.csv sidecar drawn as omega = Omega / z_k (z_k is never
recomputed here), plus optional markers for reference operating points.
Unconverged cells are hatched.

Usage: fig5-drive-sweep --in DIR --out PATH [--cmap NAME] [--no-markers]
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import figstyle
import matplotlib.pyplot as plt
import numpy as np
from csv_schemas import SchemaError, load_grid, load_rrc_lines

LINE_STYLES = ["-", "--", ":"]


def build_figure(in_dir, cmap="magma", markers=True):
    in_dir = Path(in_dir)
    grid = load_grid(in_dir / "sweep_drive.csv")
    rrc = load_rrc_lines(in_dir / "rrc_lines.csv")
    fig, ax = plt.subplots(figsize=(4.6, 3.4))
    mesh = ax.pcolormesh(
        grid["axis1"], grid["axis2"], grid["values"].T, cmap=cmap, shading="nearest"
    )
    if not np.all(grid["converged"]):
        bad1, bad2 = np.nonzero(~grid["converged"])
        ax.scatter(
            grid["axis1"][bad1], grid["axis2"][bad2],
            marker="x", s=12, color="0.6", linewidths=0.6,
        )
    omegas_drive = np.linspace(grid["axis1"][0], grid["axis1"][-1], 200)
    for style, entry in zip(LINE_STYLES, rrc):
        ax.plot(
            omegas_drive,
            omegas_drive / entry["z_k"],
            color="white",
            linestyle=style,
            linewidth=1.0,
            gid="rrc-line",
            label=f"$\\omega = \\Omega / z_{entry['k']}$",
        )
    if markers:
        # reference operating points: the sidecar's configured drive
        big_omega = rrc[0]["z_k"] * rrc[0]["omega_rrc"]
        ax.scatter([big_omega], [rrc[0]["omega_rrc"]], color="white", s=18, zorder=5)
        for sign in (-1.0, 1.0):
            ax.scatter(
                [big_omega], [rrc[0]["omega_rrc"] + sign * 10.0],
                color="white", marker="x", s=18, zorder=5,
            )
    ax.set_xlim(grid["axis1"][0], grid["axis1"][-1])
    ax.set_ylim(grid["axis2"][0], grid["axis2"][-1])
    ax.set_xlabel(r"$\Omega / \omega_0$")
    ax.set_ylabel(r"$\omega / \omega_0$")
    ax.legend(fontsize=6, loc="upper left", framealpha=0.3, labelcolor="white")
    fig.colorbar(mesh, ax=ax, label=r"windowed $\max_\varphi |S|$")
    fig.tight_layout()
    return fig


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--in", dest="in_dir", required=True, metavar="DIR")
    parser.add_argument("--out", required=True, metavar="PATH")
    parser.add_argument("--cmap", default="magma")
    parser.add_argument("--no-markers", action="store_true")
    args = parser.parse_args(argv)
    try:
        fig = build_figure(args.in_dir, cmap=args.cmap, markers=not args.no_markers)
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return 1
    figstyle.save(fig, args.out)
    print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
