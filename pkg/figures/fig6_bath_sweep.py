"""Windowed synchronization over the (lambda, gamma) plane at the RRC.

Heatmap of sweep_bath.csv with a marker at the reference bath point
(lambda = 1, gamma = 0.5 by default).

Usage: fig6-bath-sweep --in DIR --out PATH [--cmap NAME]
       [--ref-lambda X --ref-gamma Y]
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import figstyle
import matplotlib.pyplot as plt
from csv_schemas import SchemaError, load_grid


def build_figure(in_dir, cmap="magma", ref=(1.0, 0.5)):
    in_dir = Path(in_dir)
    grid = load_grid(in_dir / "sweep_bath.csv")
    fig, ax = plt.subplots(figsize=(4.2, 3.2))
    mesh = ax.pcolormesh(
        grid["axis1"], grid["axis2"], grid["values"].T, cmap=cmap, shading="nearest"
    )
    if ref is not None:
        ax.scatter([ref[0]], [ref[1]], color="black", s=22, zorder=5, gid="ref-point")
    ax.set_xlabel(r"$\lambda / \omega_0$")
    ax.set_ylabel(r"$\gamma / \omega_0$")
    fig.colorbar(mesh, ax=ax, label=r"windowed $\max_\varphi |S|$")
    fig.tight_layout()
    return fig


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--in", dest="in_dir", required=True, metavar="DIR")
    parser.add_argument("--out", required=True, metavar="PATH")
    parser.add_argument("--cmap", default="magma")
    parser.add_argument("--ref-lambda", type=float, default=1.0)
    parser.add_argument("--ref-gamma", type=float, default=0.5)
    args = parser.parse_args(argv)
    try:
        fig = build_figure(
            args.in_dir, cmap=args.cmap, ref=(args.ref_lambda, args.ref_gamma)
        )
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return 1
    figstyle.save(fig, args.out)
    print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
