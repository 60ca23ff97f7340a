"""Angles maximizing the Husimi function over time, scatter per run.

If the input directory contains q_argmax.csv it becomes a single panel;
otherwise every immediate subdirectory holding one becomes a panel
(sorted by name), so a triptych of detuned/resonant/detuned runs renders
from one parent directory.  Darker points are earlier times; degenerate
(uniform-Q) samples are skipped.

Usage: fig3-q-argmax --in DIR --out PATH
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import figstyle
import matplotlib.pyplot as plt
import numpy as np
from csv_schemas import SchemaError, load_argmax_series


def argmax_files(in_dir: Path) -> list[Path]:
    own = in_dir / "q_argmax.csv"
    if own.exists():
        return [own]
    found = sorted(in_dir.glob("*/q_argmax.csv"))
    if not found:
        raise SchemaError(f"no q_argmax.csv under {in_dir}")
    return found


def build_figure(in_dir):
    in_dir = Path(in_dir)
    files = argmax_files(in_dir)
    fig, axes = plt.subplots(
        1, len(files), figsize=(2.8 * len(files), 2.8), squeeze=False, sharey=True
    )
    for ax, path in zip(axes[0], files):
        series = load_argmax_series(path)
        keep = ~series["degenerate"]
        t = series["t"][keep]
        shade = (t - t[0]) / (t[-1] - t[0]) if t.size > 1 and t[-1] > t[0] else 0.5
        ax.scatter(
            series["phi"][keep],
            series["theta"][keep],
            c=1.0 - 0.85 * np.atleast_1d(shade),
            cmap="gray",
            vmin=0.0,
            vmax=1.0,
            s=4,
        )
        ax.set_xlim(0, 2 * np.pi)
        ax.set_ylim(np.pi, 0)
        ax.set_xlabel(r"$\varphi_{\max}$")
        ax.set_title(path.parent.name if path.parent != in_dir else in_dir.name)
    axes[0][0].set_ylabel(r"$\theta_{\max}$")
    fig.tight_layout()
    return fig


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--in", dest="in_dir", required=True, metavar="DIR")
    parser.add_argument("--out", required=True, metavar="PATH")
    args = parser.parse_args(argv)
    try:
        fig = build_figure(args.in_dir)
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return 1
    figstyle.save(fig, args.out)
    print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
