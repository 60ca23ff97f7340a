"""Synchronization measure over time, with the final azimuthal profile inset.

One curve of s_max(t) per time-series CSV: the input directory's own
timeseries.csv, or one per immediate subdirectory (sorted by name) for
resonant-vs-detuned comparisons.  The inset reconstructs the final-time
profile S(phi) = s_max * cos(phi - phi_star) from the last row of the
first run (an axis transform of two plotted scalars, no physics).

Usage: fig4-sync-measure --in DIR --out PATH
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import figstyle
import matplotlib.pyplot as plt
import numpy as np
from csv_schemas import SchemaError, load_time_series


def series_files(in_dir: Path) -> list[Path]:
    own = in_dir / "timeseries.csv"
    if own.exists():
        return [own]
    found = sorted(in_dir.glob("*/timeseries.csv"))
    if not found:
        raise SchemaError(f"no timeseries.csv under {in_dir}")
    return found


def build_figure(in_dir):
    in_dir = Path(in_dir)
    files = series_files(in_dir)
    fig, ax = plt.subplots(figsize=(4.4, 3.2))
    first = None
    for path in files:
        cols = load_time_series(path)
        label = path.parent.name if path.parent != in_dir else path.stem
        ax.plot(cols["t"], cols["s_max"], linewidth=1.1, label=label)
        if first is None:
            first = cols
    ax.set_xlabel(r"$t\,\omega_0$")
    ax.set_ylabel(r"$\max_\varphi |S(\varphi, t)|$")
    ax.set_ylim(bottom=0.0)
    ax.axhline(0.125, color="0.7", linewidth=0.6, linestyle=":")
    ax.legend(fontsize=7, loc="center right")

    inset = ax.inset_axes([0.55, 0.55, 0.42, 0.4])
    phis = np.linspace(0.0, 2 * np.pi, 181)
    inset.plot(
        phis,
        first["s_max"][-1] * np.cos(phis - first["phi_star"][-1]),
        linewidth=0.9,
    )
    inset.set_xlabel(r"$\varphi$", fontsize=7)
    inset.set_ylabel(r"$S(\varphi, t_{max})$", fontsize=7)
    inset.tick_params(labelsize=6)
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
