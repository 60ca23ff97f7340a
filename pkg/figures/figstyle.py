"""Shared matplotlib setup: headless backend, fixed fonts, fixed dpi.

Importing this module before pyplot pins everything that could make two
renders of the same data differ.
"""

import matplotlib

matplotlib.use("Agg")
matplotlib.rcParams.update(
    {
        "figure.dpi": 110,
        "savefig.dpi": 110,
        "font.size": 9,
        "axes.titlesize": 9,
        "axes.labelsize": 9,
        "svg.hashsalt": "qsync-figures",
    }
)

DPI = 110


def save(fig, out_path):
    fig.savefig(out_path, dpi=DPI, metadata={"Software": "qsync-figures"})
