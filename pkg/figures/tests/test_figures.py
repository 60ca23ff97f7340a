"""Figure scripts render real simulator output; schemas are enforced.

The fixture produces CSV artifacts by invoking the qsync CLI (the only
interface this package consumes); rendering is then checked per figure,
including the overlay-line contract of the drive-sweep figure.
"""

import json
import shutil
import subprocess
import sys
from pathlib import Path

import pytest

import fig1_bloch_trajectories
import fig2_husimi_maps
import fig3_q_argmax
import fig4_sync_measure
import fig5_drive_sweep
import fig6_bath_sweep
import figstyle
from csv_schemas import SchemaError, load_grid, load_time_series

FAST_CONFIG = {
    "matsubara_terms": 1,
    "hierarchy_depth": 2,
    "t_max": 1.0,
    "samples": 41,
    "probe_time": 0.5,
    "Omega_min": 40.0,
    "Omega_max": 60.0,
    "Omega_count": 2,
    "omega_min": 15.0,
    "omega_max": 25.0,
    "omega_count": 2,
    "lambda_min": 0.5,
    "lambda_max": 1.0,
    "lambda_count": 2,
    "gamma_min": 0.5,
    "gamma_max": 1.0,
    "gamma_count": 2,
    "theta_nodes": 12,
    "phi_nodes": 12,
    "snapshot_times": [0.0, 1.0],
    "workers": 2,
}


def run_cli(*args):
    proc = subprocess.run(
        ["qsync", *args], capture_output=True, text=True, timeout=600
    )
    assert proc.returncode == 0, proc.stderr
    return proc


@pytest.fixture(scope="session")
def artifacts(tmp_path_factory):
    root = tmp_path_factory.mktemp("artifacts")
    cfg = root / "config.json"
    cfg.write_text(json.dumps(FAST_CONFIG))
    out = root / "out"
    run_cli("simulate", "--config", str(cfg), "--out", str(out), "--force")
    run_cli(
        "trajectories", "--config", str(cfg), "--out", str(out),
        "--initial-mx", "0.8,0.0", "--force",
    )
    run_cli("qsnapshot", "--config", str(cfg), "--out", str(out))
    run_cli("sweep-drive", "--config", str(cfg), "--out", str(out))
    run_cli("sweep-bath", "--config", str(cfg), "--out", str(out))
    return out


def test_all_figures_render(artifacts, tmp_path):
    for module, name in [
        (fig1_bloch_trajectories, "fig1.png"),
        (fig2_husimi_maps, "fig2.png"),
        (fig3_q_argmax, "fig3.png"),
        (fig4_sync_measure, "fig4.png"),
        (fig5_drive_sweep, "fig5.png"),
        (fig6_bath_sweep, "fig6.png"),
    ]:
        out = tmp_path / name
        rc = module.main(["--in", str(artifacts), "--out", str(out)])
        assert rc == 0, name
        assert out.exists() and out.stat().st_size > 0, name


def test_fig5_draws_exactly_three_rrc_lines_from_sidecar(artifacts):
    fig = fig5_drive_sweep.build_figure(artifacts)
    ax = fig.axes[0]
    rrc_lines = [line for line in ax.lines if line.get_gid() == "rrc-line"]
    assert len(rrc_lines) == 3
    # slopes must come from the sidecar z_k values, not be recomputed
    sidecar = (artifacts / "rrc_lines.csv").read_text().splitlines()[1:]
    zs = [float(line.split(",")[1]) for line in sidecar]
    for line, z in zip(rrc_lines, zs):
        x = line.get_xdata()
        y = line.get_ydata()
        assert y[-1] == pytest.approx(x[-1] / z, rel=1e-12)


def test_fig3_renders_panels_from_subdirectories(artifacts, tmp_path):
    parent = tmp_path / "runs"
    for name in ("a_minus", "b_rrc"):
        sub = parent / name
        sub.mkdir(parents=True)
        shutil.copy(artifacts / "q_argmax.csv", sub / "q_argmax.csv")
    fig = fig3_q_argmax.build_figure(parent)
    assert len(fig.axes) == 2


def test_schema_mismatch_names_offending_column(artifacts, tmp_path):
    broken = tmp_path / "timeseries.csv"
    text = (artifacts / "timeseries.csv").read_text().splitlines()
    text[0] = text[0].replace("s_max", "smax")
    broken.write_text("\n".join(text) + "\n")
    with pytest.raises(SchemaError, match="s_max"):
        load_time_series(broken)
    rc = fig4_sync_measure.main(["--in", str(tmp_path), "--out", str(tmp_path / "x.png")])
    assert rc == 1


def test_empty_grid_rejected(tmp_path):
    (tmp_path / "sweep_drive.csv").write_text("axis1,axis2,value,converged\n")
    (tmp_path / "rrc_lines.csv").write_text(
        "k,z_k,omega_rrc\n1,2.405,24.95\n2,5.52,10.87\n3,8.654,6.93\n"
    )
    with pytest.raises(SchemaError, match="no data rows"):
        load_grid(tmp_path / "sweep_drive.csv")
    rc = fig5_drive_sweep.main(["--in", str(tmp_path), "--out", str(tmp_path / "x.png")])
    assert rc == 1


def test_rendering_is_deterministic(artifacts, tmp_path):
    a, b = tmp_path / "a.png", tmp_path / "b.png"
    assert fig6_bath_sweep.main(["--in", str(artifacts), "--out", str(a)]) == 0
    assert fig6_bath_sweep.main(["--in", str(artifacts), "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_console_entry_point_runs(artifacts, tmp_path):
    out = tmp_path / "fig2_cli.png"
    proc = subprocess.run(
        ["fig2-husimi-maps", "--in", str(artifacts), "--out", str(out)],
        capture_output=True,
        text=True,
        timeout=120,
    )
    assert proc.returncode == 0, proc.stderr
    assert out.exists()
