"""Configuration loading, defaults, overrides, validation failures."""

import json

import numpy as np
import pytest

from qsync.config import ConfigError, DEFAULTS, config_from_mapping, load_config


def test_defaults_build():
    cfg = config_from_mapping({})
    assert cfg.drive.Omega == 60.0
    # omega defaults to the first resonant ratio
    assert cfg.drive.omega == pytest.approx(24.94983463893746, abs=1e-10)
    assert cfg.bath.lam == 1.0
    assert cfg.solver.matsubara_terms == 4
    assert cfg.solver.hierarchy_depth == 7
    assert np.allclose(cfg.initial_state, [1.0, 0.0, 0.0])
    assert cfg.snapshot_times == (0.0, 15.0, 30.0)
    assert cfg.effective_window == pytest.approx(2 * np.pi / cfg.drive.omega)


def test_round_trip_mapping():
    cfg = config_from_mapping({"t_max": 7.0, "omega": 12.0})
    again = config_from_mapping(cfg.to_mapping())
    assert again.t_max == 7.0
    assert again.drive.omega == 12.0


def test_named_and_vector_initial_states():
    assert np.allclose(config_from_mapping({"initial_state": "-y"}).initial_state, [0, -1, 0])
    cfg = config_from_mapping({"initial_state": [0.5, 0.0, 0.5]})
    assert np.allclose(cfg.initial_state, [0.5, 0.0, 0.5])
    with pytest.raises(ConfigError):
        config_from_mapping({"initial_state": "sideways"})
    with pytest.raises(ConfigError):
        config_from_mapping({"initial_state": [2.0, 0.0, 0.0]})


def test_unknown_keys_rejected():
    with pytest.raises(ConfigError, match="unknown"):
        config_from_mapping({"omega_typo": 1.0})


def test_invalid_values_rejected():
    for bad in [
        {"t_max": -1.0},
        {"samples": 1},
        {"workers": 0},
        {"gamma": -0.5},
        {"omega_count": 0},
        {"snapshot_times": [99.0]},
        {"window_width": -1.0},
        {"hierarchy_depth": 0},
    ]:
        with pytest.raises(ConfigError):
            config_from_mapping(bad)


def test_load_config_file_and_overrides(tmp_path):
    path = tmp_path / "run.json"
    path.write_text(json.dumps({"t_max": 4.0, "workers": 1}))
    cfg = load_config(str(path), {"workers": 2})
    assert cfg.t_max == 4.0
    assert cfg.workers == 2  # CLI override wins


def test_load_config_errors(tmp_path):
    with pytest.raises(ConfigError, match="cannot read"):
        load_config(str(tmp_path / "missing.json"))
    bad = tmp_path / "bad.json"
    bad.write_text("{nope")
    with pytest.raises(ConfigError, match="JSON"):
        load_config(str(bad))
    arr = tmp_path / "arr.json"
    arr.write_text("[1,2]")
    with pytest.raises(ConfigError, match="object"):
        load_config(str(arr))


def test_every_default_key_documented_under_test():
    # the flat key set is part of the config contract
    assert set(DEFAULTS) >= {
        "omega0", "delta", "Omega", "omega",
        "lambda", "gamma", "temperature",
        "matsubara_terms", "hierarchy_depth",
        "initial_state", "t_max", "samples", "window_width",
        "workers", "seed",
    }
