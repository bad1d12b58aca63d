import json

import pytest

from proxauth.config import CONFIG_ENV_VAR, FT_TO_M, SimConfig, load_default_config
from proxauth.errors import ConfigError


def test_defaults_are_valid():
    cfg = SimConfig()
    assert cfg.ap_count == 10
    assert cfg.seed == 42


def test_threshold_unit_conversion():
    cfg = SimConfig()
    assert cfg.threshold_m == pytest.approx(2.1336)
    assert cfg.unauthorized_min_m == pytest.approx(2.286)
    assert 7.0 * FT_TO_M == pytest.approx(2.1336)


@pytest.mark.parametrize("kwargs", [
    {"ap_count": 0},
    {"bounds_m": (0.0, 20.0)},
    {"bounds_m": (30.0, -1.0)},
    {"path_loss_exponent": 1.0},
    {"path_loss_exponent": 5.5},
    {"sensitivity_floor_dbm": -60.0},
    {"ref_power_dbm": -10.0},
    {"zone_grid": (0, 3)},
    {"threshold_ft": 0.0},
    {"gray_gap_ft": -0.1},
    {"shadowing_sigma_db": -0.5},
    {"desk_m": (31.0, 10.0)},
    {"desk_m": (10.0, -0.1)},
    {"desk_jitter_m": -0.5},
    {"ap_min_dist_m": -1.0},
    {"ap_spread_m": 2.0},  # below the default ap_min_dist_m
    {"scan_rounds": 0},
])
def test_invalid_values_rejected(kwargs):
    with pytest.raises(ConfigError):
        SimConfig(**kwargs)


def test_desk_defaults_to_grid_corner():
    cfg = SimConfig()
    assert cfg.desk_m is None
    assert cfg.desk_point == pytest.approx((10.0, 20.0 / 3.0))
    explicit = SimConfig(desk_m=(4.0, 5.0))
    assert explicit.desk_point == (4.0, 5.0)


def test_desk_survives_round_trip(tmp_path):
    cfg = SimConfig(desk_m=(4.0, 5.0))
    path = tmp_path / "sim.json"
    cfg.save(path)
    loaded = SimConfig.load(path)
    assert loaded.desk_m == (4.0, 5.0)
    assert loaded == cfg


def test_save_load_round_trip(tmp_path):
    cfg = SimConfig(ap_count=4, bounds_m=(12.0, 9.0), shadowing_sigma_db=1.0)
    path = tmp_path / "sim.json"
    cfg.save(path)
    assert SimConfig.load(path) == cfg


def test_unknown_key_rejected(tmp_path):
    path = tmp_path / "sim.json"
    path.write_text(json.dumps({"ap_count": 3, "banana": 1}))
    with pytest.raises(ConfigError):
        SimConfig.load(path)


def test_non_object_config_rejected(tmp_path):
    path = tmp_path / "sim.json"
    path.write_text("[1, 2, 3]")
    with pytest.raises(ConfigError):
        SimConfig.load(path)


def test_missing_file_rejected(tmp_path):
    with pytest.raises(ConfigError):
        SimConfig.load(tmp_path / "nope.json")


def test_override_ignores_none():
    cfg = SimConfig()
    assert cfg.override(ap_count=None, seed=None) is cfg
    assert cfg.override(ap_count=5).ap_count == 5


def test_env_var_names_default_config(tmp_path, monkeypatch):
    path = tmp_path / "sim.json"
    SimConfig(ap_count=6).save(path)
    monkeypatch.setenv(CONFIG_ENV_VAR, str(path))
    assert load_default_config().ap_count == 6
    monkeypatch.delenv(CONFIG_ENV_VAR)
    assert load_default_config() == SimConfig()
