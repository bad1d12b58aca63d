import math

import numpy as np
import pytest

from proxauth.dataset import COLUMNS
from proxauth.errors import ConfigError
from proxauth.rfsim import generate_dataset, session_stream, walk_apart_trajectory
from proxauth.rfsim.environment import CHANNEL_POOL_MHZ


def test_default_dataset_counts(default_dataset):
    assert len(default_dataset) == 4825
    assert default_dataset.class_counts() == {1: 2442, 0: 2383}


def test_generation_deterministic(env):
    a = generate_dataset(env, 120, 80, seed=9)
    b = generate_dataset(env, 120, 80, seed=9)
    assert a == b
    assert a != generate_dataset(env, 120, 80, seed=10)


def test_exact_count_truncation(env):
    # counts that cannot be a whole number of placements still come out exact
    ds = generate_dataset(env, 31, 17, seed=3)
    assert ds.class_counts() == {1: 31, 0: 17}


def test_empty_dataset(env):
    ds = generate_dataset(env, 0, 0, seed=0)
    assert len(ds) == 0
    assert ds.rows.shape == (0, len(COLUMNS))


def test_negative_counts_rejected(env):
    with pytest.raises(ConfigError):
        generate_dataset(env, -1, 5, seed=0)


def test_row_schema(default_dataset):
    rows = default_dataset.rows
    assert set(rows[:, 0].tolist()) == {1, 2}            # RPi: login=1, mobile=2
    assert set(rows[:, 1].tolist()) <= set(range(1, 11))  # SSID codes
    assert set(rows[:, 2].tolist()) <= set(CHANNEL_POOL_MHZ)
    assert rows[:, 3].min() >= -100 and rows[:, 3].max() <= -20
    assert set(rows[:, 4].tolist()) <= set(range(1, 10))  # 3x3 zones
    assert set(rows[:, 5].tolist()) == {0, 1}


def test_first_row_is_a_login_observation(default_dataset):
    rpi, ssid, freq, rssi, loc, label = default_dataset.rows[0]
    assert rpi == 1 and label == 1
    assert 1 <= ssid <= 10 and freq in CHANNEL_POOL_MHZ
    assert -100 <= rssi <= -20 and 1 <= loc <= 9


def test_session_stream_timestamps(quiet_env):
    traj = [((1.0, 1.0), (2.0, 1.0))] * 5
    pairs = list(session_stream(quiet_env, traj, interval_s=30.0, t0=10.0))
    assert len(pairs) == 5
    assert [p[0].t for p in pairs] == [10.0, 40.0, 70.0, 100.0, 130.0]
    for login, mobile in pairs:
        assert login.device_id == "rpi-login" and mobile.device_id == "rpi-mobile"
        assert login.t == mobile.t


def test_session_stream_static_quiet_pairs_identical(quiet_env):
    traj = [((1.0, 1.0), (2.0, 1.0))] * 3
    pairs = list(session_stream(quiet_env, traj, interval_s=1.0))
    first = [o.rssi_dbm for o in pairs[0][0].observations]
    for login, _ in pairs[1:]:
        assert [o.rssi_dbm for o in login.observations] == first


def test_session_stream_follows_scripted_geometry(quiet_env):
    traj = [((1.0, 1.0), (2.0, 1.0)), ((1.0, 1.0), (4.0, 1.0))]
    assert math.dist(*traj[1]) > quiet_env.unauthorized_min_m
    pairs = list(session_stream(quiet_env, traj, interval_s=30.0))
    assert len(pairs) == 2


def test_session_stream_rejects_empty_trajectory(quiet_env):
    with pytest.raises(ConfigError):
        list(session_stream(quiet_env, [], interval_s=30.0))
    with pytest.raises(ConfigError):
        list(session_stream(quiet_env, [((1, 1), (2, 2))], interval_s=0.0))


def test_walk_apart_trajectory_crosses_threshold(env):
    traj = walk_apart_trajectory(env, steps=6)
    gaps = [math.dist(a, b) for a, b in traj]
    assert gaps[0] <= env.threshold_m
    assert gaps[-1] > env.unauthorized_min_m
    assert all(env.contains(p) for pair in traj for p in pair)
    # the login machine never leaves the desk; the mobile does the walking
    assert all(a == env.desk_m for a, _ in traj)
    assert gaps == sorted(gaps)
    with pytest.raises(ConfigError):
        walk_apart_trajectory(env, steps=1)
