"""Labeled dataset synthesis and scripted session streams."""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence

import numpy as np

from ..dataset import Dataset
from ..errors import ConfigError
from .environment import LOGIN, MOBILE, DevicePose, Environment, ScanReport, scan
from .placement import AUTHENTIC, UNAUTHORIZED, place_pair

_ROLE_CODE = {LOGIN: 1, MOBILE: 2}


def scan_feature_rows(report: ScanReport) -> list[list[int]]:
    """Flatten one scan into label-free feature rows, one per beacon.

    Columns: RPi, SSID, Frequency, RSSI, Location. RSSI is rounded to
    whole dBm; Location is the observing device's zone (0 when the report
    does not carry one). This is the single encoding shared by dataset
    synthesis and live authentication decisions.
    """
    rpi = _ROLE_CODE[report.role]
    zone = report.zone if report.zone is not None else 0
    return [[rpi, ob.ssid_code, ob.frequency_mhz, int(round(ob.rssi_dbm)), zone]
            for ob in sorted(report.observations, key=lambda o: (o.ap_id, o.bssid))]


def rows_from_scan(env: Environment, report: ScanReport, label: int) -> list[list[int]]:
    """Labeled dataset rows of one scan (the feature columns plus Label)."""
    return [row + [label] for row in scan_feature_rows(report)]


def _class_rows(env: Environment, regime: str, n_rows: int,
                rng: np.random.Generator, label: int) -> list[list[int]]:
    rounds = env.config.scan_rounds if env.config is not None else 1
    rows: list[list[int]] = []
    while len(rows) < n_rows:
        login, mobile = place_pair(env, regime, rng)
        for _ in range(rounds):
            rows += rows_from_scan(env, scan(env, login, t=0.0, rng=rng), label)
            rows += rows_from_scan(env, scan(env, mobile, t=0.0, rng=rng), label)
    return rows[:n_rows]


def generate_dataset(env: Environment, n_authentic: int, n_unauthorized: int,
                     seed: int) -> Dataset:
    """Synthesize a labeled co-location dataset with exact class counts.

    The campaign mirrors a physical collection run: device pairs are
    placed repeatedly in each regime, each placement is scanned for
    scan_rounds rounds by both devices, and every observed beacon
    contributes one row. Placements continue until each class holds the
    requested number of rows (the final placement is truncated). Same
    arguments, same dataset.
    """
    if n_authentic < 0 or n_unauthorized < 0:
        raise ConfigError("row counts must be non-negative")
    rng = np.random.default_rng(seed)
    rows = _class_rows(env, AUTHENTIC, n_authentic, rng, label=1)
    rows += _class_rows(env, UNAUTHORIZED, n_unauthorized, rng, label=0)
    return Dataset(np.array(rows, dtype=np.int64).reshape(-1, 6))


def authentic_anchor(env: Environment, seed: int) -> tuple[DevicePose, DevicePose]:
    """The first co-located placement a campaign with this seed visits.

    Useful as a session start that the trained models have seen the
    neighborhood of: with the dataset's own seed this reproduces the
    first authentic arrangement of generate_dataset exactly.
    """
    return place_pair(env, AUTHENTIC, np.random.default_rng(seed))


def session_stream(env: Environment,
                   trajectory: Sequence[tuple[tuple[float, float], tuple[float, float]]],
                   interval_s: float, t0: float = 0.0, seed: int = 0,
                   login_id: str = "rpi-login", mobile_id: str = "rpi-mobile",
                   ) -> Iterator[tuple[ScanReport, ScanReport]]:
    """Scan pairs along a scripted trajectory on a simulated clock.

    Each trajectory step is a (login position, mobile position) tuple; the
    pair is scanned at t0, t0 + interval_s, ... No wall time is consumed.
    """
    if len(trajectory) == 0:
        raise ConfigError("trajectory must contain at least one step")
    if interval_s <= 0:
        raise ConfigError("interval_s must be positive")
    rng = np.random.default_rng(seed)
    for i, (login_pos, mobile_pos) in enumerate(trajectory):
        t = t0 + i * interval_s
        login = DevicePose(login_id, LOGIN, tuple(login_pos))
        mobile = DevicePose(mobile_id, MOBILE, tuple(mobile_pos))
        yield scan(env, login, t=t, rng=rng), scan(env, mobile, t=t, rng=rng)


def walk_apart_trajectory(env: Environment, steps: int, start_gap_m: float = 1.0,
                          ) -> list[tuple[tuple[float, float], tuple[float, float]]]:
    """Scripted walk: devices start co-located, then the mobile leaves.

    The login device stays at the desk while the mobile moves toward the
    room corner farthest from it in equal steps, ending well past the
    separation threshold. Useful for driving re-verification experiments.
    """
    if steps < 2:
        raise ConfigError("trajectory needs at least two steps")
    w, h = env.bounds
    margin = 0.5
    login_pos = env.desk_m
    far = (w - margin if login_pos[0] <= w / 2 else margin,
           h - margin if login_pos[1] <= h / 2 else margin)
    start = (min(login_pos[0] + start_gap_m, w), login_pos[1])
    traj = []
    for i in range(steps):
        frac = i / (steps - 1)
        x = start[0] + frac * (far[0] - start[0])
        y = start[1] + frac * (far[1] - start[1])
        traj.append((login_pos, (x, y)))
    return traj
