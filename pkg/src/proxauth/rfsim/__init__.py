"""Seedable 2-D Wi-Fi environment simulator."""

from .environment import (
    LOGIN,
    MOBILE,
    RSSI_MAX,
    RSSI_MIN,
    AccessPoint,
    BeaconObservation,
    DevicePose,
    Environment,
    ScanReport,
    build_environment,
    rssi_at,
    scan,
    ssid_to_code,
)
from .generate import (
    authentic_anchor,
    generate_dataset,
    rows_from_scan,
    scan_feature_rows,
    session_stream,
    walk_apart_trajectory,
)
from .placement import AUTHENTIC, UNAUTHORIZED, place_apart, place_pair

__all__ = [
    "LOGIN", "MOBILE", "RSSI_MAX", "RSSI_MIN",
    "AccessPoint", "BeaconObservation", "DevicePose", "Environment", "ScanReport",
    "build_environment", "rssi_at", "scan", "ssid_to_code",
    "authentic_anchor", "generate_dataset", "rows_from_scan", "scan_feature_rows",
    "session_stream", "walk_apart_trajectory",
    "AUTHENTIC", "UNAUTHORIZED", "place_apart", "place_pair",
]
