"""Synthetic 2-D Wi-Fi environment: access points, poses, beacon scans.

Signal strength follows the log-distance path-loss model with optional
Gaussian shadowing:

    rssi = ref_power_dbm - 10 * n * log10(max(d, d0) / d0) + N(0, sigma),  d0 = 1 m

clamped to [-100, -20] dBm. Beacons weaker than the environment's
sensitivity floor are dropped from scans, as a real scanner would.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

import numpy as np

from ..config import SimConfig
from ..errors import ConfigError, GeometryError, ValidationError

LOGIN = "login"
MOBILE = "mobile"

RSSI_MIN = -100.0
RSSI_MAX = -20.0
REFERENCE_DISTANCE_M = 1.0

# 2.4 GHz channels 1-14 plus common 5 GHz centers; APs draw distinct entries.
CHANNEL_POOL_MHZ = (
    2412, 2417, 2422, 2427, 2432, 2437, 2442, 2447, 2452, 2457, 2462, 2467, 2472, 2484,
    5180, 5200, 5220, 5240, 5260, 5280, 5300, 5320, 5500, 5520, 5540, 5560, 5580,
    5660, 5680, 5700, 5745, 5765, 5785, 5805, 5825,
)

_SSID_RE = re.compile(r"(\d+)\s*$")


def ssid_to_code(ssid: str) -> int:
    """Integer code for an SSID string (trailing digits; 0 when absent)."""
    m = _SSID_RE.search(ssid)
    return int(m.group(1)) if m else 0


@dataclass(frozen=True)
class AccessPoint:
    ap_id: int
    ssid: str
    bssid: str
    frequency_mhz: int
    position: tuple[float, float]
    ref_power_dbm: float

    @property
    def ssid_code(self) -> int:
        return ssid_to_code(self.ssid)


@dataclass(frozen=True)
class DevicePose:
    device_id: str
    role: str  # LOGIN or MOBILE
    position: tuple[float, float]


@dataclass(frozen=True)
class BeaconObservation:
    """One device's view of one AP at one instant."""

    ap_id: int
    ssid: str
    bssid: str
    frequency_mhz: int
    rssi_dbm: float
    observer: str
    t: float

    @property
    def ssid_code(self) -> int:
        return ssid_to_code(self.ssid)


@dataclass(frozen=True)
class ScanReport:
    """A full scan: every AP one device heard at time t.

    `zone` is the observing device's floor-plan zone. The simulator always
    fills it; reports arriving over the wire may omit it (encoded as 0).
    """

    device_id: str
    role: str
    t: float
    observations: tuple[BeaconObservation, ...]
    zone: int | None = None

    def __post_init__(self):
        bssids = [o.bssid for o in self.observations]
        if len(set(bssids)) != len(bssids):
            raise ValidationError("scan contains duplicate BSSIDs")
        for o in self.observations:
            if o.observer != self.device_id or o.t != self.t:
                raise ValidationError("observation observer/t mismatch")

    def identifier_pairs(self) -> set[tuple[str, str]]:
        return {(o.ssid, o.bssid) for o in self.observations}


@dataclass(frozen=True)
class Environment:
    """A fixed floor plan: APs, the login desk, propagation constants, zones."""

    aps: tuple[AccessPoint, ...]
    bounds: tuple[float, float]
    desk_m: tuple[float, float]
    path_loss_exponent: float
    shadowing_sigma_db: float
    sensitivity_floor_dbm: float
    zone_grid: tuple[int, int]
    threshold_m: float
    unauthorized_min_m: float
    config: SimConfig = field(repr=False, default=None)

    @property
    def diagonal_m(self) -> float:
        return math.hypot(*self.bounds)

    def contains(self, point: tuple[float, float]) -> bool:
        x, y = point
        return 0.0 <= x <= self.bounds[0] and 0.0 <= y <= self.bounds[1]

    def zone_of(self, point: tuple[float, float]) -> int:
        """1-based zone id of a point on the configured grid."""
        gx, gy = self.zone_grid
        w, h = self.bounds
        ix = min(int(point[0] / w * gx), gx - 1)
        iy = min(int(point[1] / h * gy), gy - 1)
        return 1 + ix + iy * gx

    def rssi_at(self, ap: AccessPoint, point: tuple[float, float], rng=None) -> float:
        return rssi_at(ap, point, self.path_loss_exponent,
                       self.shadowing_sigma_db, rng)


def rssi_at(ap: AccessPoint, point: tuple[float, float], exponent: float,
            sigma_db: float = 0.0, rng: np.random.Generator | None = None) -> float:
    """Log-distance path-loss RSSI in dBm, clamped to [-100, -20].

    Distances below the 1 m reference clamp to the reference, so the
    closed-form value at d <= 1 m is exactly ref_power_dbm.
    """
    d = math.hypot(ap.position[0] - point[0], ap.position[1] - point[1])
    d = max(d, REFERENCE_DISTANCE_M)
    rssi = ap.ref_power_dbm - 10.0 * exponent * math.log10(d / REFERENCE_DISTANCE_M)
    if sigma_db > 0.0:
        if rng is None:
            raise ConfigError("shadowing requires an RNG")
        rssi += rng.normal(0.0, sigma_db)
    return min(max(rssi, RSSI_MIN), RSSI_MAX)


def _make_bssid(rng: np.random.Generator) -> str:
    # locally administered unicast address: second-lowest bit of first octet set
    octets = [0x02] + [int(rng.integers(0, 256)) for _ in range(5)]
    return ":".join(f"{o:02x}" for o in octets)


def _ap_position(rng: np.random.Generator, desk: tuple[float, float],
                 r_min: float, r_max: float, bounds: tuple[float, float],
                 ) -> tuple[float, float]:
    """Uniform draw from the annulus [r_min, r_max] around the desk, in bounds."""
    w, h = bounds
    for _ in range(4096):
        r = math.sqrt(rng.random() * (r_max * r_max - r_min * r_min) + r_min * r_min)
        theta = rng.random() * 2.0 * math.pi
        x = desk[0] + r * math.cos(theta)
        y = desk[1] + r * math.sin(theta)
        if 0.0 <= x <= w and 0.0 <= y <= h:
            return (float(x), float(y))
    raise ConfigError("AP ring barely intersects the floor; "
                      "move desk_m inward or shrink ap_spread_m")


def build_environment(config: SimConfig, seed: int) -> Environment:
    """Seeded environment with config.ap_count APs on distinct channels.

    APs land uniformly in the ring between ap_min_dist_m and ap_spread_m
    of the desk, the way office APs are mounted around the area they
    serve. The same (config, seed) always produces the identical AP table.
    """
    if config.ap_count > len(CHANNEL_POOL_MHZ):
        raise ConfigError(
            f"ap_count {config.ap_count} exceeds the {len(CHANNEL_POOL_MHZ)} distinct channels")
    rng = np.random.default_rng(seed)
    w, h = config.bounds_m
    desk = config.desk_point
    channels = rng.choice(len(CHANNEL_POOL_MHZ), size=config.ap_count, replace=False)
    bssids: set[str] = set()
    aps = []
    for i in range(config.ap_count):
        bssid = _make_bssid(rng)
        while bssid in bssids:
            bssid = _make_bssid(rng)
        bssids.add(bssid)
        aps.append(AccessPoint(
            ap_id=i + 1,
            ssid=f"ap-{i + 1}",
            bssid=bssid,
            frequency_mhz=CHANNEL_POOL_MHZ[int(channels[i])],
            position=_ap_position(rng, desk, config.ap_min_dist_m,
                                  config.ap_spread_m, (w, h)),
            ref_power_dbm=config.ref_power_dbm,
        ))
    return Environment(
        aps=tuple(aps),
        bounds=(w, h),
        desk_m=desk,
        path_loss_exponent=config.path_loss_exponent,
        shadowing_sigma_db=config.shadowing_sigma_db,
        sensitivity_floor_dbm=config.sensitivity_floor_dbm,
        zone_grid=config.zone_grid,
        threshold_m=config.threshold_m,
        unauthorized_min_m=config.unauthorized_min_m,
        config=config,
    )


def scan(env: Environment, pose: DevicePose, t: float,
         rng: np.random.Generator | None = None) -> ScanReport:
    """One beacon scan: every AP audible above the sensitivity floor."""
    if not env.contains(pose.position):
        raise GeometryError(f"pose {pose.position} outside bounds {env.bounds}")
    if env.shadowing_sigma_db > 0.0 and rng is None:
        raise ConfigError("scanning a noisy environment requires an RNG")
    observations = []
    for ap in env.aps:
        rssi = env.rssi_at(ap, pose.position, rng)
        if rssi < env.sensitivity_floor_dbm:
            continue
        observations.append(BeaconObservation(
            ap_id=ap.ap_id, ssid=ap.ssid, bssid=ap.bssid,
            frequency_mhz=ap.frequency_mhz, rssi_dbm=rssi,
            observer=pose.device_id, t=t,
        ))
    return ScanReport(device_id=pose.device_id, role=pose.role, t=t,
                      observations=tuple(observations),
                      zone=env.zone_of(pose.position))
