"""Authentication policy knobs.

Everything an operator can tune lives here so the service code stays free
of magic numbers. A policy is immutable once constructed; to change a knob,
build a new one.
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields

from ..errors import ConfigError
from ..mlcore import ALGORITHMS

AGGREGATIONS = ("majority", "all_positive")


@dataclass(frozen=True)
class AuthPolicy:
    """Tunable rules for login, continuous re-checks, and OTP fallback.

    min_overlap_aps:       APs both devices must see for step one of the check.
    recheck_interval_s:    spacing of continuous re-authentication ticks.
    decision_model:        algorithm used for the login proximity decision.
    continuous_ensemble:   algorithms consulted on every re-check tick.
    aggregation:           how per-row verdicts combine ("majority" denies
                           ties, "all_positive" requires every row).
    pending_ttl_s:         how long a started login may wait for scans.
    otp_ttl_s / otp_digits: fallback code lifetime and length.
    otp_rate_limit / otp_rate_window_s: request budget per user.
    min_scan_interval_s:   floor between ticks on one session (>= 1 s).
    """

    min_overlap_aps: int = 3
    recheck_interval_s: float = 30.0
    decision_model: str = "dt"
    continuous_ensemble: tuple[str, ...] = field(default=ALGORITHMS)
    aggregation: str = "majority"
    pending_ttl_s: float = 60.0
    otp_ttl_s: float = 300.0
    otp_digits: int = 6
    otp_rate_limit: int = 3
    otp_rate_window_s: float = 900.0
    min_scan_interval_s: float = 1.0

    def __post_init__(self) -> None:
        if int(self.min_overlap_aps) < 1:
            raise ConfigError("min_overlap_aps must be at least 1")
        object.__setattr__(self, "min_overlap_aps", int(self.min_overlap_aps))
        for name in ("recheck_interval_s", "pending_ttl_s", "otp_ttl_s",
                     "otp_rate_window_s"):
            if not float(getattr(self, name)) > 0:
                raise ConfigError(f"{name} must be positive")
        if self.decision_model not in ALGORITHMS:
            raise ConfigError(f"unknown decision model {self.decision_model!r}")
        ensemble = tuple(self.continuous_ensemble)
        if not ensemble:
            raise ConfigError("continuous_ensemble must not be empty")
        for algo in ensemble:
            if algo not in ALGORITHMS:
                raise ConfigError(f"unknown ensemble member {algo!r}")
        if len(set(ensemble)) != len(ensemble):
            raise ConfigError("continuous_ensemble has duplicate members")
        object.__setattr__(self, "continuous_ensemble", ensemble)
        if self.aggregation not in AGGREGATIONS:
            raise ConfigError(f"aggregation must be one of {AGGREGATIONS}")
        if int(self.otp_digits) < 4:
            raise ConfigError("otp_digits must be at least 4")
        object.__setattr__(self, "otp_digits", int(self.otp_digits))
        if int(self.otp_rate_limit) < 1:
            raise ConfigError("otp_rate_limit must be at least 1")
        object.__setattr__(self, "otp_rate_limit", int(self.otp_rate_limit))
        if float(self.min_scan_interval_s) < 1.0:
            raise ConfigError("min_scan_interval_s has a floor of 1 second")

    def to_dict(self) -> dict:
        return {
            "min_overlap_aps": self.min_overlap_aps,
            "recheck_interval_s": self.recheck_interval_s,
            "decision_model": self.decision_model,
            "continuous_ensemble": list(self.continuous_ensemble),
            "aggregation": self.aggregation,
            "pending_ttl_s": self.pending_ttl_s,
            "otp_ttl_s": self.otp_ttl_s,
            "otp_digits": self.otp_digits,
            "otp_rate_limit": self.otp_rate_limit,
            "otp_rate_window_s": self.otp_rate_window_s,
            "min_scan_interval_s": self.min_scan_interval_s,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "AuthPolicy":
        """Build a policy from a flat mapping, rejecting unknown keys."""
        known = {f.name for f in fields(cls)}
        unknown = set(doc) - known
        if unknown:
            raise ConfigError(f"unknown policy keys: {sorted(unknown)}")
        kwargs = dict(doc)
        if "continuous_ensemble" in kwargs:
            kwargs["continuous_ensemble"] = tuple(kwargs["continuous_ensemble"])
        return cls(**kwargs)
