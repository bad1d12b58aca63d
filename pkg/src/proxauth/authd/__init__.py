"""Proximity-gated authentication: service core, stores, mail, HTTP API."""

from .core import (
    ACTIVE,
    CONTINUE,
    NO_SIGNAL,
    TERMINATE,
    TERMINATED,
    AuthDecision,
    AuthService,
    CheckResult,
    OtpChallenge,
    PendingAuth,
    Session,
    overlap_check,
    proximity_check,
)
from .http import create_app, parse_scan
from .mail import MailMessage, Mailer, MemoryMailer, SpoolMailer, StdoutMailer
from .policy import AGGREGATIONS, AuthPolicy
from .store import (
    JsonlUserStore,
    MemoryUserStore,
    UserProfile,
    check_verifier,
    derive_verifier,
    normalize_answer,
)

__all__ = [
    "ACTIVE", "AGGREGATIONS", "CONTINUE", "NO_SIGNAL", "TERMINATE", "TERMINATED",
    "AuthDecision", "AuthPolicy", "AuthService", "CheckResult",
    "JsonlUserStore", "MailMessage", "Mailer", "MemoryMailer", "MemoryUserStore",
    "OtpChallenge", "PendingAuth", "Session", "SpoolMailer", "StdoutMailer",
    "UserProfile", "check_verifier", "create_app", "derive_verifier",
    "normalize_answer", "overlap_check", "parse_scan", "proximity_check",
]
