"""Proximity-gated two-factor authentication service.

Login is a six-step exchange: the user registers once, presents a password,
both registered devices scan the surrounding Wi-Fi, the reports must share
enough access points, and a trained classifier must judge the pair of scans
as taken together at the desk. Only then does a session start, and it stays
alive only while periodic re-checks keep passing. Users who cannot produce
matching scans fall back to an emailed one-time code, which buys a session
without the continuous loop.

All clock reads go through an injectable callable so tests and demos can
run days of session time in microseconds.
"""

from __future__ import annotations

import hmac
import secrets
import threading
import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from ..errors import (
    AuthFailed,
    ConfigError,
    Conflict,
    Expired,
    Incomplete,
    InvalidState,
    TooManyRequests,
    ValidationError,
)
from ..rfsim.environment import LOGIN, MOBILE, ScanReport
from ..rfsim.generate import scan_feature_rows
from .mail import Mailer, MailMessage, MemoryMailer
from .policy import AuthPolicy
from .store import (
    MemoryUserStore,
    PBKDF2_ITERATIONS,
    UserProfile,
    check_verifier,
    derive_verifier,
    normalize_answer,
)

ACTIVE = "active"
TERMINATED = "terminated"

CONTINUE = "continue"
TERMINATE = "terminate"

NO_SIGNAL = "NoSignal"

MIN_PASSWORD_CHARS = 8

# single message for every credential failure, so responses cannot be used
# to probe which usernames exist
_BAD_CREDENTIALS = "invalid credentials"
_BAD_OTP = "otp verification failed"
_DENIED = "access denied"


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one verification step with its supporting numbers."""

    name: str
    passed: bool
    detail: dict

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": dict(self.detail)}


@dataclass(frozen=True)
class AuthDecision:
    """Result of a completed scan submission."""

    granted: bool
    reason: str  # "granted", "overlap", or "proximity"
    overlap: CheckResult
    proximity: "CheckResult | None"
    session: "Session | None"


@dataclass
class PendingAuth:
    """A login that passed the password step and is waiting for scans.

    One-shot: the first complete submission consumes it, whatever the
    outcome, so a denied attempt cannot be retried without a fresh password
    round.
    """

    pending_id: str
    username: str
    issued_at: float
    expires_at: float
    requested_devices: dict[str, str]
    scans: dict[str, ScanReport] = field(default_factory=dict)
    consumed: bool = False


@dataclass
class Session:
    """An authenticated session. Terminated sessions never come back."""

    session_id: str
    username: str
    started_at: float
    status: str = ACTIVE
    otp_fallback: bool = False
    termination_reason: str | None = None
    last_check_at: float = 0.0
    next_check_at: float | None = None
    check_log: list[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "session_id": self.session_id,
            "username": self.username,
            "status": self.status,
            "otp_fallback": self.otp_fallback,
            "started_at": self.started_at,
            "last_check_at": self.last_check_at,
            "next_check_at": self.next_check_at,
            "termination_reason": self.termination_reason,
            "checks": len(self.check_log),
        }


@dataclass
class OtpChallenge:
    username: str
    code: str
    issued_at: float
    expires_at: float
    used: bool = False


def _require_model(models, algo: str):
    if not models or algo not in models:
        raise ConfigError(f"no trained model available for {algo!r}")
    return models[algo]


def _combine(verdicts: list[int], aggregation: str) -> bool:
    """Fold per-row votes into one verdict. Majority ties deny."""
    positive = sum(verdicts)
    if aggregation == "all_positive":
        return positive == len(verdicts)
    return 2 * positive > len(verdicts)


def overlap_check(scan_a: ScanReport, scan_b: ScanReport,
                  min_overlap_aps: int) -> CheckResult:
    """Do the two devices hear enough of the same access points?

    APs are identified by the (ssid, bssid) pair; the count is a set
    intersection, so the check is symmetric in its arguments and adding
    observations to either scan can only help.
    """
    if int(min_overlap_aps) < 1:
        raise ConfigError("min_overlap_aps must be at least 1")
    shared = scan_a.identifier_pairs() & scan_b.identifier_pairs()
    return CheckResult("overlap", len(shared) >= int(min_overlap_aps),
                       {"shared_aps": len(shared),
                        "required": int(min_overlap_aps)})


def proximity_check(models: dict, scan_a: ScanReport, scan_b: ScanReport,
                    policy: AuthPolicy) -> CheckResult:
    """Classify every beacon row from both scans and fold the votes.

    Each observation becomes one feature row under the same encoding the
    training data uses, the policy's decision model labels every row, and
    the aggregation rule decides. Two empty scans fail closed with reason
    NoSignal rather than granting on silence.
    """
    model = _require_model(models, policy.decision_model)
    rows = scan_feature_rows(scan_a) + scan_feature_rows(scan_b)
    if not rows:
        return CheckResult("proximity", False,
                           {"reason": NO_SIGNAL, "rows": 0, "positive": 0,
                            "model": policy.decision_model, "verdicts": []})
    X = np.asarray(rows, dtype=np.float64)
    verdicts = [int(v) for v in model.predict_many(X)]
    return CheckResult("proximity", _combine(verdicts, policy.aggregation),
                       {"rows": len(verdicts), "positive": int(sum(verdicts)),
                        "model": policy.decision_model, "verdicts": verdicts})


class AuthService:
    """State and operations behind the HTTP API.

    Users persist through the injected store; pending logins, sessions,
    challenges, and rate-limit windows are process-local. A single re-entrant
    lock guards shared maps, and each session additionally carries its own
    lock so re-check ticks are serialized per session.
    """

    def __init__(self, store=None, models: dict | None = None,
                 policy: AuthPolicy | None = None, mailer: Mailer | None = None,
                 clock: Callable[[], float] = time.time,
                 hash_iterations: int = PBKDF2_ITERATIONS):
        self.store = store if store is not None else MemoryUserStore()
        self.models = dict(models) if models else {}
        self.policy = policy if policy is not None else AuthPolicy()
        self.mailer = mailer if mailer is not None else MemoryMailer()
        self.clock = clock
        self.hash_iterations = int(hash_iterations)
        # verified against when a username is unknown, so failures cost the
        # same whether or not the account exists
        self._decoy_verifier = derive_verifier(secrets.token_hex(8),
                                               iterations=self.hash_iterations)
        self._lock = threading.RLock()
        self._pending: dict[str, PendingAuth] = {}
        self._sessions: dict[str, Session] = {}
        self._session_locks: dict[str, threading.Lock] = {}
        self._challenges: dict[str, OtpChallenge] = {}
        self._otp_requests: dict[str, list[float]] = {}
        self.audit_log: list[dict] = []

    # -- registration -------------------------------------------------

    def register(self, username: str, password: str, security_question: str,
                 security_answer: str, email: str, login_device: str,
                 mobile_device: str) -> UserProfile:
        username = str(username).strip()
        if not username:
            raise ValidationError("username must not be empty")
        if len(str(password)) < MIN_PASSWORD_CHARS:
            raise ValidationError(
                f"password must be at least {MIN_PASSWORD_CHARS} characters")
        if not str(security_question).strip():
            raise ValidationError("security question must not be empty")
        if not normalize_answer(str(security_answer)):
            raise ValidationError("security answer must not be empty")
        if "@" not in str(email):
            raise ValidationError("email address looks invalid")
        if not str(login_device).strip() or not str(mobile_device).strip():
            raise ValidationError("both device identifiers are required")
        with self._lock:
            if self.store.get(username) is not None:
                raise Conflict(f"username {username!r} is already registered")
            profile = UserProfile(
                username=username,
                password_verifier=derive_verifier(
                    str(password), iterations=self.hash_iterations),
                security_question=str(security_question).strip(),
                answer_verifier=derive_verifier(
                    normalize_answer(str(security_answer)),
                    iterations=self.hash_iterations),
                email=str(email),
                login_device=str(login_device).strip(),
                mobile_device=str(mobile_device).strip(),
                created_at=self.clock(),
            )
            self.store.put(profile)
        self._audit("register", username=username)
        return profile

    # -- six-step login -----------------------------------------------

    def login_step1(self, username: str, password: str) -> PendingAuth:
        """Password check; success opens a short scan window for the devices."""
        profile = self.store.get(str(username))
        verifier = profile.password_verifier if profile else self._decoy_verifier
        if not (check_verifier(str(password), verifier) and profile is not None):
            self._audit("login_denied", username=str(username))
            raise AuthFailed(_BAD_CREDENTIALS)
        now = self.clock()
        pending = PendingAuth(
            pending_id=secrets.token_hex(16),
            username=profile.username,
            issued_at=now,
            expires_at=now + self.policy.pending_ttl_s,
            requested_devices={LOGIN: profile.login_device,
                               MOBILE: profile.mobile_device},
        )
        with self._lock:
            self._pending[pending.pending_id] = pending
        self._audit("scan_request", username=profile.username,
                    pending_id=pending.pending_id,
                    devices=sorted(pending.requested_devices.values()))
        return pending

    def submit_scans(self, pending_id: str, login_scan: ScanReport,
                     mobile_scan: ScanReport) -> AuthDecision:
        """Steps three to six: collect scans, check overlap, then proximity.

        A malformed submission (missing report, wrong role or device) leaves
        the pending record intact; a complete one consumes it whatever the
        verdict. Unknown, expired, and already-consumed pending ids are
        deliberately indistinguishable.
        """
        if login_scan is None or mobile_scan is None:
            raise Incomplete("both device scans are required")
        with self._lock:
            pending = self._pending.get(str(pending_id))
            now = self.clock()
            if pending is None or pending.consumed or now > pending.expires_at:
                self._pending.pop(str(pending_id), None)
                raise Expired("pending login is unknown, expired, or already used")
            profile = self.store.get(pending.username)
            self._check_scan(login_scan, LOGIN, profile.login_device)
            self._check_scan(mobile_scan, MOBILE, profile.mobile_device)
            pending.consumed = True
            pending.scans = {LOGIN: login_scan, MOBILE: mobile_scan}

            overlap = overlap_check(login_scan, mobile_scan,
                                    self.policy.min_overlap_aps)
            proximity = None
            session = None
            if not overlap.passed:
                reason = "overlap"
            else:
                proximity = proximity_check(self.models, login_scan,
                                            mobile_scan, self.policy)
                if proximity.passed:
                    session = self._start_session(pending.username)
                    reason = "granted"
                else:
                    reason = "proximity"
        self._audit("login_decision", username=pending.username,
                    granted=session is not None, reason=reason)
        return AuthDecision(granted=session is not None, reason=reason,
                            overlap=overlap, proximity=proximity,
                            session=session)

    # -- continuous re-authentication ----------------------------------

    def continuous_tick(self, session: "Session | str", login_scan: ScanReport,
                        mobile_scan: ScanReport,
                        policy: AuthPolicy | None = None) -> str:
        """One re-check: every ensemble model votes, any negative terminates.

        Per model, the two scans' rows are pooled and folded exactly as in
        the login proximity check. All verdicts land in the session's check
        log. Returns "continue" or "terminate".
        """
        policy = policy if policy is not None else self.policy
        sess = self._resolve_session(session)
        with self._session_locks[sess.session_id]:
            if sess.status != ACTIVE:
                raise InvalidState("session is terminated")
            if sess.otp_fallback:
                raise InvalidState(
                    "fallback sessions do not run continuous checks")
            now = self.clock()
            if now - sess.last_check_at < policy.min_scan_interval_s:
                raise TooManyRequests(
                    "scans arriving faster than the minimum interval")
            profile = self.store.get(sess.username)
            self._check_scan(login_scan, LOGIN, profile.login_device)
            self._check_scan(mobile_scan, MOBILE, profile.mobile_device)

            rows = scan_feature_rows(login_scan) + scan_feature_rows(mobile_scan)
            X = np.asarray(rows, dtype=np.float64) if rows else None
            verdicts: dict[str, bool] = {}
            for algo in policy.continuous_ensemble:
                model = _require_model(self.models, algo)
                if X is None:
                    verdicts[algo] = False  # silence fails closed
                else:
                    votes = [int(v) for v in model.predict_many(X)]
                    verdicts[algo] = _combine(votes, policy.aggregation)
            negatives = sorted(a for a, ok in verdicts.items() if not ok)
            entry = {"t": now, "verdicts": verdicts}
            if negatives:
                sess.status = TERMINATED
                sess.termination_reason = (
                    f"proximity lost: {', '.join(negatives)} voted negative")
                sess.next_check_at = None
                entry["result"] = TERMINATE
                entry["reason"] = sess.termination_reason
                sess.check_log.append(entry)
                result = TERMINATE
            else:
                sess.last_check_at = now
                sess.next_check_at = now + policy.recheck_interval_s
                entry["result"] = CONTINUE
                sess.check_log.append(entry)
                result = CONTINUE
        self._audit("tick", session_id=sess.session_id, result=result)
        return result

    def get_session(self, session_id: str) -> Session:
        return self._resolve_session(session_id)

    # -- OTP fallback ---------------------------------------------------

    def request_otp(self, username: str, security_answer: str) -> dict:
        """Mail a one-time code if the security answer is right.

        The response is the same whether the user exists or the answer is
        wrong, and the rate limit counts requests per username string, so
        nothing here distinguishes real accounts from guesses.
        """
        username = str(username)
        now = self.clock()
        with self._lock:
            window = [t for t in self._otp_requests.get(username, ())
                      if now - t < self.policy.otp_rate_window_s]
            if len(window) >= self.policy.otp_rate_limit:
                self._otp_requests[username] = window
                raise TooManyRequests("too many code requests; try again later")
            window.append(now)
            self._otp_requests[username] = window
        profile = self.store.get(username)
        verifier = profile.answer_verifier if profile else self._decoy_verifier
        answered = check_verifier(normalize_answer(str(security_answer)), verifier)
        if profile is not None and answered:
            digits = self.policy.otp_digits
            code = f"{secrets.randbelow(10 ** digits):0{digits}d}"
            challenge = OtpChallenge(username=username, code=code,
                                     issued_at=now,
                                     expires_at=now + self.policy.otp_ttl_s)
            with self._lock:
                self._challenges[username] = challenge
            self.mailer.dispatch(MailMessage(
                to=profile.email,
                subject="Your one-time login code",
                body=(f"Your one-time code is {code}. It expires in "
                      f"{int(self.policy.otp_ttl_s)} seconds."),
                meta={"username": username, "expires_at": challenge.expires_at},
            ))
            self._audit("otp_sent", username=username)
        else:
            self._audit("otp_refused", username=username)
        return {"sent": True}

    def verify_otp(self, username: str, code: str) -> Session:
        """Trade a live emailed code for a fallback session.

        The code is single-use and valid strictly before its expiry instant;
        wrong, expired, used, and never-issued codes all fail identically.
        The comparison is constant-time.
        """
        username = str(username)
        now = self.clock()
        with self._lock:
            challenge = self._challenges.get(username)
            candidate = challenge.code if challenge else "never-issued"
            matched = hmac.compare_digest(candidate, str(code))
            ok = (challenge is not None and not challenge.used
                  and now < challenge.expires_at and matched)
            if not ok:
                self._audit("otp_denied", username=username)
                raise AuthFailed(_BAD_OTP)
            challenge.used = True
            session = self._start_session(username, otp_fallback=True)
        self._audit("otp_session", username=username,
                    session_id=session.session_id)
        return session

    # -- internals ------------------------------------------------------

    def _start_session(self, username: str, otp_fallback: bool = False) -> Session:
        now = self.clock()
        sess = Session(
            session_id=secrets.token_urlsafe(24),
            username=username,
            started_at=now,
            otp_fallback=otp_fallback,
            last_check_at=now,
            next_check_at=None if otp_fallback else now + self.policy.recheck_interval_s,
        )
        sess.check_log.append({
            "t": now, "result": "granted",
            "mode": "otp_fallback" if otp_fallback else "proximity",
        })
        with self._lock:
            self._sessions[sess.session_id] = sess
            self._session_locks[sess.session_id] = threading.Lock()
        return sess

    def _resolve_session(self, session: "Session | str") -> Session:
        sid = session.session_id if isinstance(session, Session) else str(session)
        with self._lock:
            sess = self._sessions.get(sid)
        if sess is None:
            raise KeyError(f"unknown session {sid!r}")
        return sess

    @staticmethod
    def _check_scan(scan, role: str, device_id: str) -> None:
        if not isinstance(scan, ScanReport):
            raise ValidationError("scan report has the wrong type")
        if scan.role != role:
            raise ValidationError(f"expected a {role} scan, got {scan.role!r}")
        if scan.device_id != device_id:
            raise ValidationError("scan does not come from a registered device")

    def _audit(self, event: str, **fields) -> None:
        # identifiers only; never secrets, codes, or verifiers
        entry = {"t": self.clock(), "event": event}
        entry.update(fields)
        with self._lock:
            self.audit_log.append(entry)
