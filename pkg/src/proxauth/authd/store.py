"""User accounts and credential verifiers.

Secrets are never stored or logged in the clear: both the password and the
security answer are kept as salted PBKDF2-HMAC-SHA256 verifiers in a
self-describing string format, so the iteration count can be raised later
without invalidating existing records.
"""

from __future__ import annotations

import hashlib
import hmac
import json
import secrets
import threading
from dataclasses import dataclass, replace
from pathlib import Path

from ..errors import ValidationError

PBKDF2_ITERATIONS = 100_000
_SALT_BYTES = 16


def derive_verifier(secret: str, *, iterations: int = PBKDF2_ITERATIONS) -> str:
    """Return a ``pbkdf2$sha256$<iters>$<salt>$<digest>`` verifier string."""
    if iterations < 1:
        raise ValidationError("iterations must be positive")
    salt = secrets.token_bytes(_SALT_BYTES)
    digest = hashlib.pbkdf2_hmac("sha256", secret.encode("utf-8"), salt, iterations)
    return f"pbkdf2$sha256${iterations}${salt.hex()}${digest.hex()}"


def check_verifier(secret: str, verifier: str) -> bool:
    """Constant-time check of a candidate secret against a stored verifier."""
    try:
        scheme, algo, iters, salt_hex, digest_hex = verifier.split("$")
        if scheme != "pbkdf2" or algo != "sha256":
            return False
        salt = bytes.fromhex(salt_hex)
        want = bytes.fromhex(digest_hex)
        iterations = int(iters)
    except (ValueError, AttributeError):
        return False
    got = hashlib.pbkdf2_hmac("sha256", secret.encode("utf-8"), salt, iterations)
    return hmac.compare_digest(got, want)


def normalize_answer(answer: str) -> str:
    """Security answers compare case- and whitespace-insensitively."""
    return " ".join(answer.split()).casefold()


@dataclass(frozen=True)
class UserProfile:
    """One enrolled user: identifiers, verifiers, and registered devices."""

    username: str
    password_verifier: str
    security_question: str
    answer_verifier: str
    email: str
    login_device: str
    mobile_device: str
    created_at: float

    def to_dict(self) -> dict:
        return {
            "username": self.username,
            "password_verifier": self.password_verifier,
            "security_question": self.security_question,
            "answer_verifier": self.answer_verifier,
            "email": self.email,
            "login_device": self.login_device,
            "mobile_device": self.mobile_device,
            "created_at": self.created_at,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "UserProfile":
        try:
            return cls(
                username=str(doc["username"]),
                password_verifier=str(doc["password_verifier"]),
                security_question=str(doc["security_question"]),
                answer_verifier=str(doc["answer_verifier"]),
                email=str(doc["email"]),
                login_device=str(doc["login_device"]),
                mobile_device=str(doc["mobile_device"]),
                created_at=float(doc["created_at"]),
            )
        except KeyError as exc:
            raise ValidationError(f"user record missing field {exc.args[0]!r}") from exc


class MemoryUserStore:
    """Volatile user store; the default for tests and demos."""

    def __init__(self) -> None:
        self._users: dict[str, UserProfile] = {}
        self._lock = threading.RLock()

    def get(self, username: str) -> UserProfile | None:
        with self._lock:
            return self._users.get(username)

    def put(self, profile: UserProfile) -> None:
        with self._lock:
            self._users[profile.username] = profile

    def usernames(self) -> list[str]:
        with self._lock:
            return sorted(self._users)


class JsonlUserStore(MemoryUserStore):
    """Append-only JSON-lines store; the last record per username wins.

    Every ``put`` appends one line and flushes, so a crash loses at most the
    write in flight. Loading replays the file in order, which makes updates
    (including re-registration after an operator removes the conflict guard)
    a pure append with no rewrite step.
    """

    def __init__(self, path: str | Path) -> None:
        super().__init__()
        self.path = Path(path)
        if self.path.exists():
            for line in self.path.read_text(encoding="utf-8").splitlines():
                line = line.strip()
                if not line:
                    continue
                profile = UserProfile.from_dict(json.loads(line))
                self._users[profile.username] = profile

    def put(self, profile: UserProfile) -> None:
        with self._lock:
            super().put(profile)
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with self.path.open("a", encoding="utf-8") as fh:
                fh.write(json.dumps(profile.to_dict(), sort_keys=True) + "\n")
                fh.flush()
