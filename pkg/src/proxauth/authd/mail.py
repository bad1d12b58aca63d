"""Outbound mail with swappable delivery.

The service only ever calls ``dispatch(message)``; what that does is an
operator choice. Three implementations cover the realistic range: keep it
in memory (tests), print it (demos), or drop one JSON file per message into
a spool directory that a real MTA relay can watch.
"""

from __future__ import annotations

import json
import sys
import threading
from dataclasses import dataclass, field
from pathlib import Path


@dataclass(frozen=True)
class MailMessage:
    to: str
    subject: str
    body: str
    meta: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"to": self.to, "subject": self.subject,
                "body": self.body, "meta": dict(self.meta)}


class Mailer:
    """Interface: one method, fire and forget."""

    def dispatch(self, message: MailMessage) -> None:
        raise NotImplementedError


class MemoryMailer(Mailer):
    """Collects messages in an outbox list."""

    def __init__(self) -> None:
        self.outbox: list[MailMessage] = []

    def dispatch(self, message: MailMessage) -> None:
        self.outbox.append(message)


class StdoutMailer(Mailer):
    def __init__(self, stream=None) -> None:
        self.stream = stream if stream is not None else sys.stdout

    def dispatch(self, message: MailMessage) -> None:
        print(json.dumps(message.to_dict(), sort_keys=True), file=self.stream)


class SpoolMailer(Mailer):
    """Writes each message as ``<seq>.json`` under a spool directory."""

    def __init__(self, spool_dir: str | Path) -> None:
        self.spool_dir = Path(spool_dir)
        self.spool_dir.mkdir(parents=True, exist_ok=True)
        self._lock = threading.Lock()
        existing = [int(p.stem) for p in self.spool_dir.glob("*.json")
                    if p.stem.isdigit()]
        self._seq = max(existing, default=0)

    def dispatch(self, message: MailMessage) -> None:
        with self._lock:
            self._seq += 1
            path = self.spool_dir / f"{self._seq:06d}.json"
        path.write_text(json.dumps(message.to_dict(), indent=2, sort_keys=True) + "\n",
                        encoding="utf-8")
