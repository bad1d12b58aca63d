"""Run manifests: every artifact records what produced it.

A manifest sits next to its artifact(s) and holds the subcommand, the
argv as invoked, the fully resolved configuration, the seed, and the
input/output paths. Feeding the recorded argv back through the CLI
reproduces the outputs byte for byte; only the manifest's own timestamps
differ between runs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from .. import __version__
from ..errors import ValidationError

MANIFEST_SUFFIX = ".manifest.json"

TIMESTAMP_FIELDS = ("started_at", "finished_at")


def now_iso() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def manifest_path(artifact: str | Path) -> Path:
    """`data.csv` -> `data.csv.manifest.json`, next to the artifact."""
    return Path(str(artifact) + MANIFEST_SUFFIX)


@dataclass
class RunManifest:
    command: str
    argv: list[str]
    config: dict
    seed: int | None
    inputs: list[str]
    outputs: list[str]
    tool_version: str = __version__
    started_at: str = field(default_factory=now_iso)
    finished_at: str = ""

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "argv": list(self.argv),
            "config": dict(self.config),
            "seed": self.seed,
            "inputs": list(self.inputs),
            "outputs": list(self.outputs),
            "tool_version": self.tool_version,
            "started_at": self.started_at,
            "finished_at": self.finished_at,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "RunManifest":
        try:
            return cls(command=str(doc["command"]), argv=list(doc["argv"]),
                       config=dict(doc["config"]), seed=doc["seed"],
                       inputs=list(doc["inputs"]), outputs=list(doc["outputs"]),
                       tool_version=str(doc["tool_version"]),
                       started_at=str(doc["started_at"]),
                       finished_at=str(doc["finished_at"]))
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"malformed manifest: {exc}") from exc

    @classmethod
    def load(cls, path: str | Path) -> "RunManifest":
        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))

    def write(self, path: str | Path) -> Path:
        path = Path(path)
        self.finished_at = self.finished_at or now_iso()
        path.write_text(json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n",
                        encoding="utf-8")
        return path

    def write_beside(self, artifact: str | Path) -> Path:
        return self.write(manifest_path(artifact))

    def reproducible_fields(self) -> dict:
        """Everything that must match between reruns (timestamps dropped)."""
        doc = self.to_dict()
        for key in TIMESTAMP_FIELDS:
            doc.pop(key)
        return doc
