"""Labeled co-location dataset: the six-column row format and its file I/O.

Columns (in order): RPi, SSID, Frequency, RSSI, Location, Label.
All values are integers; RSSI is integer dBm. The first five columns are
the model features, Label is 1 for co-located ("authentic") pairs and 0
for separated ("unauthorized") pairs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import EmptyInputError, ValidationError

COLUMNS = ("RPi", "SSID", "Frequency", "RSSI", "Location", "Label")
FEATURE_NAMES = COLUMNS[:-1]
N_FEATURES = len(FEATURE_NAMES)


@dataclass(frozen=True)
class Sample:
    """One device's observation of one access point, labeled by placement."""

    rpi: int
    ssid_code: int
    frequency_mhz: int
    rssi_dbm: int
    location: int
    label: int

    def as_row(self) -> tuple[int, int, int, int, int, int]:
        return (self.rpi, self.ssid_code, self.frequency_mhz,
                self.rssi_dbm, self.location, self.label)


class Dataset:
    """Immutable collection of samples backed by an integer array."""

    def __init__(self, rows: np.ndarray | list):
        arr = np.asarray(rows, dtype=np.int64)
        if arr.size == 0:
            arr = arr.reshape(0, len(COLUMNS))
        if arr.ndim != 2 or arr.shape[1] != len(COLUMNS):
            raise ValidationError(
                f"dataset rows must have {len(COLUMNS)} columns, got shape {arr.shape}")
        self._rows = arr
        self._rows.setflags(write=False)

    def __len__(self) -> int:
        return self._rows.shape[0]

    def __eq__(self, other) -> bool:
        return isinstance(other, Dataset) and np.array_equal(self._rows, other._rows)

    @property
    def rows(self) -> np.ndarray:
        return self._rows

    @property
    def features(self) -> np.ndarray:
        """N x 5 float matrix in the fixed feature order."""
        return self._rows[:, :N_FEATURES].astype(np.float64)

    @property
    def labels(self) -> np.ndarray:
        return self._rows[:, N_FEATURES].copy()

    def class_counts(self) -> dict[int, int]:
        labels = self._rows[:, N_FEATURES]
        return {1: int(np.sum(labels == 1)), 0: int(np.sum(labels == 0))}

    def subset(self, indices) -> "Dataset":
        return Dataset(self._rows[np.asarray(indices, dtype=np.int64)])

    def sample_at(self, i: int) -> Sample:
        return Sample(*(int(v) for v in self._rows[i]))

    # ---- file I/O --------------------------------------------------------

    def to_csv(self, path: str | Path) -> None:
        lines = [",".join(COLUMNS)]
        for row in self._rows:
            lines.append(",".join(str(int(v)) for v in row))
        Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")

    def to_jsonl(self, path: str | Path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            for row in self._rows:
                fh.write(json.dumps(dict(zip(COLUMNS, (int(v) for v in row)))) + "\n")

    @classmethod
    def from_csv(cls, path: str | Path) -> "Dataset":
        text = Path(path).read_text(encoding="utf-8")
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise EmptyInputError(f"{path}: empty dataset file")
        header = tuple(h.strip() for h in lines[0].split(","))
        if header != COLUMNS:
            raise ValidationError(f"{path}: expected header {','.join(COLUMNS)}")
        rows = [[int(v) for v in ln.split(",")] for ln in lines[1:]]
        return cls(rows)

    @classmethod
    def from_jsonl(cls, path: str | Path) -> "Dataset":
        rows = []
        with open(path, "r", encoding="utf-8") as fh:
            for ln in fh:
                if not ln.strip():
                    continue
                obj = json.loads(ln)
                try:
                    rows.append([int(obj[c]) for c in COLUMNS])
                except KeyError as exc:
                    raise ValidationError(f"{path}: missing field {exc}") from exc
        return cls(rows)

    @classmethod
    def load(cls, path: str | Path) -> "Dataset":
        """Load by extension: .jsonl/.ndjson as JSON lines, anything else as CSV."""
        if str(path).endswith((".jsonl", ".ndjson")):
            return cls.from_jsonl(path)
        return cls.from_csv(path)

    @classmethod
    def concat(cls, parts: list["Dataset"]) -> "Dataset":
        arrays = [p.rows for p in parts if len(p) > 0]
        if not arrays:
            return cls(np.empty((0, len(COLUMNS)), dtype=np.int64))
        return cls(np.vstack(arrays))
