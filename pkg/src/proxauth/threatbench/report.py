"""Attack report structure and its CSV/JSON renderings.

The CSV is the fixed nine-column table (attack, param, model, the five
metric columns, phase); extraction's fidelity numbers and the ensemble
before/after comparison ride along in the JSON document only.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from pathlib import Path

from ..mlcore import Metrics

CSV_COLUMNS = ("attack", "param", "model", "accuracy", "sensitivity",
               "specificity", "f1", "precision", "phase")


@dataclass(frozen=True)
class MetricRow:
    """One (attack, parameter, model, phase) cell of the results table."""

    attack: str
    param: str
    model: str
    phase: str  # "baseline" or "post"
    metrics: Metrics

    def as_record(self) -> dict:
        record = {"attack": self.attack, "param": self.param,
                  "model": self.model, "phase": self.phase}
        record.update(self.metrics.as_dict())
        return record


@dataclass(frozen=True)
class AttackReport:
    kind: str
    rows: list[MetricRow]
    fidelity: dict | None = None
    ensemble: dict | None = None

    def cell(self, model: str, phase: str, param: str | None = None) -> Metrics:
        for row in self.rows:
            if row.model == model and row.phase == phase \
                    and (param is None or row.param == param):
                return row.metrics
        raise KeyError(f"no {phase} row for {model!r} (param {param!r})")

    def models(self) -> list[str]:
        seen = dict.fromkeys(row.model for row in self.rows)
        return list(seen)


def render_csv(reports: list[AttackReport]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for report in reports:
        for row in report.rows:
            record = row.as_record()
            for name in ("accuracy", "sensitivity", "specificity", "f1",
                         "precision"):
                record[name] = f"{record[name]:.6f}"
            writer.writerow(record)
    return buf.getvalue()


def render_json(reports: list[AttackReport]) -> str:
    doc = {"reports": [
        {"attack": r.kind,
         "rows": [row.as_record() for row in r.rows],
         "fidelity": r.fidelity,
         "ensemble": r.ensemble}
        for r in reports]}
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def write_reports(reports: list[AttackReport], out_dir: str | Path) -> dict:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = {"csv": out_dir / "attack_report.csv",
             "json": out_dir / "attack_report.json"}
    paths["csv"].write_text(render_csv(reports), encoding="utf-8")
    paths["json"].write_text(render_json(reports), encoding="utf-8")
    return paths
