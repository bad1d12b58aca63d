"""Tabular report writers shared by the evaluation and attack paths.

Reports are plain CSV with a JSON mirror. Output is a pure function of
the rows, so identical inputs give identical bytes; timestamps belong in
run manifests, never in report files.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path


def format_value(v) -> str:
    if isinstance(v, float):
        return f"{v:.6f}"
    return str(v)


def rows_to_csv_text(fieldnames: list[str], rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(fieldnames)
    for row in rows:
        writer.writerow([format_value(row.get(f, "")) for f in fieldnames])
    return buf.getvalue()


def write_csv(path: str | Path, fieldnames: list[str], rows: list[dict]) -> None:
    Path(path).write_text(rows_to_csv_text(fieldnames, rows), encoding="utf-8")


def write_json(path: str | Path, payload) -> None:
    Path(path).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n",
                          encoding="utf-8")


METRIC_FIELDS = ["accuracy", "sensitivity", "specificity", "f1", "precision"]


def metrics_row(model: str, fold, metrics) -> dict:
    row = {"model": model, "fold": fold}
    row.update({k: getattr(metrics, k) for k in METRIC_FIELDS})
    return row
