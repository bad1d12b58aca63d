"""Adversarial experiments against the trained model suite."""

from .attacks import (
    ATTACK_KINDS,
    EVASION_SWEEP,
    AttackSpec,
    ensemble_predict,
    evasion_perturb,
    extraction_attack,
    interference_perturb,
    run_evasion,
    run_interference,
)
from .report import (
    CSV_COLUMNS,
    AttackReport,
    MetricRow,
    render_csv,
    render_json,
    write_reports,
)
from .suite import run_suite

__all__ = [
    "ATTACK_KINDS",
    "CSV_COLUMNS",
    "EVASION_SWEEP",
    "AttackReport",
    "AttackSpec",
    "MetricRow",
    "ensemble_predict",
    "evasion_perturb",
    "extraction_attack",
    "interference_perturb",
    "render_csv",
    "render_json",
    "run_evasion",
    "run_interference",
    "run_suite",
    "write_reports",
]
