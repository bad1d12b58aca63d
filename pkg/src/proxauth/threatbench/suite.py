"""Run a list of attack specs against a trained model suite."""

from __future__ import annotations

from pathlib import Path

from ..dataset import Dataset
from ..errors import ConfigError, InvalidState
from ..mlcore.train import TrainedModel
from .attacks import AttackSpec, extraction_attack, run_evasion, run_interference
from .report import AttackReport, write_reports

DEFAULT_EXTRACTION_TARGET = "rf"


def run_suite(models: dict[str, TrainedModel], train_set: Dataset,
              test_set: Dataset, specs: list[AttackSpec],
              out_dir: str | Path | None = None,
              extraction_target: str = DEFAULT_EXTRACTION_TARGET,
              ) -> list[AttackReport]:
    """One AttackReport per spec; optionally rendered to CSV + JSON.

    The whole run is deterministic: rerunning with the same models, data
    and specs reproduces the report files byte for byte.
    """
    if not specs:
        raise ConfigError("no attack specs to run")
    for name, model in models.items():
        if not isinstance(model, TrainedModel):
            raise InvalidState(f"{name!r} is not a trained model")

    reports = []
    for spec in specs:
        if spec.kind == "evasion":
            reports.append(run_evasion(models, train_set, test_set, spec))
        elif spec.kind == "extraction":
            if extraction_target not in models:
                raise ConfigError(
                    f"extraction target {extraction_target!r} not in suite")
            _, report = extraction_attack(
                models[extraction_target], train_set, test_set, spec,
                ensemble_models=models)
            reports.append(report)
        else:
            reports.append(run_interference(models, train_set, test_set, spec))

    if out_dir is not None:
        write_reports(reports, out_dir)
    return reports
