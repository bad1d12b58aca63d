"""The three adversarial experiments: evasion, extraction, interference.

Every attack is a pure function of its inputs and a seed. Evasion and
extraction perturb the RSSI column only and keep readings integer dBm;
interference adds continuous noise to the whole feature matrix, matching
the threat of a noisy RF channel rather than a crafted input.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..dataset import Dataset
from ..errors import ConfigError
from ..mlcore import ConfusionMatrix, Metrics, evaluate, metrics_from_cm, train
from ..mlcore.train import TrainedModel
from .report import AttackReport, MetricRow

ATTACK_KINDS = ("evasion", "extraction", "interference")
EVASION_SWEEP = (0.5, 1.0, 2.0, 4.0, 8.0)
RSSI_COLUMN = 3


@dataclass(frozen=True)
class AttackSpec:
    """What to run and how hard to push.

    Only the fields of the chosen kind matter: the sigma sweep for evasion,
    the RSSI perturbation range (dB, uniform both ways) for extraction, the
    per-feature noise sigma for interference.
    """

    kind: str
    noise_sigmas: tuple[float, ...] = EVASION_SWEEP
    rssi_perturbation_range: float = 20.0
    interference_sigma: float = 2.0
    seed: int = 0

    def __post_init__(self):
        if self.kind not in ATTACK_KINDS:
            raise ConfigError(
                f"unknown attack kind {self.kind!r}; choose from {ATTACK_KINDS}")
        if any(s < 0 for s in self.noise_sigmas):
            raise ConfigError("evasion sigmas must be non-negative")
        if self.rssi_perturbation_range < 0:
            raise ConfigError("perturbation range must be non-negative")
        if self.interference_sigma < 0:
            raise ConfigError("interference sigma must be non-negative")


def evasion_perturb(test_set: Dataset, sigma: float, seed: int) -> Dataset:
    """Copy of the test set with Normal(0, sigma) added to the RSSI column.

    Readings stay integer dBm, so the noise is rounded to the nearest dB;
    every other column and all labels are untouched.
    """
    if sigma < 0:
        raise ConfigError("sigma must be non-negative")
    rows = test_set.rows.copy()
    noise = np.random.default_rng(seed).normal(0.0, sigma, size=len(rows))
    rows[:, RSSI_COLUMN] = np.rint(
        rows[:, RSSI_COLUMN] + noise).astype(np.int64)
    return Dataset(rows)


def interference_perturb(test_features, seed: int,
                         sigma: float = 2.0) -> np.ndarray:
    """Feature matrix with independent Normal(0, sigma) on every entry."""
    if sigma < 0:
        raise ConfigError("sigma must be non-negative")
    X = np.asarray(test_features, dtype=np.float64)
    return X + np.random.default_rng(seed).normal(0.0, sigma, size=X.shape)


def ensemble_predict(models: dict[str, TrainedModel], X) -> np.ndarray:
    """Majority vote across the model suite; a tie denies (label 0)."""
    votes = np.zeros(len(X), dtype=np.int64)
    for model in models.values():
        votes += model.predict_many(X)
    return (2 * votes > len(models)).astype(np.int64)


def _noisy_metrics(model: TrainedModel, X, y) -> Metrics:
    cm = ConfusionMatrix.from_predictions(y, model.predict_many(X))
    return metrics_from_cm(cm)


def _baseline_rows(attack: str, models: dict[str, TrainedModel],
                   test_set: Dataset) -> list[MetricRow]:
    return [MetricRow(attack, "0", algo, "baseline", evaluate(m, test_set)[1])
            for algo, m in models.items()]


def run_evasion(models: dict[str, TrainedModel], train_set: Dataset,
                test_set: Dataset, spec: AttackSpec) -> AttackReport:
    """Evaluate every model on RSSI-noised copies of the test set.

    One post row per (sigma, model); the baseline rows are the clean
    evaluation, i.e. the sigma=0 point of the curve.
    """
    rows = _baseline_rows("evasion", models, test_set)
    for i, sigma in enumerate(spec.noise_sigmas):
        noisy = evasion_perturb(test_set, sigma, spec.seed + i)
        for algo, model in models.items():
            rows.append(MetricRow(
                "evasion", f"{sigma:g}", algo, "post",
                _noisy_metrics(model, noisy.features, noisy.labels)))
    return AttackReport("evasion", rows)


def extraction_attack(target_model: TrainedModel, train_set: Dataset,
                      test_set: Dataset, spec: AttackSpec,
                      ensemble_models: dict[str, TrainedModel] | None = None,
                      ) -> tuple[TrainedModel, AttackReport]:
    """Train a shadow forest on the target's answers to perturbed queries.

    The query set is a copy of the full dataset with RSSI shifted by
    Uniform(-range, +range), labeled by the target's own predictions. The
    report carries the shadow's agreement with the target on those queries
    and its accuracy on the clean test set. The deployed models are never
    modified; when the full suite is supplied, the majority-ensemble
    accuracy is reported before and after to make that checkable.
    """
    full = Dataset.concat([train_set, test_set])
    rng = np.random.default_rng(spec.seed)
    span = spec.rssi_perturbation_range
    rows = full.rows.copy()
    rows[:, RSSI_COLUMN] = np.rint(
        rows[:, RSSI_COLUMN] + rng.uniform(-span, span, size=len(rows))
    ).astype(np.int64)
    queries = Dataset(rows)

    suite = ensemble_models or {target_model.algo: target_model}
    ensemble = None
    if ensemble_models:
        before = float(np.mean(
            ensemble_predict(ensemble_models, test_set.features)
            == test_set.labels))
        ensemble = {"before": before}

    target_answers = target_model.predict_many(queries.features)
    shadow_rows = queries.rows.copy()
    shadow_rows[:, -1] = target_answers
    shadow = train("rf", Dataset(shadow_rows), seed=spec.seed)

    agreement = float(np.mean(
        shadow.predict_many(queries.features) == target_answers))
    shadow_clean = evaluate(shadow, test_set)[1]

    report_rows = _baseline_rows("extraction", suite, test_set)
    for algo, model in suite.items():
        report_rows.append(MetricRow(
            "extraction", f"{span:g}", algo, "post",
            _noisy_metrics(model, queries.features, queries.labels)))

    if ensemble_models:
        ensemble["after"] = float(np.mean(
            ensemble_predict(ensemble_models, test_set.features)
            == test_set.labels))

    fidelity = {
        "target_model": target_model.algo,
        "query_count": len(queries),
        "perturbation_range_db": span,
        "agreement_on_queries": agreement,
        "shadow_clean_accuracy": shadow_clean.accuracy,
    }
    return shadow, AttackReport("extraction", report_rows, fidelity, ensemble)


def run_interference(models: dict[str, TrainedModel], train_set: Dataset,
                     test_set: Dataset, spec: AttackSpec) -> AttackReport:
    """Evaluate every model on a whole-matrix noised copy of the test set."""
    rows = _baseline_rows("interference", models, test_set)
    noisy = interference_perturb(test_set.features, spec.seed,
                                 spec.interference_sigma)
    for algo, model in models.items():
        rows.append(MetricRow(
            "interference", f"{spec.interference_sigma:g}", algo, "post",
            _noisy_metrics(model, noisy, test_set.labels)))
    return AttackReport("interference", rows)
