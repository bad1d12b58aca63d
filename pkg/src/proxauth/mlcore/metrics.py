"""Confusion matrix and the five evaluation metrics.

Positive class is label 1 ("authentic"), so sensitivity is the recall of
co-located pairs and specificity the recall of separated ones.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..dataset import Dataset
from ..errors import EmptyInputError, EmptyMatrixError, ValidationError


@dataclass(frozen=True)
class ConfusionMatrix:
    tp: int
    fp: int
    tn: int
    fn: int

    def __post_init__(self):
        if min(self.tp, self.fp, self.tn, self.fn) < 0:
            raise ValidationError("confusion matrix counts must be non-negative")

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.tn + self.fn

    @classmethod
    def from_predictions(cls, y_true, y_pred) -> "ConfusionMatrix":
        y_true = np.asarray(y_true)
        y_pred = np.asarray(y_pred)
        if y_true.shape != y_pred.shape:
            raise ValidationError("prediction/label length mismatch")
        return cls(
            tp=int(np.sum((y_true == 1) & (y_pred == 1))),
            fp=int(np.sum((y_true == 0) & (y_pred == 1))),
            tn=int(np.sum((y_true == 0) & (y_pred == 0))),
            fn=int(np.sum((y_true == 1) & (y_pred == 0))),
        )


@dataclass(frozen=True)
class Metrics:
    """The five scores of the evaluation table.

    `degenerate` names the metrics whose denominator was zero; those are
    reported as 0 rather than raising, which keeps fold aggregation total.
    """

    accuracy: float
    sensitivity: float
    specificity: float
    f1: float
    precision: float
    degenerate: tuple[str, ...] = ()

    def as_dict(self) -> dict:
        return {
            "accuracy": self.accuracy,
            "sensitivity": self.sensitivity,
            "specificity": self.specificity,
            "f1": self.f1,
            "precision": self.precision,
        }


def _ratio(num: int, den: int, name: str, flags: list[str]) -> float:
    if den == 0:
        flags.append(name)
        return 0.0
    return num / den


def metrics_from_cm(cm: ConfusionMatrix) -> Metrics:
    """Accuracy, sensitivity, specificity, F1 and precision from counts."""
    if cm.total == 0:
        raise EmptyMatrixError("confusion matrix holds no observations")
    flags: list[str] = []
    accuracy = (cm.tp + cm.tn) / cm.total
    sensitivity = _ratio(cm.tp, cm.tp + cm.fn, "sensitivity", flags)
    specificity = _ratio(cm.tn, cm.tn + cm.fp, "specificity", flags)
    precision = _ratio(cm.tp, cm.tp + cm.fp, "precision", flags)
    if precision + sensitivity == 0.0:
        flags.append("f1")
        f1 = 0.0
    else:
        f1 = 2.0 * precision * sensitivity / (precision + sensitivity)
    return Metrics(accuracy, sensitivity, specificity, f1, precision, tuple(flags))


def evaluate(model, test_set: Dataset) -> tuple[ConfusionMatrix, Metrics]:
    """Confusion matrix and metrics of a model on a labeled test set."""
    if len(test_set) == 0:
        raise EmptyInputError("cannot evaluate on an empty test set")
    predictions = model.predict_many(test_set.features)
    cm = ConfusionMatrix.from_predictions(test_set.labels, predictions)
    return cm, metrics_from_cm(cm)
