"""Per-feature importance, computed the way each model family allows.

Trees and forests report accumulated Gini impurity decrease, the nearest
neighbor model falls back to mutual information between each raw feature
column and the label, and the linear models report absolute coefficient
magnitude (in standardized feature space). The Gaussian model offers no
coefficient-like quantity, so asking for one raises NotApplicableError.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..dataset import Dataset, FEATURE_NAMES
from ..errors import (
    ConfigError,
    DegenerateDataError,
    EmptyInputError,
    NotApplicableError,
    ShapeError,
)
from .train import TrainedModel


@dataclass(frozen=True)
class ImportanceVector:
    """Non-negative per-feature scores in the fixed feature order, sum 1."""

    scores: tuple[float, ...]

    def __post_init__(self):
        if len(self.scores) != len(FEATURE_NAMES):
            raise ShapeError(f"expected {len(FEATURE_NAMES)} scores")

    def as_dict(self) -> dict[str, float]:
        return dict(zip(FEATURE_NAMES, self.scores))

    def ranked(self) -> list[tuple[str, float]]:
        pairs = list(zip(FEATURE_NAMES, self.scores))
        return sorted(pairs, key=lambda kv: -kv[1])

    def top_feature(self) -> str:
        return self.ranked()[0][0]


def mutual_information(column, labels, bins: int = 10) -> float:
    """I(X; Y) in bits between a real column and binary labels.

    The column is discretized into equal-width bins over its own range; a
    constant column lands in one bin and scores exactly 0.
    """
    column = np.asarray(column, dtype=np.float64)
    labels = np.asarray(labels, dtype=np.int64)
    if column.size == 0:
        raise EmptyInputError("mutual information of an empty column")
    if column.shape != labels.shape:
        raise ShapeError("column and labels must have equal length")
    if bins < 1:
        raise ConfigError("bins must be >= 1")
    lo, hi = column.min(), column.max()
    if hi == lo:
        return 0.0
    which = np.minimum((column - lo) / (hi - lo) * bins, bins - 1).astype(np.int64)
    joint = np.zeros((bins, 2))
    np.add.at(joint, (which, labels), 1.0)
    joint /= len(column)
    px = joint.sum(axis=1, keepdims=True)
    py = joint.sum(axis=0, keepdims=True)
    nonzero = joint > 0
    ratio = joint[nonzero] / (px @ py)[nonzero]
    return float(np.sum(joint[nonzero] * np.log2(ratio)))


def _normalized(raw: np.ndarray) -> ImportanceVector:
    raw = np.asarray(raw, dtype=np.float64)
    total = raw.sum()
    if total <= 0.0:
        raise DegenerateDataError("no feature carries any importance mass")
    return ImportanceVector(tuple((raw / total).tolist()))


def feature_importance(model: TrainedModel, train_set: Dataset | None = None,
                       ) -> ImportanceVector:
    """Normalized per-feature importance for a trained model."""
    if model.algo in ("dt", "rf"):
        return _normalized(model.raw_importance)
    if model.algo == "knn":
        if train_set is None:
            raise ConfigError("the nearest-neighbor path needs the training set")
        X = train_set.features
        y = train_set.labels
        scores = [mutual_information(X[:, j], y) for j in range(X.shape[1])]
        return _normalized(np.array(scores))
    if model.algo in ("svm", "lr"):
        return _normalized(np.abs(model.w))
    raise NotApplicableError(
        "the Gaussian model assigns no per-feature coefficients")
