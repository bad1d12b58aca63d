"""Split, fold, order and scale data ahead of training."""

from __future__ import annotations

import numpy as np

from ..dataset import Dataset
from ..errors import ConfigError, EmptyInputError, StratifyError


def canonical_order(X: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Indices that sort rows lexicographically by features, then label.

    Training routines that visit rows in sequence (or sum over them) sort
    with this first, so a shuffled training set produces the same model.
    """
    keys = [y] + [X[:, j] for j in range(X.shape[1] - 1, -1, -1)]
    return np.lexsort(keys)


class Standardizer:
    """Per-feature zero-mean unit-variance scaling, fit on training data only."""

    def __init__(self):
        self.mean_ = None
        self.std_ = None

    @property
    def fitted(self) -> bool:
        return self.mean_ is not None

    def fit(self, X: np.ndarray) -> "Standardizer":
        if self.fitted:
            raise ConfigError("standardizer statistics are immutable once fit")
        X = np.asarray(X, dtype=np.float64)
        if X.size == 0:
            raise EmptyInputError("cannot fit a standardizer on no rows")
        self.mean_ = X.mean(axis=0)
        std = X.std(axis=0)
        std[std == 0.0] = 1.0  # constant features pass through unscaled
        self.std_ = std
        return self

    def transform(self, X: np.ndarray) -> np.ndarray:
        if not self.fitted:
            raise ConfigError("standardizer used before fit")
        return (np.asarray(X, dtype=np.float64) - self.mean_) / self.std_

    def fit_transform(self, X: np.ndarray) -> np.ndarray:
        return self.fit(X).transform(X)

    def to_dict(self) -> dict:
        return {"mean": self.mean_.tolist(), "std": self.std_.tolist()}

    @classmethod
    def from_dict(cls, data: dict) -> "Standardizer":
        s = cls()
        s.mean_ = np.asarray(data["mean"], dtype=np.float64)
        s.std_ = np.asarray(data["std"], dtype=np.float64)
        return s


def _class_indices(labels: np.ndarray) -> list[np.ndarray]:
    return [np.flatnonzero(labels == c) for c in sorted(set(labels.tolist()))]


def train_test_split(dataset: Dataset, test_fraction: float = 0.2,
                     seed: int = 0) -> tuple[Dataset, Dataset]:
    """Stratified split into (train, test), deterministic under seed.

    Test rows per class follow the largest-remainder rule, so the overall
    test size is round(n * fraction) and each class ratio stays within one
    row of the full-set ratio.
    """
    if not (0.0 < test_fraction < 1.0):
        raise ConfigError("test_fraction must lie strictly between 0 and 1")
    n = len(dataset)
    if n == 0:
        raise EmptyInputError("cannot split an empty dataset")
    labels = dataset.labels
    per_class = _class_indices(labels)
    if any(len(idx) < 2 for idx in per_class):
        raise StratifyError("every class needs at least 2 rows to split")

    total_test = int(round(n * test_fraction))
    quotas = [len(idx) * test_fraction for idx in per_class]
    base = [int(np.floor(q)) for q in quotas]
    remainders = np.array([q - b for q, b in zip(quotas, base)])
    short = total_test - sum(base)
    # hand the leftover rows to the largest remainders (ties: lower class first)
    for ci in np.argsort(-remainders, kind="stable")[:short]:
        base[int(ci)] += 1

    rng = np.random.default_rng(seed)
    test_idx: list[np.ndarray] = []
    train_idx: list[np.ndarray] = []
    for idx, quota in zip(per_class, base):
        perm = rng.permutation(idx)
        test_idx.append(perm[:quota])
        train_idx.append(perm[quota:])
    train = np.sort(np.concatenate(train_idx))
    test = np.sort(np.concatenate(test_idx))
    return dataset.subset(train), dataset.subset(test)


def stratified_kfold(dataset: Dataset, k: int = 5,
                     seed: int = 0) -> list[tuple[Dataset, Dataset]]:
    """k stratified (train, validation) pairs covering the dataset exactly.

    Shuffled class members are dealt round-robin into folds with a cursor
    that carries over between classes, keeping overall fold sizes as even
    as the total allows (4825 rows, k=5 gives five folds of 965).
    """
    n = len(dataset)
    if k < 2:
        raise ConfigError("k must be at least 2")
    if k > n:
        raise ConfigError(f"k={k} exceeds the {n} available rows")
    labels = dataset.labels
    per_class = _class_indices(labels)
    if any(len(idx) < k for idx in per_class):
        raise StratifyError(f"every class needs at least k={k} rows")

    rng = np.random.default_rng(seed)
    folds: list[list[int]] = [[] for _ in range(k)]
    cursor = 0
    for idx in per_class:
        for row in rng.permutation(idx):
            folds[cursor % k].append(int(row))
            cursor += 1

    pairs = []
    for i in range(k):
        val = np.sort(np.array(folds[i], dtype=np.int64))
        train = np.sort(np.concatenate(
            [np.array(folds[j], dtype=np.int64) for j in range(k) if j != i]))
        pairs.append((dataset.subset(train), dataset.subset(val)))
    return pairs
