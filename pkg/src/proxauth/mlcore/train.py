"""Training dispatch and the six fitted-model wrappers.

Every wrapper is immutable once constructed, predicts deterministically,
and resolves vote or margin ties to label 0, denying access on ambiguity.
"""

from __future__ import annotations

import numpy as np

from ..dataset import Dataset, N_FEATURES
from ..errors import (
    ConfigError,
    DegenerateDataError,
    EmptyInputError,
    ShapeError,
    ValidationError,
)
from . import bayes, linear
from .neighbors import knn_predict, knn_votes, nearest_indices
from .preprocessing import Standardizer
from .tree import Tree, grow_tree

ALGORITHMS = ("dt", "knn", "rf", "svm", "nb", "lr")

DEFAULT_HYPERPARAMS: dict[str, dict] = {
    "dt": {"max_depth": 12, "min_leaf": 2},
    "knn": {"k": 5},
    "rf": {"trees": 100, "max_depth": 12, "min_leaf": 2,
           "features_per_split": 2, "bootstrap": True},
    "svm": {"lam": 1e-3, "epochs": 200},
    "nb": {"var_floor": bayes.VARIANCE_FLOOR},
    "lr": {"step": 0.1, "epochs": 500, "l2": 1e-4},
}

# distance- and margin-based models see standardized features; trees and
# the Gaussian model consume the raw integer codes
STANDARDIZED = ("knn", "svm", "lr")


class TrainedModel:
    """Base for fitted classifiers: validation, scaling, serialization."""

    def __init__(self, algo: str, hyperparams: dict,
                 standardizer: Standardizer | None, train_seed: int):
        self.algo = algo
        self.hyperparams = dict(hyperparams)
        self.standardizer = standardizer
        self.train_seed = train_seed

    def _as_matrix(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=np.float64)
        if X.ndim != 2 or X.shape[1] != N_FEATURES:
            raise ShapeError(f"expected (n, {N_FEATURES}) features, got {X.shape}")
        if self.standardizer is not None:
            X = self.standardizer.transform(X)
        return X

    def predict_many(self, X) -> np.ndarray:
        return self._predict(self._as_matrix(X))

    def predict(self, fv) -> int:
        fv = np.asarray(fv, dtype=np.float64)
        if fv.shape != (N_FEATURES,):
            raise ShapeError(f"expected a {N_FEATURES}-vector, got shape {fv.shape}")
        return int(self.predict_many(fv[None, :])[0])

    def score_many(self, X) -> np.ndarray:
        return self._score(self._as_matrix(X))

    def decision_score(self, fv) -> float:
        fv = np.asarray(fv, dtype=np.float64)
        if fv.shape != (N_FEATURES,):
            raise ShapeError(f"expected a {N_FEATURES}-vector, got shape {fv.shape}")
        return float(self.score_many(fv[None, :])[0])

    def _predict(self, X: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def _score(self, X: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def params_to_dict(self) -> dict:
        raise NotImplementedError


class DecisionTreeModel(TrainedModel):
    def __init__(self, tree: Tree, hyperparams, train_seed):
        super().__init__("dt", hyperparams, None, train_seed)
        self.tree = tree

    def _predict(self, X):
        return self.tree.predict(X)

    def _score(self, X):
        # share of positive training rows in the reached leaf
        return self.tree.positive_share(X)

    @property
    def raw_importance(self) -> np.ndarray:
        return self.tree.importance

    def params_to_dict(self):
        return {"tree": self.tree.to_dict()}


class RandomForestModel(TrainedModel):
    def __init__(self, trees: list[Tree], hyperparams, train_seed):
        super().__init__("rf", hyperparams, None, train_seed)
        self.trees = trees

    def _votes(self, X):
        votes = np.zeros(len(X), dtype=np.int64)
        for tree in self.trees:
            votes += tree.predict(X)
        return votes

    def _predict(self, X):
        return (2 * self._votes(X) > len(self.trees)).astype(np.int64)

    def _score(self, X):
        return self._votes(X) / len(self.trees)

    @property
    def raw_importance(self) -> np.ndarray:
        return np.sum([t.importance for t in self.trees], axis=0)

    def params_to_dict(self):
        return {"trees": [t.to_dict() for t in self.trees]}


class KNNModel(TrainedModel):
    def __init__(self, X_std: np.ndarray, y: np.ndarray, hyperparams,
                 standardizer, train_seed):
        super().__init__("knn", hyperparams, standardizer, train_seed)
        self.train_X = X_std
        self.train_y = y

    def _predict(self, X):
        return knn_predict(self.train_X, self.train_y, X, self.hyperparams["k"])

    def _score(self, X):
        k = self.hyperparams["k"]
        votes = knn_votes(self.train_y, nearest_indices(self.train_X, X, k))
        return votes / k

    def params_to_dict(self):
        return {"train_X": self.train_X.tolist(), "train_y": self.train_y.tolist()}


class SVMModel(TrainedModel):
    def __init__(self, w: np.ndarray, b: float, hyperparams, standardizer,
                 train_seed):
        super().__init__("svm", hyperparams, standardizer, train_seed)
        self.w = w
        self.b = b

    def _predict(self, X):
        return (X @ self.w + self.b > 0.0).astype(np.int64)

    def _score(self, X):
        return X @ self.w + self.b  # signed margin

    def params_to_dict(self):
        return {"w": self.w.tolist(), "b": self.b}


class LRModel(TrainedModel):
    def __init__(self, w: np.ndarray, b: float, hyperparams, standardizer,
                 train_seed):
        super().__init__("lr", hyperparams, standardizer, train_seed)
        self.w = w
        self.b = b

    def _predict(self, X):
        return (X @ self.w + self.b > 0.0).astype(np.int64)

    def _score(self, X):
        return linear.sigmoid(X @ self.w + self.b)

    def params_to_dict(self):
        return {"w": self.w.tolist(), "b": self.b}


class NBModel(TrainedModel):
    def __init__(self, priors, means, variances, hyperparams, train_seed):
        super().__init__("nb", hyperparams, None, train_seed)
        self.priors = priors
        self.means = means
        self.variances = variances

    def _predict(self, X):
        return bayes.nb_predict(self.priors, self.means, self.variances, X)

    def _score(self, X):
        return bayes.posterior_positive(self.priors, self.means, self.variances, X)

    def params_to_dict(self):
        return {"priors": self.priors.tolist(), "means": self.means.tolist(),
                "variances": self.variances.tolist()}


def resolve_hyperparams(algo: str, overrides: dict | None) -> dict:
    params = dict(DEFAULT_HYPERPARAMS[algo])
    if overrides:
        unknown = set(overrides) - set(params)
        if unknown:
            raise ConfigError(f"unknown {algo} hyperparameters: {sorted(unknown)}")
        params.update(overrides)
    return params


def train_arrays(algo: str, X: np.ndarray, y: np.ndarray,
                 hyperparams: dict | None = None, seed: int = 0) -> TrainedModel:
    """Fit one classifier on a raw float feature matrix."""
    algo = str(algo).lower()
    if algo not in ALGORITHMS:
        raise ConfigError(f"unknown algorithm {algo!r}; choose from {ALGORITHMS}")
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.int64)
    if X.ndim != 2 or X.shape[1] != N_FEATURES:
        raise ShapeError(f"expected (n, {N_FEATURES}) features, got {X.shape}")
    if len(X) == 0:
        raise EmptyInputError("cannot train on an empty set")
    present = set(y.tolist())
    if not present <= {0, 1}:
        raise ValidationError(f"labels must be 0 or 1, saw {sorted(present)}")
    if len(present) < 2:
        raise DegenerateDataError("training set must contain both classes")
    hp = resolve_hyperparams(algo, hyperparams)

    standardizer = None
    if algo in STANDARDIZED:
        standardizer = Standardizer().fit(X)
        X = standardizer.transform(X)

    if algo == "dt":
        tree = grow_tree(X, y, hp["max_depth"], hp["min_leaf"])
        return DecisionTreeModel(tree, hp, seed)
    if algo == "rf":
        rng = np.random.default_rng(seed)
        sub = hp["features_per_split"]
        trees = []
        for _ in range(hp["trees"]):
            if hp["bootstrap"]:
                pick = rng.integers(0, len(X), size=len(X))
                Xb, yb = X[pick], y[pick]
            else:
                Xb, yb = X, y
            trees.append(grow_tree(Xb, yb, hp["max_depth"], hp["min_leaf"],
                                   n_sub_features=sub, rng=rng))
        return RandomForestModel(trees, hp, seed)
    if algo == "knn":
        if not 1 <= hp["k"] <= len(X):
            raise ConfigError(f"k must be in [1, {len(X)}]")
        return KNNModel(X, y, hp, standardizer, seed)
    if algo == "svm":
        w, b = linear.fit_linear_svm(X, y, lam=hp["lam"], epochs=hp["epochs"])
        return SVMModel(w, b, hp, standardizer, seed)
    if algo == "lr":
        w, b = linear.fit_logistic(X, y, step=hp["step"], epochs=hp["epochs"],
                                   l2=hp["l2"])
        return LRModel(w, b, hp, standardizer, seed)
    priors, means, variances = bayes.fit_gaussians(X, y, hp["var_floor"])
    return NBModel(priors, means, variances, hp, seed)


def train(algo: str, train_set: Dataset, hyperparams: dict | None = None,
          seed: int = 0) -> TrainedModel:
    """Fit one of the six classifiers on a labeled dataset."""
    return train_arrays(algo, train_set.features, train_set.labels,
                        hyperparams, seed)


def train_all(train_set: Dataset, seed: int = 0,
              algos: tuple[str, ...] = ALGORITHMS) -> dict[str, TrainedModel]:
    return {algo: train(algo, train_set, seed=seed) for algo in algos}


def predict(model: TrainedModel, fv) -> int:
    return model.predict(fv)
