"""Versioned JSON persistence for trained models."""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from ..errors import SchemaVersionError, ValidationError
from .preprocessing import Standardizer
from .train import (
    DecisionTreeModel,
    KNNModel,
    LRModel,
    NBModel,
    RandomForestModel,
    SVMModel,
    TrainedModel,
)
from .tree import Tree

MODEL_SCHEMA_VERSION = 1


def save_model(model: TrainedModel, path: str | Path) -> None:
    doc = {
        "schema_version": MODEL_SCHEMA_VERSION,
        "algo": model.algo,
        "hyperparams": model.hyperparams,
        "train_seed": model.train_seed,
        "standardizer": model.standardizer.to_dict() if model.standardizer else None,
        "params": model.params_to_dict(),
    }
    Path(path).write_text(json.dumps(doc) + "\n", encoding="utf-8")


def load_model(path: str | Path) -> TrainedModel:
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    version = doc.get("schema_version")
    if version != MODEL_SCHEMA_VERSION:
        raise SchemaVersionError(
            f"{path}: model schema {version!r}, this build reads {MODEL_SCHEMA_VERSION}")
    algo = doc["algo"]
    hp = doc["hyperparams"]
    seed = doc["train_seed"]
    std = Standardizer.from_dict(doc["standardizer"]) if doc["standardizer"] else None
    p = doc["params"]
    if algo == "dt":
        return DecisionTreeModel(Tree.from_dict(p["tree"]), hp, seed)
    if algo == "rf":
        return RandomForestModel([Tree.from_dict(t) for t in p["trees"]], hp, seed)
    if algo == "knn":
        return KNNModel(np.array(p["train_X"], dtype=np.float64),
                        np.array(p["train_y"], dtype=np.int64), hp, std, seed)
    if algo == "svm":
        return SVMModel(np.array(p["w"]), float(p["b"]), hp, std, seed)
    if algo == "lr":
        return LRModel(np.array(p["w"]), float(p["b"]), hp, std, seed)
    if algo == "nb":
        return NBModel(np.array(p["priors"]), np.array(p["means"]),
                       np.array(p["variances"]), hp, seed)
    raise ValidationError(f"{path}: unknown algorithm {algo!r}")
