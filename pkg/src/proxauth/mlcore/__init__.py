"""Six from-scratch classifiers plus splitting, metrics and benchmarks."""

from .bench import benchmark_inference, benchmark_table
from .importance import ImportanceVector, feature_importance, mutual_information
from .io import MODEL_SCHEMA_VERSION, load_model, save_model
from .metrics import ConfusionMatrix, Metrics, evaluate, metrics_from_cm
from .preprocessing import Standardizer, canonical_order, stratified_kfold, train_test_split
from .train import (
    ALGORITHMS,
    DEFAULT_HYPERPARAMS,
    TrainedModel,
    predict,
    train,
    train_all,
    train_arrays,
)

__all__ = [
    "ALGORITHMS", "DEFAULT_HYPERPARAMS", "MODEL_SCHEMA_VERSION",
    "ConfusionMatrix", "ImportanceVector", "Metrics", "Standardizer",
    "TrainedModel", "benchmark_inference", "benchmark_table",
    "canonical_order", "evaluate", "feature_importance", "load_model",
    "metrics_from_cm", "mutual_information", "predict", "save_model",
    "stratified_kfold", "train", "train_all", "train_arrays",
    "train_test_split",
]
