"""Inference timing: how long a model takes to classify a batch."""

from __future__ import annotations

import time

import numpy as np

from ..errors import ConfigError, EmptyInputError
from .train import TrainedModel


def benchmark_inference(model: TrainedModel, batch: np.ndarray,
                        repetitions: int = 5) -> float:
    """Median wall-clock seconds to predict the full batch."""
    if repetitions < 1:
        raise ConfigError("repetitions must be at least 1")
    batch = np.asarray(batch, dtype=np.float64)
    if batch.size == 0:
        raise EmptyInputError("cannot benchmark on an empty batch")
    times = []
    for _ in range(repetitions):
        start = time.perf_counter()
        model.predict_many(batch)
        times.append(time.perf_counter() - start)
    return float(np.median(times))


def benchmark_table(models: dict[str, TrainedModel], batch: np.ndarray,
                    repetitions: int = 5) -> list[dict]:
    """One timing row per model, fastest first."""
    rows = [{"model": algo,
             "batch_rows": int(len(batch)),
             "seconds": benchmark_inference(m, batch, repetitions)}
            for algo, m in models.items()]
    return sorted(rows, key=lambda r: r["seconds"])
