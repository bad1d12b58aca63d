"""k-nearest-neighbor classification over the standardized training set."""

from __future__ import annotations

import numpy as np


def nearest_indices(train_X: np.ndarray, queries: np.ndarray, k: int) -> np.ndarray:
    """Indices of the k nearest training rows per query (n_queries x k).

    Euclidean distance; equal distances resolve to the lower training-set
    index (stable sort over the squared-distance matrix).
    """
    diff = queries[:, None, :] - train_X[None, :, :]
    d2 = np.einsum("qnf,qnf->qn", diff, diff)
    order = np.argsort(d2, axis=1, kind="stable")
    return order[:, :k]


def knn_votes(train_y: np.ndarray, neighbor_idx: np.ndarray) -> np.ndarray:
    """Positive-vote count among each query's neighbors."""
    return train_y[neighbor_idx].sum(axis=1)


def knn_predict(train_X: np.ndarray, train_y: np.ndarray, queries: np.ndarray,
                k: int, chunk: int = 512) -> np.ndarray:
    """Majority label of the k nearest neighbors; vote ties deny (label 0)."""
    out = np.empty(len(queries), dtype=np.int64)
    for start in range(0, len(queries), chunk):
        block = queries[start:start + chunk]
        votes = knn_votes(train_y, nearest_indices(train_X, block, k))
        out[start:start + chunk] = (2 * votes > k).astype(np.int64)
    return out
