"""Gaussian naive Bayes over raw feature columns."""

from __future__ import annotations

import math

import numpy as np

VARIANCE_FLOOR = 1e-9


def fit_gaussians(X: np.ndarray, y: np.ndarray,
                  var_floor: float = VARIANCE_FLOOR):
    """Per-class priors, feature means and floored variances.

    Returns (priors, means, variances), each indexed [class][feature] with
    classes in order (0, 1).
    """
    X = np.asarray(X, dtype=np.float64)
    n = len(y)
    priors, means, variances = [], [], []
    for c in (0, 1):
        rows = X[np.asarray(y) == c]
        priors.append(len(rows) / n)
        means.append(rows.mean(axis=0))
        variances.append(np.maximum(rows.var(axis=0), var_floor))
    return (np.array(priors), np.vstack(means), np.vstack(variances))


def log_joint(priors: np.ndarray, means: np.ndarray, variances: np.ndarray,
              X: np.ndarray) -> np.ndarray:
    """log p(class) + sum_f log N(x_f; mean, var), shape (n_rows, 2)."""
    X = np.atleast_2d(np.asarray(X, dtype=np.float64))
    out = np.empty((len(X), 2))
    for c in (0, 1):
        delta = X - means[c]
        per_feature = -0.5 * (np.log(2.0 * math.pi * variances[c])
                              + delta * delta / variances[c])
        out[:, c] = math.log(priors[c]) + per_feature.sum(axis=1)
    return out


def posterior_positive(priors, means, variances, X) -> np.ndarray:
    """P(label=1 | x) computed in log space for numerical safety."""
    lj = log_joint(priors, means, variances, X)
    shift = lj.max(axis=1, keepdims=True)
    expd = np.exp(lj - shift)
    return expd[:, 1] / expd.sum(axis=1)


def nb_predict(priors, means, variances, X) -> np.ndarray:
    """Higher joint wins; an exact tie denies (label 0)."""
    lj = log_joint(priors, means, variances, X)
    return (lj[:, 1] > lj[:, 0]).astype(np.int64)
