"""Linear models: logistic regression and a linear soft-margin classifier.

Both train by deterministic gradient methods over canonically ordered
rows, so shuffling the training set leaves the fitted weights untouched.
The loss and gradient functions live at module level; tests difference
them numerically against the training updates.
"""

from __future__ import annotations

import numpy as np

from .preprocessing import canonical_order


def _signs(y: np.ndarray) -> np.ndarray:
    return 2.0 * np.asarray(y, dtype=np.float64) - 1.0


# ---- logistic regression ----------------------------------------------------

def logistic_loss(w: np.ndarray, b: float, X: np.ndarray, y: np.ndarray,
                  l2: float) -> float:
    """Mean log-loss plus l2/2 * ||w||^2; the bias is not penalized."""
    z = X @ w + b
    s = _signs(y)
    per_row = np.logaddexp(0.0, -s * z)
    return float(per_row.mean() + 0.5 * l2 * np.dot(w, w))


def logistic_gradient(w: np.ndarray, b: float, X: np.ndarray, y: np.ndarray,
                      l2: float) -> tuple[np.ndarray, float]:
    z = X @ w + b
    p = 1.0 / (1.0 + np.exp(-z))
    residual = p - y
    grad_w = X.T @ residual / len(y) + l2 * w
    grad_b = float(residual.mean())
    return grad_w, grad_b


def fit_logistic(X: np.ndarray, y: np.ndarray, step: float = 0.1,
                 epochs: int = 500, l2: float = 1e-4) -> tuple[np.ndarray, float]:
    """Batch gradient descent from zero weights."""
    order = canonical_order(X, y)
    X, y = X[order], np.asarray(y, dtype=np.float64)[order]
    w = np.zeros(X.shape[1])
    b = 0.0
    for _ in range(epochs):
        grad_w, grad_b = logistic_gradient(w, b, X, y, l2)
        w = w - step * grad_w
        b = b - step * grad_b
    return w, b


def sigmoid(z):
    return 1.0 / (1.0 + np.exp(-np.asarray(z, dtype=np.float64)))


# ---- linear soft margin -----------------------------------------------------

def hinge_loss(w: np.ndarray, b: float, X: np.ndarray, y: np.ndarray,
               lam: float) -> float:
    """Mean hinge loss plus lam/2 * ||w||^2; the bias is not penalized."""
    margins = _signs(y) * (X @ w + b)
    return float(np.maximum(0.0, 1.0 - margins).mean() + 0.5 * lam * np.dot(w, w))


def hinge_subgradient(w: np.ndarray, b: float, X: np.ndarray, y: np.ndarray,
                      lam: float) -> tuple[np.ndarray, float]:
    """Batch subgradient of hinge_loss (any subgradient at the kinks)."""
    s = _signs(y)
    violating = s * (X @ w + b) < 1.0
    grad_w = lam * w - (s[violating, None] * X[violating]).sum(axis=0) / len(y)
    grad_b = -float(s[violating].sum()) / len(y)
    return grad_w, grad_b


def fit_linear_svm(X: np.ndarray, y: np.ndarray, lam: float = 1e-3,
                   epochs: int = 200) -> tuple[np.ndarray, float]:
    """Epoch-ordered per-sample subgradient descent with step 1/(lam * t).

    t counts individual updates across all epochs; rows are visited in
    canonical order every epoch, which keeps training order-independent.
    The unpenalized bias moves on its own 1/t schedule: the weight step
    1/(lam * t) is sized against the shrink factor and would let the very
    first updates throw the bias to ~1/lam with no force pulling it back.
    """
    order = canonical_order(X, y)
    rows = [tuple(r) for r in X[order]]
    signs = _signs(np.asarray(y)[order]).tolist()
    dim = X.shape[1]
    w = [0.0] * dim
    b = 0.0
    t = 0
    for _ in range(epochs):
        for x, s in zip(rows, signs):
            t += 1
            eta = 1.0 / (lam * t)
            keep = 1.0 - 1.0 / t
            z = b
            for j in range(dim):
                z += w[j] * x[j]
            if s * z < 1.0:
                push = eta * s
                for j in range(dim):
                    w[j] = keep * w[j] + push * x[j]
                b += s / t
            else:
                for j in range(dim):
                    w[j] = keep * w[j]
    return np.array(w), b
