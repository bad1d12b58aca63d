import numpy as np
import pytest

from proxauth.mlcore.linear import (
    fit_linear_svm,
    fit_logistic,
    hinge_loss,
    hinge_subgradient,
    logistic_gradient,
    logistic_loss,
    sigmoid,
)

EPS = 1e-6


def numeric_gradient(loss, w, b, X, y, reg):
    """Central finite differences of a loss in every weight and the bias."""
    grad_w = np.empty_like(w)
    for j in range(len(w)):
        up, down = w.copy(), w.copy()
        up[j] += EPS
        down[j] -= EPS
        grad_w[j] = (loss(up, b, X, y, reg) - loss(down, b, X, y, reg)) / (2 * EPS)
    grad_b = (loss(w, b + EPS, X, y, reg) - loss(w, b - EPS, X, y, reg)) / (2 * EPS)
    return grad_w, grad_b


def relative_error(got, want):
    scale = max(np.linalg.norm(want), 1e-8)
    return np.linalg.norm(np.asarray(got) - np.asarray(want)) / scale


def test_logistic_gradient_matches_finite_differences(rng):
    X = rng.normal(size=(30, 5))
    y = rng.integers(0, 2, size=30).astype(np.float64)
    for _ in range(10):
        w = rng.normal(scale=0.8, size=5)
        b = float(rng.normal())
        got_w, got_b = logistic_gradient(w, b, X, y, l2=1e-3)
        num_w, num_b = numeric_gradient(logistic_loss, w, b, X, y, 1e-3)
        assert relative_error(got_w, num_w) < 1e-4
        assert relative_error([got_b], [num_b]) < 1e-4


def test_hinge_subgradient_matches_finite_differences(rng):
    X = rng.normal(size=(30, 5))
    y = rng.integers(0, 2, size=30).astype(np.float64)
    checked = 0
    while checked < 10:
        w = rng.normal(scale=0.8, size=5)
        b = float(rng.normal())
        margins = (2.0 * y - 1.0) * (X @ w + b)
        if np.min(np.abs(margins - 1.0)) < 1e-3:
            continue  # too close to a kink for differencing
        got_w, got_b = hinge_subgradient(w, b, X, y, lam=1e-3)
        num_w, num_b = numeric_gradient(hinge_loss, w, b, X, y, 1e-3)
        assert relative_error(got_w, num_w) < 1e-4
        assert relative_error([got_b], [num_b]) < 1e-4
        checked += 1


def test_logistic_loss_decreases_on_two_points():
    X = np.array([[-1.0, 0.0], [1.0, 0.0]])
    y = np.array([0.0, 1.0])
    w = np.zeros(2)
    b = 0.0
    losses = [logistic_loss(w, b, X, y, l2=0.0)]
    for _ in range(200):
        grad_w, grad_b = logistic_gradient(w, b, X, y, l2=0.0)
        w = w - 0.1 * grad_w
        b = b - 0.1 * grad_b
        losses.append(logistic_loss(w, b, X, y, l2=0.0))
    assert all(b < a for a, b in zip(losses, losses[1:]))
    assert losses[-1] < 0.1


def test_fit_logistic_separates_when_possible(rng):
    X = np.vstack([rng.normal(-3, 0.5, size=(40, 3)),
                   rng.normal(3, 0.5, size=(40, 3))])
    y = np.array([0] * 40 + [1] * 40)
    w, b = fit_logistic(X, y)
    assert np.array_equal((X @ w + b > 0).astype(int), y)


def test_fit_svm_separates_when_possible(rng):
    X = np.vstack([rng.normal(-3, 0.5, size=(40, 3)),
                   rng.normal(3, 0.5, size=(40, 3))])
    y = np.array([0] * 40 + [1] * 40)
    w, b = fit_linear_svm(X, y)
    assert np.array_equal((X @ w + b > 0).astype(int), y)


@pytest.mark.parametrize("fit", [fit_logistic, fit_linear_svm])
def test_fits_ignore_row_order(fit, rng):
    X = rng.integers(-4, 5, size=(50, 4)).astype(np.float64)
    y = rng.integers(0, 2, size=50)
    w, b = fit(X, y)
    for _ in range(3):
        perm = rng.permutation(50)
        w2, b2 = fit(X[perm], y[perm])
        assert np.array_equal(w, w2) and b == b2


def test_sigmoid_midpoint_and_limits():
    assert sigmoid(0.0) == 0.5
    assert sigmoid(50.0) == pytest.approx(1.0)
    out = sigmoid(np.array([-50.0, 0.0, 50.0]))
    assert np.all((out >= 0.0) & (out <= 1.0))
