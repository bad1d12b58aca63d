import numpy as np
import pytest

from proxauth.dataset import Dataset
from proxauth.errors import ConfigError
from proxauth.mlcore import train, train_arrays
from proxauth.mlcore.neighbors import knn_predict, knn_votes, nearest_indices

TOY = Dataset([
    [0, 0, 0, 0, 0, 0],
    [1, 1, 1, 1, 1, 1],
])


def exhaustive_predict(train_X, train_y, query, k):
    """Reference scan: sort every training row by (distance, index), take k,
    majority vote with ties denying."""
    ranked = sorted(
        (float(np.sum((row - query) ** 2)), i) for i, row in enumerate(train_X))
    votes = sum(int(train_y[i]) for _, i in ranked[:k])
    return 1 if 2 * votes > k else 0


def test_matches_exhaustive_scan(rng):
    train_X = rng.integers(-3, 4, size=(200, 5)).astype(np.float64)
    train_y = rng.integers(0, 2, size=200)
    queries = rng.integers(-3, 4, size=(50, 5)).astype(np.float64)
    for k in (1, 3, 5, 7):
        got = knn_predict(train_X, train_y, queries, k)
        want = [exhaustive_predict(train_X, train_y, q, k) for q in queries]
        assert got.tolist() == want, f"k={k}"


def test_nearest_single_neighbor():
    model = train("knn", TOY, hyperparams={"k": 1})
    assert model.predict([0.1, 0, 0, 0, 0]) == 0
    assert model.predict([0.9, 1, 1, 1, 1]) == 1


def test_equidistant_vote_denies():
    model = train("knn", TOY, hyperparams={"k": 2})
    # dead centre of the two training rows: one vote each, tie fails closed
    assert model.predict([0.5, 0.5, 0.5, 0.5, 0.5]) == 0


def test_distance_ties_resolve_to_lower_index():
    train_X = np.array([[1.0, 0.0], [0.0, 1.0], [1.0, 0.0]])
    idx = nearest_indices(train_X, np.array([[0.0, 0.0]]), k=3)
    assert idx[0].tolist() == [0, 1, 2]  # rows 0 and 2 tie; 0 first


def test_votes_count_positive_neighbors():
    train_y = np.array([1, 0, 1, 1])
    idx = np.array([[0, 1], [2, 3]])
    assert knn_votes(train_y, idx).tolist() == [1, 2]


def test_chunked_prediction_is_seamless(rng):
    train_X = rng.normal(size=(60, 5))
    train_y = rng.integers(0, 2, size=60)
    queries = rng.normal(size=(100, 5))
    whole = knn_predict(train_X, train_y, queries, 5, chunk=512)
    pieces = knn_predict(train_X, train_y, queries, 5, chunk=7)
    assert np.array_equal(whole, pieces)


def test_k_must_fit_the_training_set(rng):
    X = rng.normal(size=(10, 5))
    y = np.array([0, 1] * 5)
    with pytest.raises(ConfigError):
        train_arrays("knn", X, y, hyperparams={"k": 0})
    with pytest.raises(ConfigError):
        train_arrays("knn", X, y, hyperparams={"k": 11})


def test_standardization_shapes_the_neighborhood():
    # Frequency dwarfs the other columns raw; a nearby-in-RSSI query must
    # still find its neighbor once columns are scaled.
    rows = [
        [1, 1, 2412, -40, 1, 1],
        [1, 2, 2462, -90, 2, 0],
        [1, 1, 2412, -42, 1, 1],
        [1, 2, 2462, -88, 2, 0],
    ]
    model = train("knn", Dataset(rows), hyperparams={"k": 1})
    assert model.predict([1, 1, 2412, -41, 1]) == 1
    assert model.predict([1, 2, 2462, -89, 2]) == 0
