"""CART decision trees and bagged forests, grown with Gini impurity.

Trees are stored as parallel arrays (feature, threshold, child pointers,
leaf label) so batch prediction walks all rows one depth level at a time
instead of one row at a time.
"""

from __future__ import annotations

import numpy as np

from ..errors import ShapeError
from .preprocessing import canonical_order

_MIN_DECREASE = 1e-12


def gini(counts: np.ndarray) -> float:
    n = counts.sum()
    if n == 0:
        return 0.0
    p = counts / n
    return float(1.0 - np.sum(p * p))


def _best_split_on_feature(values: np.ndarray, y: np.ndarray, min_leaf: int,
                           parent_gini: float) -> tuple[float, float] | None:
    """(impurity decrease, threshold) of the best midpoint split, or None."""
    order = np.argsort(values, kind="stable")
    sv = values[order]
    sy = y[order]
    n = len(sv)
    boundaries = np.flatnonzero(sv[:-1] != sv[1:])  # split between i and i+1
    if len(boundaries) == 0:
        return None
    nl = boundaries + 1
    nr = n - nl
    keep = (nl >= min_leaf) & (nr >= min_leaf)
    if not keep.any():
        return None
    boundaries, nl, nr = boundaries[keep], nl[keep], nr[keep]
    ones = np.cumsum(sy)[boundaries]
    l1 = ones
    l0 = nl - l1
    r1 = sy.sum() - l1
    r0 = nr - r1
    gini_l = 1.0 - (l0 / nl) ** 2 - (l1 / nl) ** 2
    gini_r = 1.0 - (r0 / nr) ** 2 - (r1 / nr) ** 2
    decrease = parent_gini - (nl * gini_l + nr * gini_r) / n
    best = int(np.argmax(decrease))  # first max = smallest threshold
    if decrease[best] <= _MIN_DECREASE:
        return None
    threshold = 0.5 * (sv[boundaries[best]] + sv[boundaries[best] + 1])
    return float(decrease[best]), float(threshold)


class _TreeBuilder:
    """Grows one tree; collects nodes and per-feature impurity decrease."""

    def __init__(self, X: np.ndarray, y: np.ndarray, max_depth: int,
                 min_leaf: int, n_sub_features: int | None,
                 rng: np.random.Generator | None):
        self.X = X
        self.y = y
        self.max_depth = max_depth
        self.min_leaf = min_leaf
        self.n_sub = n_sub_features
        self.rng = rng
        self.feature: list[int] = []
        self.threshold: list[float] = []
        self.left: list[int] = []
        self.right: list[int] = []
        self.leaf_label: list[int] = []
        self.leaf_share: list[float] = []
        self.importance = np.zeros(X.shape[1])
        self.n_root = len(y)

    def _leaf(self, y: np.ndarray) -> int:
        ones = int(y.sum())
        zeros = len(y) - ones
        node = len(self.feature)
        self.feature.append(-1)
        self.threshold.append(0.0)
        self.left.append(-1)
        self.right.append(-1)
        self.leaf_label.append(1 if ones > zeros else 0)  # tie denies
        self.leaf_share.append(ones / len(y))
        return node

    def _candidate_features(self) -> np.ndarray:
        n_all = self.X.shape[1]
        if self.n_sub is None or self.n_sub >= n_all:
            return np.arange(n_all)
        return np.sort(self.rng.choice(n_all, size=self.n_sub, replace=False))

    def build(self, idx: np.ndarray, depth: int) -> int:
        y = self.y[idx]
        ones = int(y.sum())
        if depth >= self.max_depth or len(idx) < 2 * self.min_leaf \
                or ones == 0 or ones == len(idx):
            return self._leaf(y)
        parent = gini(np.array([len(idx) - ones, ones]))
        best = None  # (decrease, feature, threshold)
        for f in self._candidate_features():
            found = _best_split_on_feature(self.X[idx, f], y, self.min_leaf, parent)
            if found and (best is None or found[0] > best[0] + _MIN_DECREASE):
                best = (found[0], int(f), found[1])
        if best is None:
            return self._leaf(y)
        decrease, f, thr = best
        self.importance[f] += (len(idx) / self.n_root) * decrease
        node = len(self.feature)
        self.feature.append(f)
        self.threshold.append(thr)
        self.left.append(-1)
        self.right.append(-1)
        self.leaf_label.append(-1)
        self.leaf_share.append(0.0)
        mask = self.X[idx, f] <= thr
        self.left[node] = self.build(idx[mask], depth + 1)
        self.right[node] = self.build(idx[~mask], depth + 1)
        return node

    def compiled(self) -> "Tree":
        return Tree(np.array(self.feature, dtype=np.int64),
                    np.array(self.threshold, dtype=np.float64),
                    np.array(self.left, dtype=np.int64),
                    np.array(self.right, dtype=np.int64),
                    np.array(self.leaf_label, dtype=np.int64),
                    np.array(self.leaf_share, dtype=np.float64),
                    self.importance)


class Tree:
    """A compiled tree: parallel node arrays plus raw importance mass."""

    def __init__(self, feature, threshold, left, right, leaf_label, leaf_share,
                 importance):
        self.feature = feature
        self.threshold = threshold
        self.left = left
        self.right = right
        self.leaf_label = leaf_label
        self.leaf_share = leaf_share
        self.importance = importance

    def descend(self, X: np.ndarray) -> np.ndarray:
        """Leaf index reached by every row of X (the root is node 0)."""
        node = np.zeros(len(X), dtype=np.int64)
        internal = np.flatnonzero(self.feature[node] >= 0)
        while internal.size:
            at = node[internal]
            go_left = X[internal, self.feature[at]] <= self.threshold[at]
            node[internal] = np.where(go_left, self.left[at], self.right[at])
            internal = internal[self.feature[node[internal]] >= 0]
        return node

    def predict(self, X: np.ndarray) -> np.ndarray:
        return self.leaf_label[self.descend(X)]

    def positive_share(self, X: np.ndarray) -> np.ndarray:
        return self.leaf_share[self.descend(X)]

    def to_dict(self) -> dict:
        return {
            "feature": self.feature.tolist(),
            "threshold": self.threshold.tolist(),
            "left": self.left.tolist(),
            "right": self.right.tolist(),
            "leaf_label": self.leaf_label.tolist(),
            "leaf_share": self.leaf_share.tolist(),
            "importance": self.importance.tolist(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Tree":
        return cls(np.array(d["feature"], dtype=np.int64),
                   np.array(d["threshold"], dtype=np.float64),
                   np.array(d["left"], dtype=np.int64),
                   np.array(d["right"], dtype=np.int64),
                   np.array(d["leaf_label"], dtype=np.int64),
                   np.array(d["leaf_share"], dtype=np.float64),
                   np.array(d["importance"], dtype=np.float64))


def grow_tree(X: np.ndarray, y: np.ndarray, max_depth: int, min_leaf: int,
              n_sub_features: int | None = None,
              rng: np.random.Generator | None = None,
              presorted: bool = False) -> Tree:
    """Grow one CART tree. Rows are canonically ordered first so the result
    does not depend on the order the caller stored them in."""
    if X.ndim != 2:
        raise ShapeError(f"expected a 2-D feature matrix, got shape {X.shape}")
    if not presorted:
        order = canonical_order(X, y)
        X, y = X[order], y[order]
    builder = _TreeBuilder(X, y, max_depth, min_leaf, n_sub_features, rng)
    builder.build(np.arange(len(y)), depth=0)
    return builder.compiled()
