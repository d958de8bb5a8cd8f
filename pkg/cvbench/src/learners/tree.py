from typing import Optional

import numpy as np

from .base_learner import Learner


class RegressionTree(Learner):
    """
    CART-style binary tree grown by greedy squared-error (variance)
    reduction. Used for both task kinds: a 0/1 response is treated as
    continuous, so leaf means are in [0, 1].

    Rows go left when x[feature] <= threshold; thresholds are midpoints
    between adjacent distinct training values. A node becomes a leaf when
    it is pure, at max_depth, smaller than 2 * min_leaf, or when no split
    lowers the squared error.
    """

    name = "Tree"

    def __init__(self, max_depth: int = 30, min_leaf: int = 5,
                 mtry: Optional[int] = None, rng: Optional[np.random.Generator] = None):
        self.max_depth = int(max_depth)
        self.min_leaf = int(min_leaf)
        self.mtry = mtry
        self._rng = rng

    def fit(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        self._feature = []
        self._threshold = []
        self._left = []
        self._right = []
        self._value = []
        self._grow(x, y, np.arange(len(y)), depth=0)

        self.feature_ = np.array(self._feature, dtype=int)
        self.threshold_ = np.array(self._threshold, dtype=float)
        self.left_ = np.array(self._left, dtype=int)
        self.right_ = np.array(self._right, dtype=int)
        self.value_ = np.array(self._value, dtype=float)
        return self

    @property
    def n_leaves(self) -> int:
        return int(np.sum(self.feature_ < 0))

    def _new_node(self, value: float) -> int:
        self._feature.append(-1)
        self._threshold.append(0.0)
        self._left.append(-1)
        self._right.append(-1)
        self._value.append(value)
        return len(self._value) - 1

    def _candidate_features(self, p: int) -> np.ndarray:
        if self.mtry is None or self.mtry >= p or self._rng is None:
            return np.arange(p)
        return np.sort(self._rng.choice(p, size=self.mtry, replace=False))

    def _grow(self, x, y, idx, depth):
        y_node = y[idx]
        node = self._new_node(float(y_node.mean()))
        if depth >= self.max_depth or len(idx) < 2 * self.min_leaf or np.all(y_node == y_node[0]):
            return node

        split = self._best_split(x, y_node, idx)
        if split is None:
            return node
        feature, threshold = split
        goes_left = x[idx, feature] <= threshold

        self._feature[node] = feature
        self._threshold[node] = threshold
        left = self._grow(x, y, idx[goes_left], depth + 1)
        right = self._grow(x, y, idx[~goes_left], depth + 1)
        self._left[node] = left
        self._right[node] = right
        return node

    def _best_split(self, x, y_node, idx):
        m = len(idx)
        features = self._candidate_features(x.shape[1])
        xs = x[np.ix_(idx, features)]
        order = np.argsort(xs, axis=0, kind="stable")
        xs = np.take_along_axis(xs, order, axis=0)
        ys = y_node[order]

        csum = np.cumsum(ys, axis=0)[:-1]
        csum2 = np.cumsum(ys * ys, axis=0)[:-1]
        total, total2 = y_node.sum(), float(np.sum(y_node * y_node))
        n_left = np.arange(1, m)[:, None]
        n_right = m - n_left
        sse = (csum2 - csum ** 2 / n_left) + ((total2 - csum2) - (total - csum) ** 2 / n_right)

        valid = (xs[:-1] < xs[1:]) & (n_left >= self.min_leaf) & (n_right >= self.min_leaf)
        if not valid.any():
            return None
        sse = np.where(valid, sse, np.inf)

        # feature-major argmin: lowest feature index wins ties, then lowest position
        flat = int(np.argmin(sse.T))
        f_pos, row = divmod(flat, m - 1)
        parent_sse = float(np.sum((y_node - y_node.mean()) ** 2))
        if not sse[row, f_pos] < parent_sse - 1e-12 * max(parent_sse, 1.0):
            return None

        lo, hi = xs[row, f_pos], xs[row + 1, f_pos]
        threshold = (lo + hi) / 2.0
        if not lo <= threshold < hi:
            threshold = lo
        return int(features[f_pos]), float(threshold)

    def predict(self, x):
        x = np.asarray(x, dtype=float)
        nodes = np.zeros(x.shape[0], dtype=int)
        rows = np.arange(x.shape[0])
        active = self.feature_[nodes] >= 0
        while active.any():
            r = rows[active]
            current = nodes[r]
            go_left = x[r, self.feature_[current]] <= self.threshold_[current]
            nodes[r] = np.where(go_left, self.left_[current], self.right_[current])
            active = self.feature_[nodes] >= 0
        return self.value_[nodes]
