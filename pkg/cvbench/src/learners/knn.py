import numpy as np

from ..utils.errors import ArgumentError
from .base_learner import Learner
from .preprocessing import standardize


class KNNLearner(Learner):
    """
    k-nearest-neighbour regression: the mean response of the k closest
    training rows under Euclidean distance on standardized descriptors.
    Distance ties keep the lower training row first.
    """

    name = "KNN"
    # float64 cells per distance block
    _block_cells = 1 << 19

    def __init__(self, k: int = 10):
        self.k = int(k)

    def fit(self, x, y):
        x = np.asarray(x, dtype=float)
        if self.k < 1 or self.k > x.shape[0]:
            raise ArgumentError(f"KNN k={self.k} must lie in 1..{x.shape[0]} (training rows)",
                                {"module": "learners", "operation": "fit_predict",
                                 "method": self.name})
        self._x = x
        self._y = np.asarray(y, dtype=float)
        return self

    def predict(self, x):
        x = np.asarray(x, dtype=float)
        if x.shape[0] == 0:
            return np.empty(0)
        scaled = standardize(self._x, x)
        train, test = scaled.train, scaled.test

        train_sq = np.einsum("ij,ij->i", train, train)
        chunk = max(1, self._block_cells // max(1, train.shape[0]))
        out = np.empty(test.shape[0])
        for start in range(0, test.shape[0], chunk):
            block = test[start:start + chunk]
            block_sq = np.einsum("ij,ij->i", block, block)
            distances = block_sq[:, None] + train_sq[None, :] - 2.0 * (block @ train.T)
            np.maximum(distances, 0.0, out=distances)
            nearest = np.argsort(distances, axis=1, kind="stable")[:, :self.k]
            out[start:start + len(block)] = self._y[nearest].mean(axis=1)
        return out
