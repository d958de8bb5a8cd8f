import numpy as np

from ..utils.errors import NumericError
from .base_learner import Learner
from .preprocessing import standardize


class RidgeLearner(Learner):
    """
    Ridge regression on standardized descriptors with an unpenalized
    intercept: beta = argmin ||y - ybar - Xs beta||^2 + lambda ||beta||^2,
    prediction = ybar + Xs_test beta.
    """

    name = "Ridge"

    def __init__(self, lam: float = 1.0):
        self.lam = float(lam)

    def fit(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        self._train = x
        scaled = standardize(x, x[:0])
        xs = scaled.train
        self.intercept_ = float(y.mean())
        yc = y - self.intercept_

        p = xs.shape[1]
        gram = xs.T @ xs + self.lam * np.eye(p)
        context = {"module": "learners", "operation": "fit_predict", "method": self.name}
        if self.lam == 0 and np.linalg.matrix_rank(xs) < p:
            raise NumericError("Ridge system is singular with lambda=0; use lambda > 0", context)
        try:
            self.coef_ = np.linalg.solve(gram, xs.T @ yc)
        except np.linalg.LinAlgError as e:
            raise NumericError(f"Ridge system could not be solved ({e}); use lambda > 0",
                               context) from e
        return self

    def predict(self, x):
        x = np.asarray(x, dtype=float)
        if x.shape[0] == 0:
            return np.empty(0)
        xs = standardize(self._train, x).test
        return self.intercept_ + xs @ self.coef_
