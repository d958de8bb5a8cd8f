from typing import Any, Dict

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from ..io_utils import ResponseKind
from ..utils.errors import ArgumentError, CvbenchError, LearnerError
from ..utils.logger import app_logger
from .base_learner import Learner
from .defaults import BUILTIN_METHODS, PARAM_RANGES, _check_value
from .forest import RandomForestLearner
from .knn import KNNLearner
from .ridge import RidgeLearner
from .tree import RegressionTree

# methods whose scores are means of 0/1 responses, drawn as solid lines with markers
CLASSIFICATION_FITS = frozenset({"KNN", "Tree", "RF", "NNet", "PLSLDA", "RPart", "SVM"})


class MethodSpec(BaseModel):
    """A built-in method with its full, validated parameter map."""
    model_config = ConfigDict(frozen=True)

    method: str
    params: Dict[str, Any]
    task: ResponseKind

    @model_validator(mode='after')
    def validate_params(self):
        if self.method not in BUILTIN_METHODS:
            raise ValueError(f"method must be one of {list(BUILTIN_METHODS)}, got '{self.method}'")
        expected = set(PARAM_RANGES[self.method])
        if set(self.params) != expected:
            raise ValueError(f"{self.method} params must be exactly {sorted(expected)}, "
                             f"got {sorted(self.params)}")
        for name, value in self.params.items():
            _check_value(self.method, name, value)
        return self


def is_classification_fit(method: str) -> bool:
    return method in CLASSIFICATION_FITS


def make_learner(spec: MethodSpec, task_seed: int) -> Learner:
    params = spec.params
    if spec.method == "KNN":
        return KNNLearner(k=params["k"])
    if spec.method == "Ridge":
        return RidgeLearner(lam=params["lambda"])
    if spec.method == "Tree":
        return RegressionTree(max_depth=params["max_depth"], min_leaf=params["min_leaf"])
    return RandomForestLearner(n_trees=params["n_trees"], mtry=params["mtry"],
                               min_leaf=params["min_leaf"], seed=task_seed)


def fit_predict(spec: MethodSpec, train_x, train_y, test_x, task_seed: int,
                return_raw: bool = False):
    """
    Fit one built-in method and predict the test rows.

    Binary tasks get scores in [0, 1]: KNN, Tree and RF average 0/1
    responses, Ridge output is clamped.

    Args:
        spec: Method, parameters and task kind
        train_x: Training descriptors (n_train, p)
        train_y: Training response (n_train,)
        test_x: Test descriptors (n_test, p)
        task_seed: Seed for learners with internal randomness (RF)
        return_raw: Also return the unclamped predictions

    Returns:
        np.ndarray: Predictions, one per test row; with ``return_raw`` a
        (predictions, raw predictions) pair, equal unless clamping applied
    """
    train_x = np.asarray(train_x, dtype=float)
    train_y = np.asarray(train_y, dtype=float)
    test_x = np.asarray(test_x, dtype=float)
    context = {"module": "learners", "operation": "fit_predict", "method": spec.method}
    if train_x.ndim != 2 or train_x.shape[0] != train_y.shape[0]:
        raise ArgumentError("train_x rows must match train_y length", context)
    if test_x.ndim != 2 or test_x.shape[1] != train_x.shape[1]:
        raise ArgumentError("train_x and test_x must have the same number of columns", context)
    if test_x.shape[0] == 0:
        return (np.empty(0), np.empty(0)) if return_raw else np.empty(0)

    learner = make_learner(spec, task_seed)
    try:
        predictions = learner.fit(train_x, train_y).predict(test_x)
    except CvbenchError:
        raise
    except Exception as e:
        app_logger.error(f"{spec.method} failed: {str(e)}")
        raise LearnerError(f"{spec.method} failed: {e}", context) from e

    raw = np.asarray(predictions, dtype=float)
    if spec.task is ResponseKind.BINARY and spec.method == "Ridge":
        predictions = np.clip(raw, 0.0, 1.0)
    else:
        predictions = raw
    return (predictions, raw) if return_raw else predictions


def binarize(scores, threshold: float = 0.5) -> np.ndarray:
    """Label 1 where score >= threshold, else 0."""
    return (np.asarray(scores, dtype=float) >= threshold).astype(int)
