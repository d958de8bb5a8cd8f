"""
Learner interface for cvbench.

Every built-in method implements this interface; the cross-validation
driver only ever talks to ``fit`` and ``predict``. Learners are created
fresh for every (split, descriptor set, method, fold) task, so they may
keep fitted state on ``self``.
"""

from abc import ABC, abstractmethod
from typing import Any, Dict

import numpy as np


class Learner(ABC):
    """
    Base class for all built-in learners.

    Example implementation:
    ```python
    class MeanLearner(Learner):
        name = "Mean"

        def fit(self, x, y):
            self.mean_ = float(np.mean(y))
            return self

        def predict(self, x):
            return np.full(len(x), self.mean_)
    ```
    """

    name = "Learner"

    @abstractmethod
    def fit(self, x: np.ndarray, y: np.ndarray) -> 'Learner':
        """
        Fit the learner.

        Args:
            x: Training descriptors, shape (n_train, p)
            y: Training response, shape (n_train,)

        Returns:
            The fitted learner
        """

    @abstractmethod
    def predict(self, x: np.ndarray) -> np.ndarray:
        """
        Predict for new rows.

        Args:
            x: Descriptors, shape (n_test, p)

        Returns:
            np.ndarray: Predictions, shape (n_test,)
        """

    def get_metadata(self) -> Dict[str, Any]:
        """Learner name and its public (non-fitted) parameters."""
        params = {k: v for k, v in vars(self).items()
                  if not k.startswith('_') and not k.endswith('_')}
        return {"name": self.name, "params": params}
