from typing import NamedTuple

import numpy as np

from ..utils.errors import ArgumentError
from ..utils.logger import app_logger


class Standardized(NamedTuple):
    train: np.ndarray
    test: np.ndarray
    centers: np.ndarray
    scales: np.ndarray
    constant: np.ndarray  # True where the train column had zero spread


def standardize(train: np.ndarray, test: np.ndarray) -> Standardized:
    """
    Center and scale columns with statistics from the training rows only.

    Scales are sample standard deviations (ddof=1). A column that is
    constant in train keeps scale 1 and is flagged in ``constant``.

    Args:
        train: Training matrix, shape (n_train, p)
        test: Test matrix, shape (n_test, p)

    Returns:
        Standardized
    """
    train = np.asarray(train, dtype=float)
    test = np.asarray(test, dtype=float)
    if train.ndim != 2 or train.shape[0] == 0:
        raise ArgumentError("standardize needs a nonempty 2-D training matrix",
                            {"module": "learners", "operation": "standardize"})
    if test.ndim != 2 or test.shape[1] != train.shape[1]:
        raise ArgumentError("train and test must have the same number of columns",
                            {"module": "learners", "operation": "standardize"})

    centers = train.mean(axis=0)
    if train.shape[0] > 1:
        sd = train.std(axis=0, ddof=1)
    else:
        sd = np.zeros(train.shape[1])
    constant = ~(sd > 0)
    scales = np.where(constant, 1.0, sd)
    if constant.any():
        app_logger.debug(f"{int(constant.sum())} constant training columns kept at scale 1")

    return Standardized(train=(train - centers) / scales,
                        test=(test - centers) / scales,
                        centers=centers,
                        scales=scales,
                        constant=constant)
