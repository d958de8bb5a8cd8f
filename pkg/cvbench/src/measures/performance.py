"""
Performance measures computed on pooled out-of-fold predictions.

Binary measures threshold the scores with the ``score >= threshold``
rule. Measures that are undefined for the given data (a PPV with no
predicted positives, an R^2 on a constant response) come back as NaN
from the ``*_measures`` helpers; the measure table turns a NaN cell into
an UndefinedMeasureError naming the cell.
"""
from typing import Dict, NamedTuple

import numpy as np
import pandas as pd

from ..utils.errors import ArgumentError, UndefinedMeasureError


class ConfusionCounts(NamedTuple):
    tp: int
    fp: int
    tn: int
    fn: int


def _as_pair(y, scores, operation: str):
    y = np.asarray(y, dtype=float)
    scores = np.asarray(scores, dtype=float)
    if y.shape != scores.shape or y.ndim != 1:
        raise ArgumentError(f"Length mismatch: {y.shape} responses vs {scores.shape} predictions",
                            {"module": "measures", "operation": operation})
    return y, scores


def midranks(values) -> np.ndarray:
    """1-based ranks; tied values share the average of their ranks."""
    return pd.Series(np.asarray(values, dtype=float)).rank(method="average").to_numpy()


def selection_order(scores) -> np.ndarray:
    """
    Row indices by descending score. Ties keep ascending row order, so the
    order only depends on the ranking of the scores.
    """
    scores = np.asarray(scores, dtype=float)
    return np.argsort(-scores, kind="stable")


def confusion_counts(y, labels) -> ConfusionCounts:
    y, labels = _as_pair(y, labels, "confusion_counts")
    actual = y == 1
    predicted = labels == 1
    return ConfusionCounts(tp=int(np.sum(actual & predicted)),
                           fp=int(np.sum(~actual & predicted)),
                           tn=int(np.sum(~actual & ~predicted)),
                           fn=int(np.sum(actual & ~predicted)))


def _ratio(num: float, den: float) -> float:
    return num / den if den > 0 else float("nan")


def binary_measures(y, scores, threshold: float = 0.5) -> Dict[str, float]:
    """
    Threshold-based measures for a 0/1 response.

    Args:
        y: Observed 0/1 response
        scores: Predicted scores
        threshold: Scores >= threshold are predicted positive

    Returns:
        dict: error rate, sensitivity, specificity, ppv and fmeasure
    """
    y, scores = _as_pair(y, scores, "binary_measures")
    c = confusion_counts(y, (scores >= threshold).astype(int))
    n = len(y)
    sensitivity = _ratio(c.tp, c.tp + c.fn)
    ppv = _ratio(c.tp, c.tp + c.fp)
    if np.isnan(ppv) or sensitivity + ppv == 0:
        fmeasure = float("nan")
    else:
        fmeasure = 2 * sensitivity * ppv / (sensitivity + ppv)
    return {
        "error rate": (c.fp + c.fn) / n,
        "sensitivity": sensitivity,
        "specificity": _ratio(c.tn, c.tn + c.fp),
        "ppv": ppv,
        "fmeasure": fmeasure,
    }


def auc(y, scores) -> float:
    """Area under the ROC curve in Mann-Whitney form with midranks for ties."""
    y, scores = _as_pair(y, scores, "auc")
    positive = y == 1
    p = int(positive.sum())
    q = len(y) - p
    if p == 0 or q == 0:
        raise UndefinedMeasureError("AUC needs both classes in the response",
                                    {"module": "measures", "operation": "auc"})
    rank_sum = float(midranks(scores)[positive].sum())
    return (rank_sum - p * (p + 1) / 2) / (p * q)


def initial_enhancement(y, scores, m: int = 300) -> float:
    """
    Hit rate among the first m tests divided by the positive rate.

    For a continuous response the same ratio is taken with running sums:
    (sum of y over the first m tests) / (m * mean(y)), which needs a
    positive mean response.

    Args:
        y: Observed response
        scores: Predicted scores deciding the testing order
        m: Number of tests

    Returns:
        float: Initial enhancement
    """
    y, scores = _as_pair(y, scores, "initial_enhancement")
    n = len(y)
    if m < 1 or m > n:
        raise ArgumentError(f"m must satisfy 1 <= m <= n (n={n}), got {m}",
                            {"module": "measures", "operation": "initial_enhancement"})
    base_rate = float(y.mean())
    if not base_rate > 0:
        raise UndefinedMeasureError("Initial enhancement needs a positive mean response "
                                    "(at least one positive)",
                                    {"module": "measures", "operation": "initial_enhancement"})
    hits = float(y[selection_order(scores)[:m]].sum())
    return (hits / m) / base_rate


def continuous_measures(y, predictions) -> Dict[str, float]:
    """
    RMSE, R^2 (1 - SS_res / SS_tot) and Spearman's rho (Pearson
    correlation of midranks).
    """
    y, predictions = _as_pair(y, predictions, "continuous_measures")
    residual = y - predictions
    ss_res = float(np.sum(residual ** 2))
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    rmse = float(np.sqrt(ss_res / len(y)))
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else float("nan")

    rho = float("nan")
    if len(y) >= 3:
        ry = midranks(y) - (len(y) + 1) / 2
        rp = midranks(predictions) - (len(y) + 1) / 2
        den = np.sqrt(np.sum(ry ** 2) * np.sum(rp ** 2))
        if den > 0:
            rho = float(np.sum(ry * rp) / den)
    return {"rmse": rmse, "r2": r2, "rho": rho}
