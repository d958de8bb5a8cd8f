"""
Accumulation curves: the running total of the response over the first m
tests, with tests taken in descending order of predicted score. A 0/1
response gives the familiar number-of-hits curve.
"""
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np
import pandas as pd

from ..measures import PredictionStore, selection_order
from ..utils.errors import ArgumentError

IDEAL = "Ideal"
RANDOM = "Random"


@dataclass(frozen=True)
class AccumulationCurve:
    """accumulated[i] is the total response over the first i + 1 tests."""
    accumulated: np.ndarray
    label: str
    split: Optional[int] = None
    set_name: Optional[str] = None
    method: Optional[str] = None

    @property
    def max_select(self) -> int:
        return len(self.accumulated)

    @property
    def m_values(self) -> np.ndarray:
        return np.arange(1, self.max_select + 1)

    def at(self, m: int) -> float:
        return float(self.accumulated[m - 1])


def _check_max_select(n: int, max_select: int, operation: str) -> None:
    if max_select < 1 or max_select > n:
        raise ArgumentError(f"max_select must satisfy 1 <= max_select <= n (n={n}), "
                            f"got {max_select}",
                            {"module": "curves", "operation": operation})


def default_max_select(n: int) -> int:
    """floor(min(300, n/4)), and 1 for n < 4."""
    return max(1, int(min(300, n // 4)))


def accumulation(y, scores, max_select: int, label: str = "",
                 split: Optional[int] = None, set_name: Optional[str] = None,
                 method: Optional[str] = None) -> AccumulationCurve:
    y = np.asarray(y, dtype=float)
    scores = np.asarray(scores, dtype=float)
    if y.shape != scores.shape:
        raise ArgumentError("y and scores must have the same length",
                            {"module": "curves", "operation": "accumulation"})
    _check_max_select(len(y), max_select, "accumulation")
    order = selection_order(scores)[:max_select]
    return AccumulationCurve(accumulated=np.cumsum(y[order]), label=label,
                             split=split, set_name=set_name, method=method)


def ideal_curve(y, max_select: int) -> AccumulationCurve:
    """Tests in descending order of the response itself."""
    y = np.asarray(y, dtype=float)
    _check_max_select(len(y), max_select, "ideal_curve")
    ordered = np.sort(y)[::-1][:max_select]
    return AccumulationCurve(accumulated=np.cumsum(ordered), label=IDEAL)


def random_curve(y, max_select: int) -> AccumulationCurve:
    """Expected accumulation under a uniformly random testing order: m * mean(y)."""
    y = np.asarray(y, dtype=float)
    _check_max_select(len(y), max_select, "random_curve")
    m = np.arange(1, max_select + 1)
    return AccumulationCurve(accumulated=m * float(y.mean()), label=RANDOM)


@dataclass
class CurveSet:
    """Model curves per (split, set, method) plus the two reference curves."""
    max_select: int
    ideal: AccumulationCurve
    random: AccumulationCurve
    curves: Dict[Tuple[int, str, str], AccumulationCurve] = field(default_factory=dict)

    @property
    def splits(self) -> List[int]:
        return sorted({key[0] for key in self.curves})

    @property
    def set_names(self) -> List[str]:
        return list(dict.fromkeys(key[1] for key in self.curves))

    @property
    def methods(self) -> List[str]:
        return list(dict.fromkeys(key[2] for key in self.curves))

    def to_frame(self) -> pd.DataFrame:
        """curves.csv layout: split, set, method, m, accumulated; references have an empty set."""
        frames = []
        for split in self.splits:
            for reference in (self.ideal, self.random):
                frames.append(pd.DataFrame({"split": split, "set": "", "method": reference.label,
                                            "m": reference.m_values,
                                            "accumulated": reference.accumulated}))
            for (s, set_name, method), curve in self.curves.items():
                if s == split:
                    frames.append(pd.DataFrame({"split": split, "set": set_name, "method": method,
                                                "m": curve.m_values,
                                                "accumulated": curve.accumulated}))
        return pd.concat(frames, ignore_index=True)


def build_curves(store: PredictionStore, max_select: Optional[int] = None) -> CurveSet:
    if max_select is None:
        max_select = default_max_select(store.n)
    curve_set = CurveSet(max_select=max_select,
                         ideal=ideal_curve(store.response, max_select),
                         random=random_curve(store.response, max_select))
    for split, set_name, method in store.keys():
        curve_set.curves[(split, set_name, method)] = accumulation(
            store.response, store.get(split, set_name, method), max_select,
            label=f"{set_name}-{method}", split=split, set_name=set_name, method=method)
    return curve_set
