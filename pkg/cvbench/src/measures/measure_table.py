from dataclasses import dataclass
from typing import List, Optional

import numpy as np
import pandas as pd

from ...config import DEFAULT_IE_TESTS, DEFAULT_THRESHOLD
from ..utils.errors import ArgumentError, IncompatibleMetricError, IncompleteDesignError, \
    UndefinedMeasureError
from ..utils.logger import app_logger
from .metrics import Metric, metrics_for, resolve_metric
from .performance import auc, binary_measures, continuous_measures, initial_enhancement
from .prediction_store import Combo, PredictionStore, combo_label


@dataclass(frozen=True)
class MeasureTable:
    """
    One measure value per (split, D-M combination): the ANOVA response.

    ``rows`` has columns split, descriptor_set, method, value; ``combos``
    fixes the combo order used by the ANOVA and comparisons.
    """
    metric: str
    m: Optional[int]
    threshold: Optional[float]
    combos: List[Combo]
    rows: pd.DataFrame

    @property
    def splits(self) -> List[int]:
        return sorted(int(s) for s in self.rows["split"].unique())

    @property
    def labels(self) -> List[str]:
        return [combo_label(c) for c in self.combos]

    def matrix(self) -> np.ndarray:
        """Values as an I x J array (splits by combos); every cell must be present once."""
        splits = self.splits
        out = np.full((len(splits), len(self.combos)), np.nan)
        seen = np.zeros(out.shape, dtype=int)
        split_pos = {s: i for i, s in enumerate(splits)}
        combo_pos = {c: j for j, c in enumerate(self.combos)}
        for row in self.rows.itertuples(index=False):
            i = split_pos[int(row.split)]
            j = combo_pos[(row.descriptor_set, row.method)]
            out[i, j] = row.value
            seen[i, j] += 1
        bad = np.argwhere(seen != 1)
        if bad.size:
            i, j = bad[0]
            cell = f"split {splits[i]}, {self.labels[j]}"
            problem = "missing" if seen[i, j] == 0 else "duplicated"
            raise IncompleteDesignError(f"Measure table cell ({cell}) is {problem}",
                                        {"module": "inference", "operation": "anova_blocked",
                                         "cell": cell})
        return out

    def combo_means(self) -> np.ndarray:
        return self.matrix().mean(axis=0)

    def to_frame(self) -> pd.DataFrame:
        """measures.csv layout: split, descriptor_set, method, metric, m, threshold, value."""
        frame = self.rows[["split", "descriptor_set", "method"]].copy()
        frame["metric"] = self.metric
        frame["m"] = "" if self.m is None else self.m
        frame["threshold"] = "" if self.threshold is None else self.threshold
        frame["value"] = self.rows["value"].to_numpy()
        return frame

    def subtitle(self) -> str:
        if self.m is not None:
            return f"m = {self.m}"
        if self.threshold is not None:
            return f"threshold = {self.threshold:g}"
        return ""


def _cell_value(metric: Metric, y: np.ndarray, scores: np.ndarray, m: int,
                threshold: float) -> float:
    if metric.name == "enhancement":
        return initial_enhancement(y, scores, m)
    if metric.name == "auc":
        return auc(y, scores)
    if metric.uses_threshold:
        return binary_measures(y, scores, threshold)[metric.name]
    return continuous_measures(y, scores)[metric.name]


def build_measure_table(store: PredictionStore, metric: str = "enhancement",
                        m: int = DEFAULT_IE_TESTS,
                        threshold: float = DEFAULT_THRESHOLD) -> MeasureTable:
    """
    Evaluate a measure on the pooled out-of-fold predictions of every
    (split, combo) entry of the store.

    Args:
        store: Out-of-fold predictions
        metric: Metric name or alias
        m: Tests for initial enhancement
        threshold: Score threshold for the binary measures

    Returns:
        MeasureTable
    """
    resolved = resolve_metric(metric)
    if not resolved.applies_to(store.kind):
        raise IncompatibleMetricError(
            f"Metric '{resolved.name}' does not apply to a {store.kind.value} response. "
            f"Valid metrics: {metrics_for(store.kind)}",
            {"module": "measures", "operation": "build_measure_table"})
    if resolved.uses_m and not 1 <= m <= store.n:
        raise ArgumentError(f"m must satisfy 1 <= m <= n (n={store.n}), got {m}",
                            {"module": "measures", "operation": "build_measure_table"})

    records = []
    for split, set_name, method in store.keys():
        cell = f"split {split}, {combo_label((set_name, method))}"
        try:
            value = _cell_value(resolved, store.response, store.get(split, set_name, method),
                                m, threshold)
        except UndefinedMeasureError as e:
            app_logger.error(f"Measure '{resolved.name}' undefined for ({cell}): {e}")
            raise UndefinedMeasureError(f"Measure '{resolved.name}' is undefined for ({cell}): {e}",
                                        {**e.context, "cell": cell}) from e
        if not np.isfinite(value):
            app_logger.error(f"Measure '{resolved.name}' undefined for ({cell})")
            raise UndefinedMeasureError(
                f"Measure '{resolved.name}' is undefined for ({cell}); "
                f"choose another metric or threshold",
                {"module": "measures", "operation": "build_measure_table", "cell": cell})
        records.append({"split": split, "descriptor_set": set_name, "method": method,
                        "value": value})

    table = MeasureTable(metric=resolved.name,
                         m=m if resolved.uses_m else None,
                         threshold=threshold if resolved.uses_threshold else None,
                         combos=store.combos,
                         rows=pd.DataFrame(records, columns=["split", "descriptor_set",
                                                             "method", "value"]))
    app_logger.info(f"Measure table '{resolved.name}': {len(records)} cells, "
                    f"{len(store.splits)} splits x {len(store.combos)} combos")
    return table
