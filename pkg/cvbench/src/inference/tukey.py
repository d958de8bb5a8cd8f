import math
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence

import numpy as np
import pandas as pd

from ..utils.errors import ArgumentError, DegenerateVarianceError
from ..utils.logger import app_logger
from .anova import AnovaTable
from .distributions import studentized_range_sf


class Bucket(str, Enum):
    NOT_SIGNIFICANT = "NotSignificant"
    P05 = "P05"
    P01 = "P01"
    SELF = "Self"

    @classmethod
    def from_p(cls, p: float) -> 'Bucket':
        if p <= 0.01:
            return cls.P01
        if p <= 0.05:
            return cls.P05
        return cls.NOT_SIGNIFICANT


@dataclass(frozen=True)
class PairwiseComparison:
    combo_a: str
    combo_b: str
    mean_a: float
    mean_b: float
    diff: float
    se_diff: float
    q_stat: float
    p_adj: float
    bucket: Bucket


def tukey_kramer(anova: AnovaTable, combo_means: Optional[Sequence[float]] = None,
                 n_splits: Optional[int] = None,
                 labels: Optional[Sequence[str]] = None) -> List[PairwiseComparison]:
    """
    All-pairs Tukey comparisons of the combo means.

    With every combo mean averaging I splits, se_diff = sqrt(2 MSE / I)
    and q = |mean_a - mean_b| / sqrt(MSE / I); the adjusted p-value is
    the studentized range upper tail with J groups and the error degrees
    of freedom.

    Args:
        anova: ANOVA of the measure table
        combo_means: J combo means (defaults to the ANOVA's own)
        n_splits: I (defaults to the ANOVA's own)
        labels: J combo labels (defaults to the ANOVA's own, or Combo1..ComboJ
            when it has none)

    Returns:
        list: J(J-1)/2 comparisons ordered by (a, b) index with a < b
    """
    means = np.asarray(anova.combo_means if combo_means is None else combo_means, dtype=float)
    n_splits = anova.n_splits if n_splits is None else n_splits
    n_combos = len(means)
    context = {"module": "inference", "operation": "tukey_kramer"}
    if labels is None and not anova.combo_labels:
        # an ANOVA rebuilt from sums of squares carries no labels
        labels = [f"Combo{j + 1}" for j in range(n_combos)]
    labels = list(anova.combo_labels if labels is None else labels)
    if len(labels) != n_combos:
        raise ArgumentError(f"Got {len(labels)} combo labels for {n_combos} combo means",
                            context)
    if n_combos < 2 or n_splits < 1:
        raise ArgumentError("Pairwise comparisons need at least 2 combos", context)
    if not anova.error.ms > 0:
        raise DegenerateVarianceError("Error mean square is zero; comparisons are undefined",
                                      context)

    scale = math.sqrt(anova.error.ms / n_splits)
    se_diff = math.sqrt(2.0 * anova.error.ms / n_splits)
    pairs = [(a, b) for a in range(n_combos) for b in range(a + 1, n_combos)]
    q_stats = np.array([abs(means[a] - means[b]) / scale for a, b in pairs])
    p_values = np.atleast_1d(studentized_range_sf(q_stats, n_combos, anova.error.df))

    comparisons = []
    for (a, b), q, p in zip(pairs, q_stats, p_values):
        comparisons.append(PairwiseComparison(
            combo_a=labels[a], combo_b=labels[b],
            mean_a=float(means[a]), mean_b=float(means[b]),
            diff=float(means[a] - means[b]), se_diff=se_diff,
            q_stat=float(q), p_adj=float(p), bucket=Bucket.from_p(float(p))))
    app_logger.info(f"Tukey comparisons: {len(comparisons)} pairs, "
                    f"{sum(c.bucket is not Bucket.NOT_SIGNIFICANT for c in comparisons)} significant")
    return comparisons


def comparisons_frame(comparisons: Sequence[PairwiseComparison]) -> pd.DataFrame:
    """pairwise.csv layout, one row per comparison."""
    return pd.DataFrame([{
        "combo_a": c.combo_a, "combo_b": c.combo_b, "mean_a": c.mean_a, "mean_b": c.mean_b,
        "diff": c.diff, "se_diff": c.se_diff, "q_stat": c.q_stat, "p_adj": c.p_adj,
        "bucket": c.bucket.value,
    } for c in comparisons], columns=["combo_a", "combo_b", "mean_a", "mean_b", "diff",
                                      "se_diff", "q_stat", "p_adj", "bucket"])
