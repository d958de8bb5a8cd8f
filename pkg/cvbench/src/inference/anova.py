"""
Additive two-factor ANOVA with splits as blocks and D-M combinations as
treatments, one observation per cell:

    Y_ij = mu + alpha_i + beta_j + e_ij

The split x combo interaction is the error term, so the error degrees of
freedom are (I - 1)(J - 1).
"""
import math
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from ..measures import MeasureTable
from ..utils.errors import ArgumentError, DegenerateVarianceError
from ..utils.logger import app_logger
from .distributions import f_sf

DEGENERATE_RTOL = 1e-12


@dataclass(frozen=True)
class AnovaRow:
    df: int
    ss: float
    ms: Optional[float] = None
    f: Optional[float] = None
    p: Optional[float] = None


@dataclass(frozen=True)
class AnovaTable:
    """ANOVA table plus the fitted effects of the additive model."""
    metric: str
    n_splits: int
    n_combos: int
    model: AnovaRow
    error: AnovaRow
    total: AnovaRow
    split_row: AnovaRow
    combo_row: AnovaRow
    r_square: float
    coef_var: float
    root_mse: float
    mean: float
    split_effects: np.ndarray = field(default_factory=lambda: np.empty(0))
    combo_effects: np.ndarray = field(default_factory=lambda: np.empty(0))
    residuals: np.ndarray = field(default_factory=lambda: np.empty((0, 0)))
    combo_means: np.ndarray = field(default_factory=lambda: np.empty(0))
    combo_labels: List[str] = field(default_factory=list)

    @classmethod
    def from_sums_of_squares(cls, ss_split: float, ss_combo: float, ss_error: float,
                             n_splits: int, n_combos: int, mean: float,
                             metric: str = "", **effects) -> 'AnovaTable':
        """
        Derive every table entry from the three sums of squares, the
        design size and the grand mean.

        Args:
            ss_split: Split (block) sum of squares
            ss_combo: D-M combination sum of squares
            ss_error: Error sum of squares
            n_splits: I
            n_combos: J
            mean: Grand mean of the measure
            metric: Metric name for the printed header

        Returns:
            AnovaTable
        """
        if n_splits < 2 or n_combos < 2:
            raise ArgumentError(f"The ANOVA needs at least 2 splits and 2 combos "
                                f"(got I={n_splits}, J={n_combos})",
                                {"module": "inference", "operation": "anova_blocked"})
        df_split = n_splits - 1
        df_combo = n_combos - 1
        df_error = df_split * df_combo
        ss_model = ss_split + ss_combo
        ss_total = ss_model + ss_error
        if not ss_error > DEGENERATE_RTOL * ss_total:
            raise DegenerateVarianceError(
                "Error mean square is zero: the measure is exactly additive in split and "
                "combination, so F and Tukey statistics are undefined",
                {"module": "inference", "operation": "anova_blocked"})

        ms_error = ss_error / df_error

        def effect_row(df: int, ss: float) -> AnovaRow:
            ms = ss / df
            f = ms / ms_error
            return AnovaRow(df=df, ss=ss, ms=ms, f=f, p=f_sf(f, df, df_error))

        root_mse = math.sqrt(ms_error)
        return cls(
            metric=metric,
            n_splits=n_splits,
            n_combos=n_combos,
            model=effect_row(df_split + df_combo, ss_model),
            error=AnovaRow(df=df_error, ss=ss_error, ms=ms_error),
            total=AnovaRow(df=n_splits * n_combos - 1, ss=ss_total),
            split_row=effect_row(df_split, ss_split),
            combo_row=effect_row(df_combo, ss_combo),
            r_square=ss_model / ss_total,
            coef_var=100.0 * root_mse / mean if mean != 0 else float("nan"),
            root_mse=root_mse,
            mean=mean,
            **effects,
        )


def anova_blocked(table: MeasureTable) -> AnovaTable:
    """
    Blocked two-factor ANOVA of a complete measure table.

    SS_split = J * sum_i (ybar_i. - ybar..)^2, SS_combo = I * sum_j
    (ybar_.j - ybar..)^2 and SS_error is the sum of squared residuals of
    the additive fit, which equals SS_total - SS_split - SS_combo.
    """
    y = table.matrix()
    n_splits, n_combos = y.shape
    if n_splits < 2 or n_combos < 2:
        raise ArgumentError(f"The ANOVA needs at least 2 splits and 2 combos "
                            f"(got I={n_splits}, J={n_combos})",
                            {"module": "inference", "operation": "anova_blocked"})

    grand = float(y.mean())
    split_means = y.mean(axis=1)
    combo_means = y.mean(axis=0)
    split_effects = split_means - grand
    combo_effects = combo_means - grand
    residuals = y - split_means[:, None] - combo_means[None, :] + grand

    ss_split = n_combos * float(np.sum(split_effects ** 2))
    ss_combo = n_splits * float(np.sum(combo_effects ** 2))
    ss_error = float(np.sum(residuals ** 2))
    try:
        anova = AnovaTable.from_sums_of_squares(
            ss_split, ss_combo, ss_error, n_splits, n_combos, grand, metric=table.metric,
            split_effects=split_effects, combo_effects=combo_effects, residuals=residuals,
            combo_means=combo_means, combo_labels=table.labels)
    except DegenerateVarianceError as e:
        app_logger.error(f"ANOVA on '{table.metric}' failed: {str(e)}")
        raise
    app_logger.info(f"ANOVA on '{table.metric}': F(combo)={anova.combo_row.f:.4f}, "
                    f"p={anova.combo_row.p:.3g}")
    return anova


def format_p(p: float) -> str:
    return "<.0001" if p < 1e-4 else f"{p:.4f}"


def render_anova_text(anova: AnovaTable) -> str:
    """The ANOVA block as printed by ``cvbench assess``."""
    lines = [
        f"   Analysis of Variance on: '{anova.metric}'",
        " Using factors: Split and Descriptor/Method combination",
        f"{'Source':<9}{'DF':>3}{'SS':>10}{'MS':>10}{'F':>10}{'p-value':>10}   ",
        f"{'Model':<9}{anova.model.df:>3}{anova.model.ss:>10.4f}{anova.model.ms:>10.4f}"
        f"{anova.model.f:>10.4f}{format_p(anova.model.p):>10}   ",
        f"{'Error':<9}{anova.error.df:>3}{anova.error.ss:>10.4f}{anova.error.ms:>10.4f}   ",
        f"{'Total':<9}{anova.total.df:>3}{anova.total.ss:>10.4f}   ",
        f"{'R-Square':>14}{'Coef Var':>11}{'Root MSE':>11}{'Mean':>11}   ",
        f"{anova.r_square:>14.4f}{anova.coef_var:>11.4f}{anova.root_mse:>11.4f}"
        f"{anova.mean:>11.4f}   ",
        f"{'Source':<10}{'DF':>5}{'SS':>9}{'MS':>9}{'F':>9}{'p-value':>10}   ",
    ]
    for name, row in (("Split", anova.split_row), ("Desc/Meth", anova.combo_row)):
        lines.append(f"{name:<10}{row.df:>5}{row.ss:>9.3f}{row.ms:>9.3f}{row.f:>9.3f}"
                     f"{format_p(row.p):>10}")
    return "\n".join(lines) + "\n"
