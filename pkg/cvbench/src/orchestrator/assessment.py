"""
Assessment of a finished run: measure table, blocked ANOVA, Tukey
comparisons, MCS plot, accumulation curves and the cross-measure summary.
"""
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

import pandas as pd

from ...config import DEFAULT_IE_TESTS, DEFAULT_METRIC, DEFAULT_THRESHOLD
from ..curves import build_curves, render_curve_series
from ..inference import (AnovaTable, PairwiseComparison, anova_blocked, comparisons_frame,
                         render_anova_text, tukey_kramer)
from ..io_utils import ResponseKind
from ..mcs import McsMatrix, build_mcs, render_mcs_svg, summary_table
from ..measures import MeasureTable, build_measure_table, resolve_metric
from ..utils.errors import CvbenchError
from ..utils.logger import app_logger
from .model_train import FLOAT_FORMAT
from .run_store import load_run

MEASURES = "measures.csv"
PAIRWISE = "pairwise.csv"
CURVES = "curves.csv"

BINARY_SUMMARY = [("enhancement", 300), ("enhancement", 100), ("specificity", None),
                  ("sensitivity", None), ("error rate", None), ("ppv", None),
                  ("fmeasure", None), ("auc", None)]
CONTINUOUS_SUMMARY = [("enhancement", 300), ("enhancement", 100), ("rmse", None),
                      ("r2", None), ("rho", None)]


@dataclass
class Assessment:
    table: MeasureTable
    anova: AnovaTable
    comparisons: List[PairwiseComparison]
    matrix: McsMatrix
    anova_text: str
    paths: List[Path]


def assess_store(store, metric: str = DEFAULT_METRIC, m: int = DEFAULT_IE_TESTS,
                 threshold: float = DEFAULT_THRESHOLD) -> Tuple[MeasureTable, AnovaTable,
                                                                List[PairwiseComparison], McsMatrix]:
    table = build_measure_table(store, metric, m=m, threshold=threshold)
    anova = anova_blocked(table)
    comparisons = tukey_kramer(anova)
    means = dict(zip(table.labels, table.combo_means()))
    matrix = build_mcs(comparisons, means, table.metric, subtitle=table.subtitle())
    return table, anova, comparisons, matrix


def combine_splits(run_dir: Union[str, Path], metric: str = DEFAULT_METRIC,
                   m: int = DEFAULT_IE_TESTS, threshold: float = DEFAULT_THRESHOLD,
                   out_dir: Optional[Union[str, Path]] = None) -> Assessment:
    """
    Assess every D-M combination of a run on one performance measure.

    Writes measures.csv, pairwise.csv, mcs_<metric>.svg, mcs_<metric>.csv
    and anova_<metric>.txt into ``out_dir`` (the run directory by default).

    Args:
        run_dir: Run directory written by run_model_train
        metric: Performance measure (default initial enhancement)
        m: Tests for initial enhancement
        threshold: Score threshold for the binary measures
        out_dir: Where to write the artifacts

    Returns:
        Assessment
    """
    run = load_run(run_dir)
    out_dir = Path(out_dir) if out_dir is not None else run.run_dir
    out_dir.mkdir(parents=True, exist_ok=True)
    table, anova, comparisons, matrix = assess_store(run.store, metric, m, threshold)

    slug = resolve_metric(table.metric).slug
    anova_text = render_anova_text(anova)
    paths = [out_dir / MEASURES, out_dir / PAIRWISE, out_dir / f"mcs_{slug}.csv",
             out_dir / f"anova_{slug}.txt"]
    table.to_frame().to_csv(paths[0], index=False, float_format=FLOAT_FORMAT)
    comparisons_frame(comparisons).to_csv(paths[1], index=False, float_format=FLOAT_FORMAT)
    matrix.to_frame().to_csv(paths[2], index=False, float_format=FLOAT_FORMAT)
    paths[3].write_text(anova_text, encoding="utf-8")
    paths.append(render_mcs_svg(matrix, out_dir / f"mcs_{slug}.svg"))
    app_logger.info(f"Assessment of '{table.metric}' written to {out_dir}")
    return Assessment(table=table, anova=anova, comparisons=comparisons, matrix=matrix,
                      anova_text=anova_text, paths=paths)


def plot_curves(run_dir: Union[str, Path], series: str = "methods",
                splits: Optional[Sequence[int]] = None, meths: Optional[Sequence[str]] = None,
                max_select: Optional[int] = None,
                out_dir: Optional[Union[str, Path]] = None) -> List[Path]:
    """Write accumulation-curve SVGs and curves.csv for a run."""
    run = load_run(run_dir)
    out_dir = Path(out_dir) if out_dir is not None else run.run_dir
    curve_set = build_curves(run.store, max_select)
    paths = render_curve_series(curve_set, out_dir, series=series, splits=splits, meths=meths,
                                binary=run.store.kind is ResponseKind.BINARY)
    curves_path = out_dir / CURVES
    curve_set.to_frame().to_csv(curves_path, index=False, float_format=FLOAT_FORMAT)
    return paths + [curves_path]


def summarize_run(run_dir: Union[str, Path], threshold: float = DEFAULT_THRESHOLD,
                  measures: Optional[Sequence[Tuple[str, Optional[int]]]] = None) -> pd.DataFrame:
    """
    Top performers under several measures at once.

    Measures that cannot be assessed on this run (initial enhancement
    with m > n, a PPV cell with no predicted positives, an exactly
    additive table) are skipped with a warning.

    Returns:
        pd.DataFrame: combo, one status column per measure, n_best
    """
    run = load_run(run_dir)
    if measures is None:
        measures = BINARY_SUMMARY if run.store.kind is ResponseKind.BINARY else CONTINUOUS_SUMMARY
    matrices = []
    for metric, m in measures:
        try:
            *_, matrix = assess_store(run.store, metric, m=m or DEFAULT_IE_TESTS,
                                      threshold=threshold)
        except CvbenchError as e:
            app_logger.warning(f"Skipping '{metric}' in the summary: {str(e)}")
            continue
        matrices.append(matrix)
    if not matrices:
        raise CvbenchError("No measure could be assessed for the summary",
                           {"module": "mcs", "operation": "summary_table"})
    return summary_table(matrices)
