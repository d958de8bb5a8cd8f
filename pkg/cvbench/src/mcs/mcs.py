"""
Multiple comparisons similarity (MCS) matrix: combos ordered best to
worst on both axes, each cell holding the significance bucket of the
Tukey comparison between its row and column combo.
"""
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Mapping, Sequence

import numpy as np
import pandas as pd
import svgwrite

from ..inference import Bucket, PairwiseComparison
from ..measures import Direction, resolve_metric
from ..utils.errors import CvbenchError, IncompleteComparisonsError
from ..utils.logger import app_logger

# colour-vision-deficiency safe; P01 is the darkest
BUCKET_COLORS = {
    Bucket.NOT_SIGNIFICANT: "#F2F2F2",
    Bucket.P05: "#56B4E9",
    Bucket.P01: "#0072B2",
    Bucket.SELF: "#404040",
}
BUCKET_LABELS = {
    Bucket.P01: "p <= 0.01",
    Bucket.P05: "0.01 < p <= 0.05",
    Bucket.NOT_SIGNIFICANT: "p > 0.05",
    Bucket.SELF: "same combination",
}

STATUS_BEST = "best"
STATUS_MARGINAL = "marginal"
STATUS_EXCLUDED = "excluded"


@dataclass(frozen=True)
class McsMatrix:
    metric: str
    direction: Direction
    ordering: List[str]
    means: Dict[str, float]
    cells: np.ndarray
    p_values: np.ndarray
    subtitle: str = ""

    def bucket(self, a: str, b: str) -> Bucket:
        return self.cells[self.ordering.index(a), self.ordering.index(b)]

    @property
    def title(self) -> str:
        return f"{self.metric} ({self.subtitle})" if self.subtitle else self.metric

    def to_frame(self) -> pd.DataFrame:
        """mcs_<metric>.csv layout: rank, combo, mean, then one bucket column per combo."""
        frame = pd.DataFrame({"rank": np.arange(1, len(self.ordering) + 1),
                              "combo": self.ordering,
                              "mean": [self.means[c] for c in self.ordering]})
        for j, label in enumerate(self.ordering):
            frame[label] = [cell.value for cell in self.cells[:, j]]
        return frame


def _direction(metric: str) -> Direction:
    try:
        return resolve_metric(metric).direction
    except CvbenchError:
        return Direction.HIGHER_IS_BETTER


def build_mcs(comparisons: Sequence[PairwiseComparison], means: Mapping[str, float],
              metric: str, subtitle: str = "") -> McsMatrix:
    """
    Order combos best to worst and fill the bucket matrix.

    Args:
        comparisons: Pairwise comparisons, in either orientation
        means: Combo label -> mean measure
        metric: Metric name; error rate and rmse sort ascending
        subtitle: Extra title text such as "m = 300"

    Returns:
        McsMatrix
    """
    direction = _direction(metric)
    sign = 1.0 if direction is Direction.LOWER_IS_BETTER else -1.0
    ordering = sorted(means, key=lambda label: (sign * means[label], label))
    position = {label: i for i, label in enumerate(ordering)}

    size = len(ordering)
    cells = np.full((size, size), None, dtype=object)
    p_values = np.full((size, size), np.nan)
    for i in range(size):
        cells[i, i] = Bucket.SELF
        p_values[i, i] = 1.0
    for c in comparisons:
        if c.combo_a not in position or c.combo_b not in position:
            raise IncompleteComparisonsError(
                f"Comparison {c.combo_a} vs {c.combo_b} names a combo without a mean",
                {"module": "mcs", "operation": "build_mcs"})
        i, j = position[c.combo_a], position[c.combo_b]
        cells[i, j] = cells[j, i] = c.bucket
        p_values[i, j] = p_values[j, i] = c.p_adj

    missing = [(ordering[i], ordering[j]) for i in range(size) for j in range(i + 1, size)
               if cells[i, j] is None]
    if missing:
        raise IncompleteComparisonsError(
            f"{len(missing)} pairwise comparisons missing, e.g. {missing[0][0]} vs {missing[0][1]}",
            {"module": "mcs", "operation": "build_mcs", "cell": f"{missing[0][0]} vs {missing[0][1]}"})
    return McsMatrix(metric=metric, direction=direction, ordering=ordering,
                     means={label: float(means[label]) for label in ordering},
                     cells=cells, p_values=p_values, subtitle=subtitle)


def best_performers(matrix: McsMatrix) -> Dict[str, str]:
    """
    Status of every combo relative to the best one: "best" when not
    significantly different at the 0.05 level, "marginal" when
    0.01 < p <= 0.05, otherwise "excluded".
    """
    status = {}
    for i, label in enumerate(matrix.ordering):
        bucket = matrix.cells[0, i]
        if bucket in (Bucket.SELF, Bucket.NOT_SIGNIFICANT):
            status[label] = STATUS_BEST
        elif bucket is Bucket.P05:
            status[label] = STATUS_MARGINAL
        else:
            status[label] = STATUS_EXCLUDED
    return status


def summary_table(matrices: Sequence[McsMatrix]) -> pd.DataFrame:
    """
    Cross-measure table of top performers: one row per combo, one column
    per measure holding best / marginal / excluded. Rows are ordered by
    the number of measures on which the combo is best, then by label.
    """
    combos = sorted({label for matrix in matrices for label in matrix.ordering})
    frame = pd.DataFrame({"combo": combos})
    for matrix in matrices:
        status = best_performers(matrix)
        frame[matrix.title] = [status.get(label, "") for label in combos]
    measure_cols = [matrix.title for matrix in matrices]
    frame["n_best"] = (frame[measure_cols] == STATUS_BEST).sum(axis=1)
    frame = frame.sort_values(["n_best", "combo"], ascending=[False, True], kind="stable")
    return frame.reset_index(drop=True)


def _text_width(text: str, font_size: float) -> float:
    return 0.6 * font_size * len(text)


def render_mcs_svg(matrix: McsMatrix, path, cell: int = 28) -> Path:
    """
    Draw the MCS heatmap. The output depends only on the matrix, so the
    same matrix always produces the same bytes.
    """
    path = Path(path)
    labels = matrix.ordering
    size = len(labels)
    if size == 0:
        raise IncompleteComparisonsError("Cannot render an empty MCS matrix",
                                         {"module": "mcs", "operation": "render_mcs_svg"})
    font = 11
    label_w = round(max(_text_width(label, font) for label in labels) + 12, 2)
    left = label_w
    top = 50 + label_w
    legend_w = 190
    width = round(left + size * cell + 30 + legend_w, 2)
    height = round(max(top + size * cell + 30, top + 4 * 22 + 30), 2)

    d = svgwrite.Drawing(size=(width, height), profile='full')
    d.add(d.rect(insert=(0, 0), size=(width, height), fill="white"))
    d.add(d.text(f"MCS plot: {matrix.title}", insert=(round(width / 2, 2), 24),
                 text_anchor="middle", font_size=15, font_family="sans-serif"))

    grid = d.g(stroke="white", stroke_width=1)
    for i in range(size):
        for j in range(size):
            bucket = matrix.cells[i, j]
            rect = d.rect(insert=(left + j * cell, top + i * cell), size=(cell, cell),
                          fill=BUCKET_COLORS[bucket])
            rect.set_desc(title=f"{labels[i]} vs {labels[j]}: {bucket.value}")
            grid.add(rect)
    d.add(grid)

    text = d.g(font_size=font, font_family="sans-serif")
    for i, label in enumerate(labels):
        y = round(top + i * cell + cell / 2 + font / 3, 2)
        text.add(d.text(label, insert=(left - 6, y), text_anchor="end"))
        x = round(left + i * cell + cell / 2 + font / 3, 2)
        text.add(d.text(label, insert=(x, top - 6), text_anchor="start",
                        transform=f"rotate(-90 {x} {top - 6})"))
    d.add(text)

    legend = d.g(font_size=font, font_family="sans-serif")
    lx = left + size * cell + 30
    for row, bucket in enumerate((Bucket.P01, Bucket.P05, Bucket.NOT_SIGNIFICANT, Bucket.SELF)):
        ly = top + row * 22
        legend.add(d.rect(insert=(lx, ly), size=(16, 16), fill=BUCKET_COLORS[bucket],
                          stroke="#999999", stroke_width=1))
        legend.add(d.text(BUCKET_LABELS[bucket], insert=(lx + 22, ly + 12)))
    d.add(legend)

    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(d.tostring(), encoding="utf-8")
    except OSError as e:
        app_logger.error(f"Error writing MCS plot {path}: {str(e)}")
        raise
    app_logger.debug(f"MCS plot written to {path}")
    return path
