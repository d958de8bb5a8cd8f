import re
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Tuple

import svgwrite

from ..learners import is_classification_fit
from ..utils.errors import ArgumentError
from ..utils.logger import app_logger
from .accumulation import AccumulationCurve, CurveSet

SERIES = ("methods", "descriptors", "both")

# Okabe-Ito palette, distinguishable under the common colour-vision deficiencies
SERIES_COLORS = ["#0072B2", "#E69F00", "#009E73", "#CC79A7",
                 "#56B4E9", "#D55E00", "#F0E442", "#000000"]
MARKERS = ["circle", "square", "triangle", "diamond", "cross", "plus"]
IDEAL_COLOR = "#444444"
RANDOM_COLOR = "#999999"
MARKER_COUNT = 10


def _fmt(value: float) -> float:
    return round(float(value), 2)


def _safe_key(key: str) -> str:
    return re.sub(r"[^A-Za-z0-9_.-]+", "_", key)


class CurvePlot:
    """One accumulation-curve chart drawn with svgwrite."""

    margin_left = 70
    margin_right = 190
    margin_top = 50
    margin_bottom = 60

    def __init__(self, title: str, max_select: int, y_max: float,
                 width: int = 800, height: int = 600, y_label: str = "Accumulated response"):
        self.width = width
        self.height = height
        self.max_select = max_select
        self.y_max = y_max if y_max > 0 else 1.0
        self.plot_w = width - self.margin_left - self.margin_right
        self.plot_h = height - self.margin_top - self.margin_bottom
        self.drawing = svgwrite.Drawing(size=(width, height), profile='full')
        self.drawing.add(self.drawing.rect(insert=(0, 0), size=(width, height), fill="white"))
        self.drawing.add(self.drawing.text(title, insert=(width / 2, 28), text_anchor="middle",
                                           font_size=16, font_family="sans-serif"))
        self._legend_row = 0
        self._axes(y_label)

    def sx(self, m: float) -> float:
        return _fmt(self.margin_left + m / self.max_select * self.plot_w)

    def sy(self, value: float) -> float:
        return _fmt(self.margin_top + self.plot_h - value / self.y_max * self.plot_h)

    def _axes(self, y_label: str) -> None:
        d = self.drawing
        axes = d.g(stroke="black", stroke_width=1)
        x0, y0 = self.margin_left, self.margin_top + self.plot_h
        axes.add(d.line(start=(x0, y0), end=(x0 + self.plot_w, y0)))
        axes.add(d.line(start=(x0, y0), end=(x0, self.margin_top)))
        labels = d.g(font_size=11, font_family="sans-serif")
        for i in range(6):
            m = self.max_select * i / 5
            v = self.y_max * i / 5
            axes.add(d.line(start=(self.sx(m), y0), end=(self.sx(m), y0 + 5)))
            axes.add(d.line(start=(x0 - 5, self.sy(v)), end=(x0, self.sy(v))))
            labels.add(d.text(f"{m:.4g}", insert=(self.sx(m), y0 + 18), text_anchor="middle"))
            labels.add(d.text(f"{v:.4g}", insert=(x0 - 8, self.sy(v) + 4), text_anchor="end"))
        labels.add(d.text("Number of tests", insert=(x0 + self.plot_w / 2, self.height - 15),
                          text_anchor="middle", font_size=13))
        labels.add(d.text(y_label, insert=(18, self.margin_top + self.plot_h / 2),
                          text_anchor="middle", font_size=13,
                          transform=f"rotate(-90 18 {_fmt(self.margin_top + self.plot_h / 2)})"))
        d.add(axes)
        d.add(labels)

    def _marker(self, shape: str, x: float, y: float, color: str, filled: bool):
        d = self.drawing
        r = 4
        style = {"stroke": color, "stroke_width": 1.5,
                 "fill": color if filled else "white"}
        if shape == "circle":
            return d.circle(center=(x, y), r=r, **style)
        if shape == "square":
            return d.rect(insert=(_fmt(x - r), _fmt(y - r)), size=(2 * r, 2 * r), **style)
        if shape == "triangle":
            return d.polygon([(x, _fmt(y - r)), (_fmt(x - r), _fmt(y + r)), (_fmt(x + r), _fmt(y + r))],
                             **style)
        if shape == "diamond":
            return d.polygon([(x, _fmt(y - r)), (_fmt(x + r), y), (x, _fmt(y + r)), (_fmt(x - r), y)],
                             **style)
        if shape == "cross":
            return d.path(d=f"M{_fmt(x - r)},{_fmt(y - r)} L{_fmt(x + r)},{_fmt(y + r)} "
                            f"M{_fmt(x - r)},{_fmt(y + r)} L{_fmt(x + r)},{_fmt(y - r)}",
                          stroke=color, stroke_width=1.5)
        return d.path(d=f"M{_fmt(x - r)},{y} L{_fmt(x + r)},{y} M{x},{_fmt(y - r)} L{x},{_fmt(y + r)}",
                      stroke=color, stroke_width=1.5)

    def add_curve(self, curve: AccumulationCurve, label: str, color: str,
                  marker: Optional[str] = None, dash: Optional[str] = None,
                  width: float = 2) -> None:
        d = self.drawing
        points = [(self.sx(0), self.sy(0))] + [
            (self.sx(m), self.sy(v)) for m, v in zip(curve.m_values, curve.accumulated)]
        line = d.polyline(points, stroke=color, stroke_width=width, fill="none")
        if dash:
            line["stroke-dasharray"] = dash
        group = d.g()
        group.add(line)
        if marker:
            step = max(1, curve.max_select // MARKER_COUNT)
            for m in range(step, curve.max_select + 1, step):
                group.add(self._marker(marker, self.sx(m), self.sy(curve.at(m)), color,
                                       filled=dash is None))
        d.add(group)
        self._legend(label, color, marker, dash, width)

    def _legend(self, label: str, color: str, marker: Optional[str], dash: Optional[str],
                width: float) -> None:
        d = self.drawing
        x = self.width - self.margin_right + 20
        y = self.margin_top + 10 + 20 * self._legend_row
        line = d.line(start=(x, y), end=(x + 30, y), stroke=color, stroke_width=width)
        if dash:
            line["stroke-dasharray"] = dash
        d.add(line)
        if marker:
            d.add(self._marker(marker, x + 15, y, color, filled=dash is None))
        d.add(d.text(label, insert=(x + 38, y + 4), font_size=12, font_family="sans-serif"))
        self._legend_row += 1

    def tostring(self) -> str:
        return self.drawing.tostring()


def _filter(values: Sequence, wanted: Optional[Iterable], what: str) -> List:
    if wanted is None:
        return list(values)
    wanted = list(wanted)
    unknown = [w for w in wanted if w not in values]
    if unknown:
        raise ArgumentError(f"Unknown {what} {unknown}. Available {what}: {list(values)}",
                            {"module": "curves", "operation": "render_curve_series"})
    return [v for v in values if v in wanted]


def _plot_one(curve_set: CurveSet, split: int, key: str,
              members: List[Tuple[str, AccumulationCurve]], color_of, title: str,
              binary: bool, width: int, height: int) -> str:
    y_max = max([curve_set.ideal.accumulated.max()] +
                [c.accumulated.max() for _, c in members] + [0.0])
    plot = CurvePlot(title, curve_set.max_select, y_max, width=width, height=height,
                     y_label="Number of positives" if binary else "Accumulated response")
    plot.add_curve(curve_set.ideal, "Ideal", IDEAL_COLOR, dash="8,4", width=1.5)
    plot.add_curve(curve_set.random, "Random", RANDOM_COLOR, dash="2,3", width=1.5)
    for index, (name, curve) in enumerate(members):
        # probability-like fits solid with filled markers; thresholded continuous fits dashed
        dash = None if is_classification_fit(curve.method) else "6,3"
        plot.add_curve(curve, name, color_of(index), marker=MARKERS[index % len(MARKERS)],
                       dash=dash)
    return plot.tostring()


def render_curve_series(curve_set: CurveSet, out_dir, series: str = "methods",
                        splits: Optional[Iterable[int]] = None,
                        meths: Optional[Iterable[str]] = None,
                        binary: bool = True, width: int = 800, height: int = 600) -> List[Path]:
    """
    Write accumulation-curve SVGs.

    "methods" gives one chart per (split, descriptor set) overlaying the
    methods; "descriptors" gives one chart per (split, method) overlaying
    the descriptor sets; "both" writes both. Every chart also shows the
    Ideal and Random reference curves.

    Args:
        curve_set: Curves from build_curves
        out_dir: Output directory
        series: methods, descriptors or both
        splits: 1-based splits to draw (all when None)
        meths: Methods to draw (all when None)
        binary: Label the y axis as a positive count
        width: SVG width in pixels
        height: SVG height in pixels

    Returns:
        list: Written file paths, in writing order
    """
    if series not in SERIES:
        raise ArgumentError(f"series must be one of {list(SERIES)}, got '{series}'",
                            {"module": "curves", "operation": "render_curve_series"})
    chosen_splits = _filter(curve_set.splits, splits, "splits")
    chosen_methods = _filter(curve_set.methods, meths, "methods")
    set_names = curve_set.set_names
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    jobs = []
    for split in chosen_splits:
        if series in ("methods", "both"):
            for set_name in set_names:
                members = [(method, curve_set.curves[(split, set_name, method)])
                           for method in chosen_methods
                           if (split, set_name, method) in curve_set.curves]
                if members:
                    jobs.append(("methods", split, set_name, members,
                                 lambda i, ms=members: SERIES_COLORS[
                                     chosen_methods.index(ms[i][0]) % len(SERIES_COLORS)],
                                 f"Split {split}: descriptor set {set_name}"))
        if series in ("descriptors", "both"):
            for method in chosen_methods:
                members = [(set_name, curve_set.curves[(split, set_name, method)])
                           for set_name in set_names
                           if (split, set_name, method) in curve_set.curves]
                if members:
                    jobs.append(("descriptors", split, method, members,
                                 lambda i, ms=members: SERIES_COLORS[
                                     set_names.index(ms[i][0]) % len(SERIES_COLORS)],
                                 f"Split {split}: method {method}"))

    written = []
    for kind, split, key, members, color_of, title in jobs:
        path = out_dir / f"acc_{kind}_split{split}_{_safe_key(key)}.svg"
        svg = _plot_one(curve_set, split, key, members, color_of, title, binary, width, height)
        try:
            path.write_text(svg, encoding="utf-8")
        except OSError as e:
            app_logger.error(f"Error writing {path}: {str(e)}")
            raise
        written.append(path)
        app_logger.debug(f"Accumulation curve written to {path}")
    app_logger.info(f"Wrote {len(written)} accumulation-curve SVGs to {out_dir}")
    return written
