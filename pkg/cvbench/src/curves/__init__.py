from .accumulation import (IDEAL, RANDOM, AccumulationCurve, CurveSet, accumulation,
                           build_curves, default_max_select, ideal_curve, random_curve)
from .render import MARKERS, SERIES, SERIES_COLORS, CurvePlot, render_curve_series

__all__ = [
    'IDEAL',
    'RANDOM',
    'AccumulationCurve',
    'CurveSet',
    'accumulation',
    'build_curves',
    'default_max_select',
    'ideal_curve',
    'random_curve',
    'MARKERS',
    'SERIES',
    'SERIES_COLORS',
    'CurvePlot',
    'render_curve_series',
]
