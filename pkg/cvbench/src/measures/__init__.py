from .measure_table import MeasureTable, build_measure_table
from .metrics import ALIASES, METRICS, Direction, Metric, metrics_for, resolve_metric
from .performance import (ConfusionCounts, auc, binary_measures, confusion_counts,
                          continuous_measures, initial_enhancement, midranks, selection_order)
from .prediction_store import Combo, PredictionStore, combo_label

__all__ = [
    'MeasureTable',
    'build_measure_table',
    'ALIASES',
    'METRICS',
    'Direction',
    'Metric',
    'metrics_for',
    'resolve_metric',
    'ConfusionCounts',
    'auc',
    'binary_measures',
    'confusion_counts',
    'continuous_measures',
    'initial_enhancement',
    'midranks',
    'selection_order',
    'Combo',
    'PredictionStore',
    'combo_label',
]
