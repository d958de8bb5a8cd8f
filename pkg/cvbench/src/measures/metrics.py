from dataclasses import dataclass
from enum import Enum
from typing import Dict, List

from ..io_utils import ResponseKind
from ..utils.errors import IncompatibleMetricError


class Direction(str, Enum):
    HIGHER_IS_BETTER = "HigherIsBetter"
    LOWER_IS_BETTER = "LowerIsBetter"


@dataclass(frozen=True)
class Metric:
    name: str
    kinds: frozenset
    direction: Direction = Direction.HIGHER_IS_BETTER
    uses_m: bool = False
    uses_threshold: bool = False

    @property
    def slug(self) -> str:
        return self.name.replace(" ", "_")

    def applies_to(self, kind: ResponseKind) -> bool:
        return kind in self.kinds


_BINARY = frozenset({ResponseKind.BINARY})
_CONTINUOUS = frozenset({ResponseKind.CONTINUOUS})
_BOTH = _BINARY | _CONTINUOUS

METRICS: Dict[str, Metric] = {
    metric.name: metric for metric in (
        Metric("enhancement", _BOTH, uses_m=True),
        Metric("error rate", _BINARY, Direction.LOWER_IS_BETTER, uses_threshold=True),
        Metric("sensitivity", _BINARY, uses_threshold=True),
        Metric("specificity", _BINARY, uses_threshold=True),
        Metric("ppv", _BINARY, uses_threshold=True),
        Metric("fmeasure", _BINARY, uses_threshold=True),
        Metric("auc", _BINARY),
        Metric("rmse", _CONTINUOUS, Direction.LOWER_IS_BETTER),
        Metric("r2", _CONTINUOUS),
        Metric("rho", _CONTINUOUS),
    )
}

ALIASES = {
    "initial enhancement": "enhancement",
    "ie": "enhancement",
    "error_rate": "error rate",
    "errorrate": "error rate",
    "precision": "ppv",
    "f1": "fmeasure",
    "spearman": "rho",
}


def resolve_metric(name: str) -> Metric:
    key = name.strip().lower().replace("-", " ")
    key = ALIASES.get(key, ALIASES.get(key.replace(" ", "_"), key))
    if key not in METRICS:
        raise IncompatibleMetricError(f"Unknown metric '{name}'. Valid metrics: {list(METRICS)}",
                                      {"module": "measures", "operation": "resolve_metric"})
    return METRICS[key]


def metrics_for(kind: ResponseKind) -> List[str]:
    return [name for name, metric in METRICS.items() if metric.applies_to(kind)]
