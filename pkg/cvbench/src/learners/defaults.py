"""
Default tuning parameters for every method name the toolkit knows.

Only KNN, Ridge, Tree and RF are fitted in-process; the remaining entries
are carried as data so that parameter files written for the full method
list still validate, and so ``cvbench defaults`` prints the whole table.
"""

import copy
import math
from typing import Any, Dict, Mapping

from ..utils.errors import ArgumentError
from ..utils.logger import app_logger

ParamRegistry = Dict[str, Dict[str, Any]]

BUILTIN_METHODS = ("KNN", "Ridge", "Tree", "RF")
EXTERNAL_METHODS = ("ENet", "Lasso", "LAR", "NNet", "PLSLDA", "PLS", "PCR", "RPart", "SVM")

# (lower bound, integer-valued) per built-in parameter
PARAM_RANGES = {
    "KNN": {"k": (1, True)},
    "Ridge": {"lambda": (0, False)},
    "Tree": {"max_depth": (1, True), "min_leaf": (1, True)},
    "RF": {"n_trees": (1, True), "mtry": (1, True), "min_leaf": (1, True)},
}


def make_model_defaults(n: int, p: int, classify: bool = True, nfolds: int = 10) -> ParamRegistry:
    """
    Build the default parameter map of every method.

    Args:
        n: Number of observations
        p: Number of descriptors in the descriptor set being fitted
        classify: Whether the response is binary
        nfolds: Number of cross-validation folds

    Returns:
        ParamRegistry: method name -> {param: value}; methods without
        tuning parameters map to an empty dict
    """
    if n < 1 or p < 1:
        raise ArgumentError(f"make_model_defaults needs n >= 1 and p >= 1 (got n={n}, p={p})",
                            {"module": "learners", "operation": "make_model_defaults"})
    smallest_train = n - math.ceil(n / max(nfolds, 1))
    registry: ParamRegistry = {
        "NNet": {"size": 2, "decay": 0},
        "PCR": {},
        "ENet": {"lambda": 1},
        "Lasso": {},
        "LAR": {},
        "PLS": {},
        "RPart": {},
        "SVM": {},
        "KNN": {"k": max(1, min(10, smallest_train))},
        "Ridge": {"lambda": 1.0},
        "Tree": {"max_depth": 30, "min_leaf": 5},
        "RF": {"n_trees": 100, "mtry": max(1, math.ceil(math.sqrt(p))), "min_leaf": 5},
    }
    if classify:
        registry["PLSLDA"] = {}
    return registry


def _check_value(method: str, name: str, value: Any) -> Any:
    if method not in PARAM_RANGES:
        return value
    lower, integral = PARAM_RANGES[method][name]
    context = {"module": "learners", "operation": "apply_user_params",
               "method": method, "param": name}
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ArgumentError(f"{method}.{name} must be numeric, got {value!r}", context)
    if integral and float(value) != int(value):
        raise ArgumentError(f"{method}.{name} must be an integer, got {value!r}", context)
    if not math.isfinite(value) or value < lower:
        raise ArgumentError(f"{method}.{name} must be >= {lower}, got {value!r}", context)
    return int(value) if integral else float(value)


def apply_user_params(registry: ParamRegistry,
                      overrides: Mapping[str, Mapping[str, Any]]) -> ParamRegistry:
    """
    Merge user overrides over a default registry.

    Unknown methods and unknown parameter names are rejected, so a typo
    in a parameter file fails before any model is fitted.
    """
    merged = copy.deepcopy(registry)
    for method, params in (overrides or {}).items():
        if method not in merged:
            raise ArgumentError(f"Unknown method '{method}' in parameter overrides. "
                                f"Known: {sorted(merged)}",
                                {"module": "learners", "operation": "apply_user_params"})
        for name, value in params.items():
            if name not in merged[method]:
                raise ArgumentError(
                    f"Unknown parameter '{name}' for {method}. "
                    f"Known: {sorted(merged[method])}",
                    {"module": "learners", "operation": "apply_user_params", "method": method})
            merged[method][name] = _check_value(method, name, value)
            app_logger.debug(f"Parameter override {method}.{name} = {value}")
    return merged
