"""
Cross-validation driver.

Every (split, descriptor set, method, fold) task trains on the rows
outside the fold and predicts the fold. Tasks run through joblib; results
come back in task order and are written into the PredictionStore by the
parent process only, so the run directory does not depend on the number
of workers.
"""
import json
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Tuple

import numpy as np
import pandas as pd
from joblib import Parallel, delayed

from ... import __version__
from ..config import RunConfig
from ..folds import SplitPlan, derive_seed, make_split_plan
from ..io_utils import Dataset, load_dataset
from ..learners import MethodSpec, apply_user_params, fit_predict, make_model_defaults
from ..measures import PredictionStore, combo_label
from ..utils.errors import CvbenchError, LearnerError
from ..utils.logger import app_logger

MANIFEST = "manifest.json"
FOLDS = "folds.csv"
PREDICTIONS = "predictions.csv"
RAW_PREDICTIONS = "raw_predictions.csv"
OBSERVATIONS = "observations.csv"
FLOAT_FORMAT = "%.17g"


@dataclass(frozen=True)
class CvTask:
    split: int
    combo_index: int
    set_name: str
    method: str
    fold: int
    seed: int


@dataclass(frozen=True)
class TaskResult:
    task: CvTask
    test_rows: np.ndarray
    train_folds: Tuple[int, ...]
    predictions: np.ndarray
    raw_predictions: np.ndarray


@dataclass
class RunResult:
    run_dir: Path
    store: PredictionStore
    plan: SplitPlan
    manifest: Dict[str, Any]


def _task_context(task: CvTask) -> Dict[str, Any]:
    return {"module": "orchestrator", "operation": "run_model_train", "split": task.split,
            "descriptor_set": task.set_name, "method": task.method, "fold": task.fold,
            "cell": f"split {task.split}, {combo_label((task.set_name, task.method))}, "
                    f"fold {task.fold}"}


def run_task(task: CvTask, spec: MethodSpec, x: np.ndarray, y: np.ndarray,
             folds: np.ndarray) -> TaskResult:
    """Fit on every fold but ``task.fold`` and predict the held-out rows."""
    test_rows = np.flatnonzero(folds == task.fold)
    train_rows = np.flatnonzero(folds != task.fold)
    try:
        predictions, raw = fit_predict(spec, x[train_rows], y[train_rows], x[test_rows],
                                       task.seed, return_raw=True)
    except CvbenchError as e:
        raise LearnerError(f"Task ({_task_context(task)['cell']}) failed: {e}",
                           {**e.context, **_task_context(task)}) from e
    except Exception as e:
        raise LearnerError(f"Task ({_task_context(task)['cell']}) failed: {e}",
                           _task_context(task)) from e
    return TaskResult(task=task, test_rows=test_rows,
                      train_folds=tuple(int(f) for f in np.unique(folds[train_rows])),
                      predictions=np.asarray(predictions, dtype=float),
                      raw_predictions=np.asarray(raw, dtype=float))


def build_grid(dataset: Dataset, config: RunConfig) -> List[Dict[str, Any]]:
    """Expand descriptor sets x methods into validated method specs, in grid order."""
    classify = dataset.response.is_binary
    grid = []
    for set_name in dataset.set_names:
        p = dataset.descriptors(set_name).shape[1]
        registry = apply_user_params(
            make_model_defaults(dataset.n, p, classify=classify, nfolds=config.nfolds),
            config.params)
        for method in config.methods:
            spec = MethodSpec(method=method, params=registry[method], task=dataset.response.kind)
            grid.append({"descriptor_set": set_name, "method": method, "spec": spec})
    return grid


def assemble_store(dataset: Dataset, plan: SplitPlan, results: List[TaskResult]) -> PredictionStore:
    """
    Pool task predictions into out-of-fold vectors, checking that every
    row is predicted exactly once per (split, combo) by a task whose
    training folds exclude the row's fold.
    """
    pooled: Dict[Tuple[int, str, str], np.ndarray] = {}
    pooled_raw: Dict[Tuple[int, str, str], np.ndarray] = {}
    source_fold: Dict[Tuple[int, str, str], np.ndarray] = {}
    order: List[Tuple[int, str, str]] = []
    for result in results:
        task = result.task
        key = (task.split, task.set_name, task.method)
        if key not in pooled:
            pooled[key] = np.full(dataset.n, np.nan)
            pooled_raw[key] = np.full(dataset.n, np.nan)
            source_fold[key] = np.zeros(dataset.n, dtype=int)
            order.append(key)
        context = _task_context(task)
        row_folds = plan.folds(task.split)[result.test_rows]
        if task.fold in result.train_folds or np.any(row_folds != task.fold):
            raise LearnerError(f"Task ({context['cell']}) trained on its own held-out fold",
                               context)
        if np.any(source_fold[key][result.test_rows] != 0):
            raise LearnerError(f"Task ({context['cell']}) predicted rows twice", context)
        if len(result.predictions) != len(result.test_rows):
            raise LearnerError(f"Task ({context['cell']}) returned {len(result.predictions)} "
                               f"predictions for {len(result.test_rows)} rows", context)
        pooled[key][result.test_rows] = result.predictions
        pooled_raw[key][result.test_rows] = result.raw_predictions
        source_fold[key][result.test_rows] = task.fold

    store = PredictionStore(dataset.ids, dataset.response.values, dataset.response.kind)
    for key in order:
        if np.any(source_fold[key] == 0):
            raise LearnerError(f"Entry {key} is missing out-of-fold predictions",
                               {"module": "orchestrator", "operation": "run_model_train"})
        store.add(*key, pooled[key])
        if not np.array_equal(pooled_raw[key], pooled[key]):
            store.set_raw(*key, pooled_raw[key])
    return store


def write_run(run_dir: Path, manifest: Dict[str, Any], plan: SplitPlan,
              store: PredictionStore) -> None:
    run_dir.mkdir(parents=True, exist_ok=True)
    with open(run_dir / MANIFEST, "w", encoding="utf-8") as f:
        json.dump(manifest, f, indent=2, sort_keys=True)
        f.write("\n")
    plan.to_frame().to_csv(run_dir / FOLDS, index=False)
    pd.DataFrame({"row_index": np.arange(store.n), "id": list(store.ids),
                  "response": store.response}).to_csv(run_dir / OBSERVATIONS, index=False,
                                                      float_format=FLOAT_FORMAT)
    store.to_frame().to_csv(run_dir / PREDICTIONS, index=False, float_format=FLOAT_FORMAT)
    raw = store.raw_frame()
    if len(raw):
        raw.to_csv(run_dir / RAW_PREDICTIONS, index=False, float_format=FLOAT_FORMAT)


def run_model_train(config: RunConfig) -> RunResult:
    """
    Fit every descriptor set x method combination under repeated k-fold
    cross-validation and persist the run directory.

    Args:
        config: Run configuration

    Returns:
        RunResult: run directory, prediction store, split plan and manifest
    """
    started = time.perf_counter()
    run_dir = config.ensure_out_dir()
    schema = config.dataset
    dataset = load_dataset(config.data_path, schema.response_col, id_col=schema.id_col,
                           spec=schema.descriptor_spec(),
                           force_continuous=schema.force_continuous,
                           response_threshold=schema.response_threshold)
    plan = make_split_plan(dataset.n, config.nsplits, config.nfolds, config.seeds)
    grid = build_grid(dataset, config)

    tasks = [
        CvTask(split=split, combo_index=combo_index, set_name=cell["descriptor_set"],
               method=cell["method"], fold=fold,
               seed=derive_seed(config.base_seed, split, combo_index, fold))
        for split in range(1, plan.nsplits + 1)
        for combo_index, cell in enumerate(grid)
        for fold in range(1, plan.nfolds + 1)
    ]
    app_logger.info(f"Running {len(tasks)} CV tasks: {plan.nsplits} splits x {len(grid)} "
                    f"combos x {plan.nfolds} folds on {config.n_jobs} workers")

    y = dataset.response.values
    try:
        results = Parallel(n_jobs=config.n_jobs)(
            delayed(run_task)(task, grid[task.combo_index]["spec"],
                              dataset.descriptors(task.set_name), y, plan.folds(task.split))
            for task in tasks
        )
    except LearnerError as e:
        app_logger.error(f"Run aborted: {str(e)}", extra={"context": e.context})
        raise
    store = assemble_store(dataset, plan, results)

    manifest = {
        "tool": "cvbench",
        "version": __version__,
        "config": config.model_dump(mode="json", exclude={"threads"}),
        "dataset": {
            "path": str(config.data_path),
            "n": dataset.n,
            "response_kind": dataset.response.kind.value,
            "descriptor_sets": [{"name": name, "p": int(matrix.shape[1])}
                                for name, matrix in dataset.descriptor_sets],
        },
        "nsplits": plan.nsplits,
        "nfolds": plan.nfolds,
        "seeds": list(plan.seeds),
        "grid": [{"descriptor_set": cell["descriptor_set"], "method": cell["method"],
                  "params": cell["spec"].params} for cell in grid],
        "imported": [],
        "versions": {"numpy": np.__version__, "pandas": pd.__version__},
    }
    write_run(run_dir, manifest, plan, store)
    app_logger.info(f"Run written to {run_dir}: {len(store)} OOF vectors of length {dataset.n} "
                    f"in {time.perf_counter() - started:.1f}s")
    return RunResult(run_dir=run_dir, store=store, plan=plan, manifest=manifest)
