import json
from pathlib import Path
from typing import List, Tuple, Union

import pandas as pd

from ..folds import SplitPlan
from ..io_utils import ResponseKind
from ..measures import PredictionStore
from ..utils.errors import PredictionImportError, SchemaError
from ..utils.logger import app_logger
from .model_train import (FOLDS, MANIFEST, OBSERVATIONS, PREDICTIONS, RAW_PREDICTIONS, RunResult,
                          write_run)


def _read_csv(path: Path, operation: str) -> pd.DataFrame:
    try:
        return pd.read_csv(path, keep_default_na=False, dtype={"id": str},
                           float_precision="round_trip")
    except (OSError, pd.errors.ParserError, pd.errors.EmptyDataError) as e:
        app_logger.error(f"Error reading {path}: {str(e)}")
        raise SchemaError(f"Cannot read {path}: {e}",
                          {"module": "orchestrator", "operation": operation}) from e


def load_run(run_dir: Union[str, Path]) -> RunResult:
    """Rebuild the prediction store and split plan from a run directory."""
    run_dir = Path(run_dir)
    manifest_path = run_dir / MANIFEST
    if not manifest_path.exists():
        raise SchemaError(f"{run_dir} is not a run directory (no {MANIFEST})",
                          {"module": "orchestrator", "operation": "load_run"})
    with open(manifest_path, encoding="utf-8") as f:
        manifest = json.load(f)

    observations = _read_csv(run_dir / OBSERVATIONS, "load_run").sort_values("row_index")
    kind = ResponseKind(manifest["dataset"]["response_kind"])
    store = PredictionStore(observations["id"].astype(str).tolist(),
                            observations["response"].to_numpy(dtype=float), kind)
    predictions = _read_csv(run_dir / PREDICTIONS, "load_run")
    store.merge_frame(predictions, source=run_dir / PREDICTIONS)
    if (run_dir / RAW_PREDICTIONS).exists():
        store.merge_raw_frame(_read_csv(run_dir / RAW_PREDICTIONS, "load_run"))

    plan = SplitPlan.from_frame(_read_csv(run_dir / FOLDS, "load_run"),
                                seeds=manifest["seeds"], nfolds=manifest["nfolds"])
    app_logger.debug(f"Loaded run {run_dir}: {len(store)} prediction entries")
    return RunResult(run_dir=run_dir, store=store, plan=plan, manifest=manifest)


def import_predictions(path: Union[str, Path],
                       run_dir: Union[str, Path]) -> List[Tuple[int, str, str]]:
    """
    Merge externally produced out-of-fold predictions into a run.

    The CSV needs columns split, descriptor_set, method, id, prediction;
    every (split, descriptor_set, method) group must cover every dataset
    id exactly once and use a split of the run.

    Returns:
        list: Added (split, descriptor_set, method) keys
    """
    run = load_run(run_dir)
    frame = _read_csv(Path(path), "import_predictions")
    added = run.store.merge_frame(frame, source=path)

    bad_splits = sorted({key[0] for key in added} - set(range(1, run.plan.nsplits + 1)))
    if bad_splits:
        raise PredictionImportError(f"Splits {bad_splits} are not in the run "
                                    f"(1..{run.plan.nsplits})",
                                    {"module": "orchestrator", "operation": "import_predictions"})
    run.manifest.setdefault("imported", []).append({
        "source": str(path),
        "entries": [{"split": s, "descriptor_set": d, "method": m} for s, d, m in added],
    })
    write_run(run.run_dir, run.manifest, run.plan, run.store)
    app_logger.info(f"Imported {len(added)} prediction entries from {path}")
    return added
