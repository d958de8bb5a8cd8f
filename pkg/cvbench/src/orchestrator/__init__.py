from .assessment import (Assessment, assess_store, combine_splits, plot_curves,
                         summarize_run)
from .model_train import (CvTask, RunResult, TaskResult, assemble_store, build_grid,
                          run_model_train, run_task, write_run)
from .run_store import import_predictions, load_run

__all__ = [
    'Assessment',
    'assess_store',
    'combine_splits',
    'plot_curves',
    'summarize_run',
    'CvTask',
    'RunResult',
    'TaskResult',
    'assemble_store',
    'build_grid',
    'run_model_train',
    'run_task',
    'write_run',
    'import_predictions',
    'load_run',
]
