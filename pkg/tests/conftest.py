import numpy as np
import pandas as pd
import pytest

from cvbench.src.config import DatasetSchema, RunConfig, SetSchema
from cvbench.src.io_utils import ResponseKind
from cvbench.src.measures import MeasureTable, PredictionStore
from cvbench.src.orchestrator import run_model_train

# keeps the shared run fast; forest behaviour is covered in test_learners
FAST_PARAMS = {"RF": {"n_trees": 15}}


def make_binary_frame(n=500, positives=50, seed=0):
    """Assay-like data: CID, Outcome, an informative 4-column set A and a weak 3-column set B."""
    rng = np.random.default_rng(seed)
    y = np.zeros(n)
    y[rng.choice(n, positives, replace=False)] = 1
    frame = pd.DataFrame({"CID": [f"C{i:04d}" for i in range(n)], "Outcome": y.astype(int)})
    for j in range(4):
        frame[f"A{j + 1}"] = np.round(rng.normal(size=n) + 1.5 * y, 6)
    for j in range(3):
        frame[f"B{j + 1}"] = np.round(rng.normal(size=n) + 0.4 * y, 6)
    return frame


def make_continuous_frame(n=120, seed=1):
    rng = np.random.default_rng(seed)
    x = rng.normal(size=(n, 3))
    y = 2.0 + x[:, 0] - 0.5 * x[:, 1] + 0.3 * rng.normal(size=n)
    frame = pd.DataFrame({"id": [f"m{i}" for i in range(n)], "y": np.round(y, 6)})
    for j in range(3):
        frame[f"x{j + 1}"] = np.round(x[:, j], 6)
    return frame


def make_table(values, metric="auc", set_names=None, methods=None):
    """MeasureTable from an I x J array; combos are ("S", "M1"), ("S", "M2"), ..."""
    values = np.asarray(values, dtype=float)
    n_splits, n_combos = values.shape
    combos = [(set_names[j] if set_names else "S", methods[j] if methods else f"M{j + 1}")
              for j in range(n_combos)]
    rows = pd.DataFrame([{"split": i + 1, "descriptor_set": combos[j][0],
                          "method": combos[j][1], "value": values[i, j]}
                         for i in range(n_splits) for j in range(n_combos)])
    return MeasureTable(metric=metric, m=None, threshold=None, combos=combos, rows=rows)


def binary_schema():
    return DatasetSchema(response_col="Outcome", id_col="CID",
                         sets=[SetSchema(name="A", length=4), SetSchema(name="B", length=3)])


@pytest.fixture
def binary_csv(tmp_path):
    path = tmp_path / "assay.csv"
    make_binary_frame().to_csv(path, index=False)
    return path


@pytest.fixture
def continuous_csv(tmp_path):
    path = tmp_path / "potency.csv"
    make_continuous_frame().to_csv(path, index=False)
    return path


@pytest.fixture
def toy_store():
    """Two splits, two combos, hand-made scores on six observations."""
    y = np.array([1, 0, 1, 0, 0, 1], dtype=float)
    store = PredictionStore([f"r{i}" for i in range(6)], y, ResponseKind.BINARY)
    store.add(1, "A", "KNN", [0.9, 0.1, 0.8, 0.3, 0.2, 0.7])
    store.add(1, "A", "RF", [0.6, 0.5, 0.4, 0.7, 0.1, 0.9])
    store.add(2, "A", "KNN", [0.8, 0.2, 0.9, 0.1, 0.4, 0.6])
    store.add(2, "A", "RF", [0.3, 0.6, 0.7, 0.2, 0.5, 0.8])
    return store


@pytest.fixture(scope="session")
def binary_run(tmp_path_factory):
    """Full 2 sets x 4 methods x 3 splits x 10 folds run on the 500-row dataset."""
    root = tmp_path_factory.mktemp("binary_run")
    data = root / "assay.csv"
    make_binary_frame().to_csv(data, index=False)
    config = RunConfig(data_path=data, dataset=binary_schema(), params=FAST_PARAMS,
                       out_dir=root / "run", threads=2)
    return run_model_train(config)
