import json
import xml.etree.ElementTree as ET

import numpy as np
import pandas as pd
import pytest
from pydantic import ValidationError

from cvbench.src.config import DatasetSchema, RunConfig
from cvbench.src.curves import build_curves
from cvbench.src.folds import make_split_plan
from cvbench.src.learners import RidgeLearner
from cvbench.src.measures import build_measure_table
from cvbench.src.orchestrator import (combine_splits, import_predictions, load_run,
                                      plot_curves, run_model_train, summarize_run)
from cvbench.src.utils.errors import (ConfigError, IncompatibleMetricError, LearnerError,
                                      PredictionImportError)
from conftest import FAST_PARAMS, binary_schema, make_binary_frame


def _small_run(tmp_path, name="run", threads=1, **overrides):
    data = tmp_path / "small.csv"
    if not data.exists():
        make_binary_frame(n=60, positives=12, seed=3).to_csv(data, index=False)
    settings = dict(data_path=data, dataset=binary_schema(), params={"RF": {"n_trees": 5}},
                    nsplits=2, nfolds=3, out_dir=tmp_path / name, threads=threads)
    settings.update(overrides)
    return run_model_train(RunConfig(**settings))


def test_full_grid_shape(binary_run):
    store = binary_run.store
    assert len(store) == 24
    assert store.splits == [1, 2, 3]
    assert store.set_names == ["A", "B"]
    assert store.methods == ["KNN", "Ridge", "Tree", "RF"]
    assert all(store.get(*key).shape == (500,) for key in store.keys())


def test_run_directory_contents(binary_run):
    run_dir = binary_run.run_dir
    for name in ("manifest.json", "folds.csv", "predictions.csv", "observations.csv"):
        assert (run_dir / name).exists()
    manifest = json.loads((run_dir / "manifest.json").read_text(encoding="utf-8"))
    assert manifest["seeds"] == [11111, 22222, 33333]
    assert manifest["nfolds"] == 10
    assert len(manifest["grid"]) == 8
    assert manifest["grid"][3] == {"descriptor_set": "A", "method": "RF",
                                   "params": {"n_trees": 15, "mtry": 2, "min_leaf": 5}}
    assert manifest["dataset"]["response_kind"] == "Binary"
    assert manifest["imported"] == []
    assert "threads" not in manifest["config"]

    folds = pd.read_csv(run_dir / "folds.csv")
    expected = make_split_plan(500, 3, 10).to_frame()
    pd.testing.assert_frame_equal(folds, expected)


def test_binary_scores_in_unit_interval(binary_run):
    store = binary_run.store
    for key in store.keys():
        values = store.get(*key)
        assert values.min() >= 0.0 and values.max() <= 1.0


def test_binary_ridge_keeps_unclamped_values(binary_run):
    store = binary_run.store
    outside = False
    for key in store.keys():
        raw = store.get_raw(*key)
        np.testing.assert_array_equal(store.get(*key), np.clip(raw, 0.0, 1.0))
        if key[2] != "Ridge":
            np.testing.assert_array_equal(raw, store.get(*key))
        else:
            outside = outside or bool(np.any((raw < 0.0) | (raw > 1.0)))
    assert outside
    raw_frame = pd.read_csv(binary_run.run_dir / "raw_predictions.csv")
    assert set(raw_frame["method"]) == {"Ridge"}


def test_load_run_restores_store_exactly(binary_run):
    loaded = load_run(binary_run.run_dir)
    assert list(loaded.store.keys()) == list(binary_run.store.keys())
    for key in binary_run.store.keys():
        np.testing.assert_array_equal(loaded.store.get(*key), binary_run.store.get(*key))
        np.testing.assert_array_equal(loaded.store.get_raw(*key), binary_run.store.get_raw(*key))
    np.testing.assert_array_equal(loaded.plan.assignment, binary_run.plan.assignment)


def test_combine_splits_end_to_end(binary_run, tmp_path):
    assessment = combine_splits(binary_run.run_dir, metric="auc", out_dir=tmp_path)
    assert len(assessment.table.rows) == 24
    anova = assessment.anova
    assert (anova.model.df, anova.error.df, anova.total.df) == (9, 14, 23)
    assert anova.total.ss == pytest.approx(anova.model.ss + anova.error.ss)
    assert len(assessment.comparisons) == 28
    assert assessment.matrix.cells.shape == (8, 8)
    assert assessment.anova_text.startswith("   Analysis of Variance on: 'auc'")

    names = {path.name for path in assessment.paths}
    assert names == {"measures.csv", "pairwise.csv", "mcs_auc.csv", "anova_auc.txt", "mcs_auc.svg"}
    ET.parse(tmp_path / "mcs_auc.svg")
    assert len(pd.read_csv(tmp_path / "pairwise.csv")) == 28

    means = assessment.matrix.means
    assert means["A-KNN"] > 0.75
    assert means["A-KNN"] > means["B-KNN"]


def test_combine_splits_enhancement_default(binary_run, tmp_path):
    assessment = combine_splits(binary_run.run_dir, m=100, out_dir=tmp_path)
    assert assessment.table.metric == "enhancement"
    assert assessment.matrix.subtitle == "m = 100"
    assert (tmp_path / "mcs_enhancement.svg").exists()


def test_combine_splits_rejects_continuous_metric(binary_run, tmp_path):
    with pytest.raises(IncompatibleMetricError):
        combine_splits(binary_run.run_dir, metric="rmse", out_dir=tmp_path)


def test_plot_curves(binary_run, tmp_path):
    paths = plot_curves(binary_run.run_dir, series="methods", out_dir=tmp_path)
    assert len([p for p in paths if p.suffix == ".svg"]) == 6
    curves = pd.read_csv(tmp_path / "curves.csv", keep_default_na=False)
    assert curves["m"].max() == 125
    paths = plot_curves(binary_run.run_dir, series="descriptors", splits=[1],
                        out_dir=tmp_path / "d")
    assert len([p for p in paths if p.suffix == ".svg"]) == 4


def test_summary_lists_every_combo(binary_run):
    table = summarize_run(binary_run.run_dir)
    assert len(table) == 8
    assert "n_best" in table.columns
    assert "auc" in table.columns


def test_results_do_not_depend_on_worker_count(tmp_path):
    serial = _small_run(tmp_path, "serial", threads=1)
    parallel = _small_run(tmp_path, "parallel", threads=3)
    for name in ("predictions.csv", "folds.csv", "observations.csv"):
        assert (serial.run_dir / name).read_bytes() == (parallel.run_dir / name).read_bytes()


def test_rerun_is_bit_identical(tmp_path):
    first = _small_run(tmp_path, "first")
    second = _small_run(tmp_path, "second")
    assert (first.run_dir / "predictions.csv").read_bytes() == \
        (second.run_dir / "predictions.csv").read_bytes()


def test_seed_override_changes_folds(tmp_path):
    run = _small_run(tmp_path, "seeded", seeds=[7, 8])
    assert run.plan.seeds == (7, 8)
    assert np.any(run.plan.assignment != make_split_plan(60, 2, 3).assignment)


def test_learner_failure_names_the_cell(tmp_path):
    with pytest.raises(LearnerError) as info:
        _small_run(tmp_path, "broken", methods=["KNN"], params={"KNN": {"k": 1000}})
    assert info.value.context["method"] == "KNN"
    assert info.value.context["split"] == 1
    assert "fold" in info.value.context


def test_import_predictions_extends_the_grid(tmp_path):
    run = _small_run(tmp_path, methods=["KNN", "Ridge"])
    ids = list(run.store.ids)
    rng = np.random.default_rng(21)
    frame = pd.concat([pd.DataFrame({"split": split, "descriptor_set": "A", "method": "SVM",
                                     "id": ids, "prediction": rng.random(len(ids))})
                       for split in (1, 2)])
    path = tmp_path / "svm.csv"
    frame.to_csv(path, index=False, float_format="%.17g")

    added = import_predictions(path, run.run_dir)
    assert added == [(1, "A", "SVM"), (2, "A", "SVM")]
    reloaded = load_run(run.run_dir)
    assert len(reloaded.store) == 10
    assert reloaded.manifest["imported"][0]["source"] == str(path)
    for split in (1, 2):
        expected = frame.loc[frame["split"] == split, "prediction"].to_numpy()
        np.testing.assert_array_equal(reloaded.store.get(split, "A", "SVM"), expected)

    assessment = combine_splits(run.run_dir, metric="auc", out_dir=tmp_path / "out")
    assert "A-SVM" in assessment.matrix.ordering
    assert len(assessment.comparisons) == 10


def test_import_rejects_unknown_split(tmp_path):
    run = _small_run(tmp_path, methods=["KNN"])
    frame = pd.DataFrame({"split": 5, "descriptor_set": "A", "method": "SVM",
                          "id": list(run.store.ids), "prediction": 0.5})
    path = tmp_path / "bad.csv"
    frame.to_csv(path, index=False)
    before = (run.run_dir / "predictions.csv").read_bytes()
    with pytest.raises(PredictionImportError, match="Splits"):
        import_predictions(path, run.run_dir)
    assert (run.run_dir / "predictions.csv").read_bytes() == before


def test_continuous_run(continuous_csv, tmp_path):
    schema = DatasetSchema(response_col="y", id_col="id")
    run = run_model_train(RunConfig(data_path=continuous_csv, dataset=schema,
                                    methods=["KNN", "Ridge"], nsplits=2, nfolds=5,
                                    out_dir=tmp_path / "run", threads=1))
    assert run.manifest["dataset"]["response_kind"] == "Continuous"
    assessment = combine_splits(run.run_dir, metric="rmse", out_dir=tmp_path)
    assert assessment.matrix.ordering[0] == "Set1-Ridge"
    with pytest.raises(IncompatibleMetricError):
        combine_splits(run.run_dir, metric="auc", out_dir=tmp_path)


def test_run_config_validation(binary_csv, tmp_path):
    base = dict(data_path=binary_csv, dataset=binary_schema(), out_dir=tmp_path)
    for bad in ({"nfolds": 1}, {"nsplits": 0}, {"methods": ["SVM"]}, {"methods": []},
                {"methods": ["KNN", "KNN"]}, {"seeds": [1, 2]}, {"threads": 0}):
        with pytest.raises(ValidationError):
            RunConfig(**base, **bad)


def test_threads_from_environment(binary_csv, tmp_path, monkeypatch):
    monkeypatch.setenv("CVBENCH_THREADS", "3")
    config = RunConfig.from_env(data_path=binary_csv, dataset=binary_schema(), out_dir=tmp_path)
    assert config.n_jobs == 3
    assert RunConfig.from_env(data_path=binary_csv, dataset=binary_schema(),
                              threads=1).n_jobs == 1


def test_garbage_thread_count_is_a_config_error(binary_csv, tmp_path, monkeypatch):
    monkeypatch.setenv("CVBENCH_THREADS", "lots")
    with pytest.raises(ConfigError) as info:
        RunConfig.from_env(data_path=binary_csv, dataset=binary_schema(), out_dir=tmp_path)
    assert info.value.context["variable"] == "CVBENCH_THREADS"


def test_enhancement_matches_accumulation_ratio(binary_run):
    store = binary_run.store
    table = build_measure_table(store, "enhancement", m=100)
    curve_set = build_curves(store, max_select=100)
    for row in table.rows.itertuples(index=False):
        curve = curve_set.curves[(int(row.split), row.descriptor_set, row.method)]
        assert row.value == pytest.approx(curve.at(100) / curve_set.random.at(100), rel=1e-12)


def test_leave_one_out_run(tmp_path):
    frame = make_binary_frame(n=24, positives=6, seed=9)
    data = tmp_path / "loo.csv"
    frame.to_csv(data, index=False)
    run = run_model_train(RunConfig(data_path=data, dataset=binary_schema(),
                                    methods=["KNN", "Ridge"], nsplits=2, nfolds=24,
                                    out_dir=tmp_path / "loo", threads=1))
    for split in (1, 2):
        np.testing.assert_array_equal(np.sort(run.plan.folds(split)), np.arange(1, 25))
    # every split leaves out the same single rows, so the fits coincide
    np.testing.assert_array_equal(run.store.get(1, "A", "Ridge"), run.store.get(2, "A", "Ridge"))
    np.testing.assert_array_equal(run.store.get(1, "B", "KNN"), run.store.get(2, "B", "KNN"))

    x = frame[["A1", "A2", "A3", "A4"]].to_numpy(dtype=float)
    y = frame["Outcome"].to_numpy(dtype=float)
    expected = [RidgeLearner(lam=1.0).fit(np.delete(x, i, axis=0), np.delete(y, i))
                .predict(x[i:i + 1])[0] for i in range(24)]
    np.testing.assert_allclose(run.store.get_raw(1, "A", "Ridge"), expected, rtol=1e-12, atol=1e-14)


def test_assessment_artifacts_are_byte_identical(tmp_path):
    serial = _small_run(tmp_path, "serial", threads=1)
    parallel = _small_run(tmp_path, "parallel", threads=3)
    first = combine_splits(serial.run_dir, metric="auc")
    second = combine_splits(parallel.run_dir, metric="auc")
    assert [p.name for p in first.paths] == [p.name for p in second.paths]
    for a, b in zip(first.paths, second.paths):
        assert a.read_bytes() == b.read_bytes(), a.name

    curves_a = plot_curves(serial.run_dir, series="both")
    curves_b = plot_curves(parallel.run_dir, series="both")
    assert [p.name for p in curves_a] == [p.name for p in curves_b]
    for a, b in zip(curves_a, curves_b):
        assert a.read_bytes() == b.read_bytes(), a.name
