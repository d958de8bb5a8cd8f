import numpy as np
import pandas as pd
import pytest

from cvbench.src.config import SetSchema
from cvbench.src.io_utils import (DescriptorSetSpec, ResponseKind, binarize_response,
                                  load_dataset, validate_response, write_dataset)
from cvbench.src.utils.errors import DataParseError, DataValidationError, SchemaError


def _write(tmp_path, frame, name="data.csv"):
    path = tmp_path / name
    frame.to_csv(path, index=False)
    return path


def test_load_with_named_blocks(binary_csv):
    spec = DescriptorSetSpec(lengths=[4, 3], names=["BurdenNumbers", "Pharmacophores"])
    dataset = load_dataset(binary_csv, "Outcome", id_col="CID", spec=spec)

    assert dataset.n == 500
    assert dataset.set_names == ["BurdenNumbers", "Pharmacophores"]
    assert dataset.descriptors("BurdenNumbers").shape == (500, 4)
    assert dataset.descriptors("Pharmacophores").shape == (500, 3)
    assert dataset.response.kind is ResponseKind.BINARY
    assert dataset.ids[0] == "C0000"


def test_load_without_spec_uses_one_set(binary_csv):
    dataset = load_dataset(binary_csv, "Outcome", id_col="CID")
    assert dataset.set_names == ["Set1"]
    assert dataset.descriptors("Set1").shape == (500, 7)


def test_ids_synthesized_when_absent(tmp_path):
    path = _write(tmp_path, pd.DataFrame({"y": [0, 1, 1], "x": [1.0, 2.0, 3.0]}))
    dataset = load_dataset(path, "y")
    assert dataset.ids == ("1", "2", "3")


def test_explicit_columns(binary_csv):
    spec = DescriptorSetSpec(columns=[["B1", "A2"], ["A1"]], names=["Mixed", "Single"])
    dataset = load_dataset(binary_csv, "Outcome", id_col="CID", spec=spec)
    raw = pd.read_csv(binary_csv, float_precision="round_trip")
    np.testing.assert_array_equal(dataset.descriptors("Mixed")[:, 0], raw["B1"].to_numpy())
    assert dataset.descriptors("Single").shape == (500, 1)


def test_single_class_binary_response(tmp_path):
    path = _write(tmp_path, pd.DataFrame({"y": [0, 0, 0], "x": [1.0, 2.0, 3.0]}))
    with pytest.raises(DataValidationError, match="single class"):
        load_dataset(path, "y")


def test_missing_column_is_named(binary_csv):
    with pytest.raises(SchemaError, match="Activity"):
        load_dataset(binary_csv, "Activity")


def test_non_numeric_cell_reports_row_and_column(tmp_path):
    path = _write(tmp_path, pd.DataFrame({"y": [0, 1, 1], "x": ["1.0", "abc", "3.0"]}))
    with pytest.raises(DataParseError) as info:
        load_dataset(path, "y")
    assert info.value.context["row"] == 2
    assert info.value.context["column"] == "x"


def test_lengths_exceeding_columns(binary_csv):
    with pytest.raises(SchemaError):
        load_dataset(binary_csv, "Outcome", id_col="CID",
                     spec=DescriptorSetSpec(lengths=[4, 4]))


def test_trailing_columns_are_ignored(binary_csv):
    dataset = load_dataset(binary_csv, "Outcome", id_col="CID",
                           spec=DescriptorSetSpec(lengths=[4]))
    assert dataset.set_names == ["Set1"]
    assert dataset.descriptors("Set1").shape == (500, 4)


def test_spec_requires_one_layout():
    with pytest.raises(ValueError):
        DescriptorSetSpec()
    with pytest.raises(ValueError):
        DescriptorSetSpec(lengths=[2], names=["a", "b"])


def test_empty_column_list_is_rejected():
    with pytest.raises(ValueError, match="at least one column"):
        DescriptorSetSpec(columns=[["A1"], []], names=["A", "Empty"])
    with pytest.raises(ValueError, match="at least one column"):
        SetSchema(name="Empty", columns=[])


def test_validate_response_kinds():
    assert validate_response([0, 1, 1, 0]).kind is ResponseKind.BINARY
    assert validate_response([0.2, 1.0, 0.0]).kind is ResponseKind.CONTINUOUS
    assert validate_response([0, 1, 1], force_continuous=True).kind is ResponseKind.CONTINUOUS


@pytest.mark.parametrize("values", [[0, 0, 0], [1.0, float("nan")], [float("inf"), 1.0], [1.0]])
def test_validate_response_rejects(values):
    with pytest.raises(DataValidationError):
        validate_response(values)


def test_binarize_response_threshold():
    np.testing.assert_array_equal(binarize_response([0.1, 5.0, 6.2, 6.0], 6.0), [0, 0, 1, 1])


def test_load_with_response_threshold(continuous_csv):
    dataset = load_dataset(continuous_csv, "y", id_col="id", response_threshold=2.0)
    assert dataset.response.kind is ResponseKind.BINARY


def test_write_and_reload_is_exact(tmp_path, continuous_csv):
    spec = DescriptorSetSpec(lengths=[2, 1], names=["P", "Q"])
    original = load_dataset(continuous_csv, "y", id_col="id", spec=spec)
    path = write_dataset(original, tmp_path / "copy.csv", response_col="y", id_col="id")
    reloaded = load_dataset(path, "y", id_col="id", spec=spec)

    assert reloaded.ids == original.ids
    np.testing.assert_array_equal(reloaded.response.values, original.response.values)
    for name in ("P", "Q"):
        np.testing.assert_array_equal(reloaded.descriptors(name), original.descriptors(name))


def test_dataset_arrays_are_read_only(binary_csv):
    dataset = load_dataset(binary_csv, "Outcome", id_col="CID")
    with pytest.raises(ValueError):
        dataset.descriptors("Set1")[0, 0] = 1.0
