# src/io_utils/io_utils.py
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd
from pydantic import BaseModel, field_validator, model_validator

from ..utils.errors import ArgumentError, DataParseError, DataValidationError, SchemaError
from ..utils.logger import app_logger


class ResponseKind(str, Enum):
    BINARY = "Binary"
    CONTINUOUS = "Continuous"


@dataclass(frozen=True)
class ResponseVector:
    values: np.ndarray
    kind: ResponseKind

    @property
    def is_binary(self) -> bool:
        return self.kind is ResponseKind.BINARY


@dataclass(frozen=True)
class Dataset:
    """
    Observations with opaque string ids, one response and ordered, named
    descriptor-set blocks. Arrays are marked read-only on construction.
    """
    ids: Tuple[str, ...]
    response: ResponseVector
    descriptor_sets: Tuple[Tuple[str, np.ndarray], ...]

    def __post_init__(self):
        n = len(self.ids)
        if len(set(self.ids)) != n:
            raise DataValidationError("Observation ids must be unique",
                                      {"module": "dataio", "operation": "Dataset"})
        if len(self.response.values) != n:
            raise DataValidationError("Response length does not match id count",
                                      {"module": "dataio", "operation": "Dataset"})
        names = [name for name, _ in self.descriptor_sets]
        if len(set(names)) != len(names) or any(not name for name in names):
            raise DataValidationError("Descriptor-set names must be unique and nonempty",
                                      {"module": "dataio", "operation": "Dataset"})
        for name, matrix in self.descriptor_sets:
            if matrix.ndim != 2 or matrix.shape[0] != n:
                raise DataValidationError(
                    f"Descriptor set '{name}' has {matrix.shape[0]} rows, expected {n}",
                    {"module": "dataio", "operation": "Dataset", "set": name})
            matrix.setflags(write=False)
        self.response.values.setflags(write=False)

    @property
    def n(self) -> int:
        return len(self.ids)

    @property
    def set_names(self) -> List[str]:
        return [name for name, _ in self.descriptor_sets]

    def descriptors(self, name: str) -> np.ndarray:
        for set_name, matrix in self.descriptor_sets:
            if set_name == name:
                return matrix
        raise ArgumentError(f"Unknown descriptor set '{name}'. Available: {self.set_names}",
                            {"module": "dataio", "operation": "descriptors"})


class DescriptorSetSpec(BaseModel):
    """
    Descriptor-set layout: contiguous column blocks given by ``lengths``
    (in file order), or explicit ``columns`` per set.
    """
    lengths: Optional[List[int]] = None
    names: Optional[List[str]] = None
    columns: Optional[List[List[str]]] = None

    @field_validator('lengths')
    @classmethod
    def validate_lengths(cls, v):
        if v is not None and (not v or any(length < 1 for length in v)):
            raise ValueError('lengths must be a nonempty list of positive integers')
        return v

    @model_validator(mode='after')
    def validate_layout(self):
        if (self.lengths is None) == (self.columns is None):
            raise ValueError('exactly one of lengths or columns must be given')
        if self.columns is not None and (not self.columns or any(not c for c in self.columns)):
            raise ValueError('every descriptor set needs at least one column')
        count = len(self.lengths) if self.lengths is not None else len(self.columns)
        if self.names is not None:
            if len(self.names) != count:
                raise ValueError('names must have the same length as the set layout')
            if len(set(self.names)) != count or any(not name for name in self.names):
                raise ValueError('descriptor-set names must be unique and nonempty')
        return self

    def set_names(self) -> List[str]:
        count = len(self.lengths) if self.lengths is not None else len(self.columns)
        return list(self.names) if self.names else [f"Set{i + 1}" for i in range(count)]


def validate_response(values: Sequence[float], force_continuous: bool = False) -> ResponseVector:
    """
    Classify a response as Binary (every value in {0, 1}) or Continuous.

    Args:
        values: Response values
        force_continuous: Treat an all-{0,1} response as Continuous

    Returns:
        ResponseVector
    """
    y = np.asarray(values, dtype=float)
    context = {"module": "dataio", "operation": "validate_response"}
    if y.ndim != 1 or y.size < 2:
        raise DataValidationError("A response needs at least 2 values", context)
    if not np.all(np.isfinite(y)):
        bad = int(np.flatnonzero(~np.isfinite(y))[0])
        raise DataValidationError(f"Response value at row {bad + 1} is not finite",
                                  {**context, "row": bad + 1})

    if not force_continuous and np.all((y == 0) | (y == 1)):
        if np.all(y == y[0]):
            raise DataValidationError(
                f"Binary response has a single class ({int(y[0])}); both 0 and 1 must occur",
                context)
        return ResponseVector(values=y.copy(), kind=ResponseKind.BINARY)
    return ResponseVector(values=y.copy(), kind=ResponseKind.CONTINUOUS)


def binarize_response(values: Sequence[float], threshold: float) -> np.ndarray:
    """Convert a continuous response to 0/1 with the y >= threshold rule."""
    return (np.asarray(values, dtype=float) >= threshold).astype(float)


class DatasetHandler:
    """Reads a header-bearing comma-separated file into a Dataset."""

    def __init__(self, filepath: Union[str, Path]):
        self.filepath = Path(filepath)
        self.frame = None
        app_logger.debug(f"Initializing dataset handler for file: {self.filepath}")

    def read(self) -> pd.DataFrame:
        """Read every cell as text; numeric parsing happens per column."""
        try:
            self.frame = pd.read_csv(self.filepath, sep=",", header=0, dtype=str,
                                     keep_default_na=False)
        except (OSError, pd.errors.ParserError, pd.errors.EmptyDataError) as e:
            app_logger.error(f"Error reading dataset file: {str(e)}")
            raise DataParseError(f"Cannot read CSV file {self.filepath}: {e}",
                                 {"module": "dataio", "operation": "load_dataset"}) from e
        app_logger.info(f"Read {len(self.frame)} rows x {self.frame.shape[1]} columns "
                        f"from {self.filepath}")
        return self.frame

    def require_column(self, name: str) -> None:
        if name not in self.frame.columns:
            raise SchemaError(f"Column '{name}' not found in {self.filepath}",
                              {"module": "dataio", "operation": "load_dataset", "column": name})

    def numeric_column(self, name: str) -> np.ndarray:
        """Parse one column as float, naming the first bad cell on failure."""
        cells = self.frame[name]
        for row, cell in enumerate(cells):
            text = cell.strip()
            if text == "" or text.upper() in ("NA", "NAN"):
                raise DataParseError(f"Missing value at row {row + 1}, column '{name}'",
                                     {"module": "dataio", "operation": "load_dataset",
                                      "row": row + 1, "column": name})
            try:
                finite = bool(np.isfinite(float(text)))
            except ValueError:
                finite = False
            if not finite:
                raise DataParseError(
                    f"Non-numeric or non-finite value '{cell}' at row {row + 1}, column '{name}'",
                    {"module": "dataio", "operation": "load_dataset",
                     "row": row + 1, "column": name})
        return np.array([float(cell) for cell in cells], dtype=float)

    def descriptor_blocks(self, candidates: List[str],
                          spec: Optional[DescriptorSetSpec]) -> List[Tuple[str, List[str]]]:
        """Resolve the descriptor-set layout to (name, column names) blocks."""
        if spec is None:
            if not candidates:
                raise SchemaError("No descriptor columns left after removing id and response",
                                  {"module": "dataio", "operation": "load_dataset"})
            return [("Set1", list(candidates))]

        names = spec.set_names()
        if spec.columns is not None:
            blocks = []
            used = set()
            for name, columns in zip(names, spec.columns):
                for column in columns:
                    if column not in candidates:
                        raise SchemaError(
                            f"Descriptor column '{column}' of set '{name}' not found",
                            {"module": "dataio", "operation": "load_dataset", "column": column})
                    if column in used:
                        raise SchemaError(f"Column '{column}' assigned to more than one set",
                                          {"module": "dataio", "operation": "load_dataset",
                                           "column": column})
                    used.add(column)
                blocks.append((name, list(columns)))
            return blocks

        total = sum(spec.lengths)
        if total > len(candidates):
            raise SchemaError(
                f"Descriptor-set lengths sum to {total} but only {len(candidates)} "
                f"descriptor columns are available",
                {"module": "dataio", "operation": "load_dataset"})
        if total < len(candidates):
            app_logger.warning(f"{len(candidates) - total} trailing descriptor columns "
                               f"are not assigned to any descriptor set and are ignored")
        blocks = []
        start = 0
        for name, length in zip(names, spec.lengths):
            blocks.append((name, candidates[start:start + length]))
            start += length
        return blocks


def load_dataset(path: Union[str, Path],
                 response_col: str,
                 id_col: Optional[str] = None,
                 spec: Optional[DescriptorSetSpec] = None,
                 force_continuous: bool = False,
                 response_threshold: Optional[float] = None) -> Dataset:
    """
    Load a CSV dataset.

    Args:
        path: CSV file with a header row
        response_col: Response column name
        id_col: Optional id column name; ids are synthesized as 1..n when absent
        spec: Descriptor-set layout; None means a single set "Set1" of all
            remaining columns
        force_continuous: Keep an all-{0,1} response Continuous
        response_threshold: Convert the response to 0/1 with y >= threshold

    Returns:
        Dataset
    """
    handler = DatasetHandler(path)
    frame = handler.read()
    handler.require_column(response_col)
    if id_col is not None:
        handler.require_column(id_col)

    if id_col is not None:
        ids = tuple(cell.strip() for cell in frame[id_col])
    else:
        ids = tuple(str(i + 1) for i in range(len(frame)))

    candidates = [c for c in frame.columns if c not in (response_col, id_col)]
    blocks = handler.descriptor_blocks(candidates, spec)

    y = handler.numeric_column(response_col)
    if response_threshold is not None:
        y = binarize_response(y, response_threshold)
        app_logger.info(f"Response binarized at threshold {response_threshold}: "
                        f"{int(y.sum())} positives")
    response = validate_response(y, force_continuous=force_continuous)

    descriptor_sets = []
    for name, columns in blocks:
        matrix = np.column_stack([handler.numeric_column(c) for c in columns])
        descriptor_sets.append((name, matrix))
        app_logger.debug(f"Descriptor set '{name}': {len(columns)} columns")

    dataset = Dataset(ids=ids, response=response, descriptor_sets=tuple(descriptor_sets))
    app_logger.info(f"Loaded dataset: n={dataset.n}, response={response.kind.value}, "
                    f"sets={[(name, m.shape[1]) for name, m in descriptor_sets]}")
    return dataset


def write_dataset(dataset: Dataset, path: Union[str, Path], response_col: str = "response",
                  id_col: Optional[str] = "id") -> Path:
    """Write a Dataset back to CSV; floats use 17 significant digits so a reload is exact."""
    path = Path(path)
    frame = pd.DataFrame()
    if id_col is not None:
        frame[id_col] = list(dataset.ids)
    frame[response_col] = dataset.response.values
    for name, matrix in dataset.descriptor_sets:
        for j in range(matrix.shape[1]):
            frame[f"{name}_{j + 1}"] = matrix[:, j]
    frame.to_csv(path, index=False, float_format="%.17g")
    app_logger.debug(f"Dataset written to {path}")
    return path
