"""
Run configuration models.
"""
import json
import os
from pathlib import Path
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, field_validator, model_validator

from ...config import (DEFAULT_IE_TESTS, DEFAULT_METHODS, DEFAULT_METRIC, DEFAULT_NFOLDS,
                       DEFAULT_NSPLITS, DEFAULT_THRESHOLD, SEED_STEP)
from ..io_utils import DescriptorSetSpec
from ..utils.errors import ConfigError, SchemaError
from ..utils.logger import app_logger


class SetSchema(BaseModel):
    """One descriptor set: a contiguous width or an explicit column list."""
    name: str
    length: Optional[int] = None
    columns: Optional[List[str]] = None

    @model_validator(mode='after')
    def validate_layout(self):
        if (self.length is None) == (self.columns is None):
            raise ValueError(f"set '{self.name}' needs exactly one of length or columns")
        if self.length is not None and self.length < 1:
            raise ValueError(f"set '{self.name}' length must be positive")
        if self.columns is not None and not self.columns:
            raise ValueError(f"set '{self.name}' needs at least one column")
        return self


class DatasetSchema(BaseModel):
    """Dataset layout, given on the command line or by a JSON sidecar file."""
    response_col: str
    id_col: Optional[str] = None
    sets: Optional[List[SetSchema]] = None
    force_continuous: bool = False
    response_threshold: Optional[float] = None

    @field_validator('sets')
    @classmethod
    def validate_sets(cls, v):
        if v is None:
            return v
        if not v:
            raise ValueError('sets must not be empty')
        kinds = {s.length is not None for s in v}
        if len(kinds) > 1:
            raise ValueError('sets must all use length or all use columns')
        return v

    def descriptor_spec(self) -> Optional[DescriptorSetSpec]:
        if self.sets is None:
            return None
        names = [s.name for s in self.sets]
        if self.sets[0].length is not None:
            return DescriptorSetSpec(lengths=[s.length for s in self.sets], names=names)
        return DescriptorSetSpec(columns=[s.columns for s in self.sets], names=names)

    @classmethod
    def from_json(cls, path) -> 'DatasetSchema':
        """
        Load a sidecar schema file of the form
        {"id_col": ..., "response_col": ..., "sets": [{"name": ..., "length": ...}]}.
        """
        try:
            with open(path, encoding="utf-8") as f:
                payload = json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            raise SchemaError(f"Cannot read schema file {path}: {e}",
                              {"module": "dataio", "operation": "load_dataset"}) from e
        return cls(**payload)


class RunConfig(BaseModel):
    """Everything a cross-validation run needs; echoed into manifest.json."""

    data_path: Path
    dataset: DatasetSchema
    methods: List[str] = list(DEFAULT_METHODS)
    params: Dict[str, Dict[str, Any]] = {}
    nfolds: int = DEFAULT_NFOLDS
    nsplits: int = DEFAULT_NSPLITS
    seeds: Optional[List[int]] = None
    base_seed: int = SEED_STEP
    threshold: float = DEFAULT_THRESHOLD
    metric: str = DEFAULT_METRIC
    m: int = DEFAULT_IE_TESTS
    out_dir: Path = Path("cvbench_run")
    threads: Optional[int] = None

    @field_validator('nfolds')
    @classmethod
    def validate_nfolds(cls, v):
        if v < 2:
            raise ValueError('nfolds must be at least 2')
        return v

    @field_validator('nsplits')
    @classmethod
    def validate_nsplits(cls, v):
        if v < 1:
            raise ValueError('nsplits must be at least 1')
        return v

    @field_validator('methods')
    @classmethod
    def validate_methods(cls, v):
        from ..learners import BUILTIN_METHODS
        if not v:
            raise ValueError('methods must not be empty')
        unknown = [m for m in v if m not in BUILTIN_METHODS]
        if unknown:
            raise ValueError(f'unknown methods {unknown}; built-in methods are {list(BUILTIN_METHODS)}')
        if len(set(v)) != len(v):
            raise ValueError('methods must not repeat')
        return v

    @field_validator('threads')
    @classmethod
    def validate_threads(cls, v):
        if v is not None and v < 1:
            raise ValueError('threads must be at least 1')
        return v

    @field_validator('m')
    @classmethod
    def validate_m(cls, v):
        if v < 1:
            raise ValueError('m must be at least 1')
        return v

    @model_validator(mode='after')
    def validate_seeds(self):
        if self.seeds is not None and len(self.seeds) != self.nsplits:
            raise ValueError(f'{len(self.seeds)} seeds given for nsplits={self.nsplits}')
        return self

    @property
    def n_jobs(self) -> int:
        return self.threads or os.cpu_count() or 1

    @classmethod
    def from_env(cls, **overrides) -> 'RunConfig':
        """
        Build a configuration from keyword arguments, filling ``threads``
        from CVBENCH_THREADS when it is not given explicitly.

        Returns:
            RunConfig: The configuration object
        """
        config_dict: Dict[str, Any] = dict(overrides)
        raw_threads = os.getenv('CVBENCH_THREADS')
        if config_dict.get('threads') is None and raw_threads:
            try:
                config_dict['threads'] = int(raw_threads)
            except ValueError:
                app_logger.error(f"Invalid CVBENCH_THREADS value: {raw_threads!r}")
                raise ConfigError(f"CVBENCH_THREADS must be a positive integer, got {raw_threads!r}",
                                  {"module": "config", "operation": "from_env",
                                   "variable": "CVBENCH_THREADS"}) from None
        return cls(**config_dict)

    def ensure_out_dir(self) -> Path:
        try:
            self.out_dir.mkdir(parents=True, exist_ok=True)
        except OSError as e:
            raise SchemaError(f"Output directory {self.out_dir} is not writable: {e}",
                              {"module": "orchestrator", "operation": "run_model_train"}) from e
        if not os.access(self.out_dir, os.W_OK):
            raise SchemaError(f"Output directory {self.out_dir} is not writable",
                              {"module": "orchestrator", "operation": "run_model_train"})
        return self.out_dir
