from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from ...config import SEED_STEP
from ..utils.errors import ArgumentError
from ..utils.logger import app_logger
from .prng import SplitMix64


@dataclass(frozen=True)
class SplitPlan:
    """
    Fold labels for every observation in every split.

    ``assignment[s, i]`` is the fold (1..nfolds) of row i in split s + 1.
    """
    nsplits: int
    nfolds: int
    seeds: Tuple[int, ...]
    assignment: np.ndarray

    def __post_init__(self):
        self.assignment.setflags(write=False)

    @property
    def n(self) -> int:
        return self.assignment.shape[1]

    def folds(self, split: int) -> np.ndarray:
        """Fold labels for a 1-based split."""
        return self.assignment[split - 1]

    def to_frame(self) -> pd.DataFrame:
        """Long format: split (1-based), row_index (0-based), fold."""
        splits = np.repeat(np.arange(1, self.nsplits + 1), self.n)
        rows = np.tile(np.arange(self.n), self.nsplits)
        return pd.DataFrame({"split": splits, "row_index": rows,
                             "fold": self.assignment.reshape(-1)})

    @classmethod
    def from_frame(cls, frame: pd.DataFrame, seeds: Sequence[int], nfolds: int) -> 'SplitPlan':
        frame = frame.sort_values(["split", "row_index"])
        nsplits = int(frame["split"].max())
        assignment = frame["fold"].to_numpy(dtype=int).reshape(nsplits, -1)
        return cls(nsplits=nsplits, nfolds=nfolds, seeds=tuple(int(s) for s in seeds),
                   assignment=assignment.copy())


def default_seeds(nsplits: int) -> List[int]:
    """Seeds 11111, 22222, 33333, ... for splits 1..nsplits."""
    if nsplits < 1:
        raise ArgumentError(f"nsplits must be at least 1, got {nsplits}",
                            {"module": "folds", "operation": "default_seeds"})
    return [SEED_STEP * s for s in range(1, nsplits + 1)]


def assign_folds(n: int, nfolds: int, seed: int) -> np.ndarray:
    """
    Randomly assign n observations to nfolds balanced folds.

    The label vector starts with the ceil(n/k)-sized folds at the lowest
    fold indices (fold 1 repeated, then fold 2, ...) and is shuffled with
    SplitMix64 Fisher-Yates seeded by ``seed``.

    Returns:
        np.ndarray: fold labels in 1..nfolds, length n
    """
    if nfolds < 2 or nfolds > n:
        raise ArgumentError(f"nfolds must satisfy 2 <= nfolds <= n (n={n}), got {nfolds}",
                            {"module": "folds", "operation": "assign_folds"})
    base, extra = divmod(n, nfolds)
    sizes = [base + 1 if fold < extra else base for fold in range(nfolds)]
    labels = [fold + 1 for fold, size in enumerate(sizes) for _ in range(size)]
    SplitMix64(seed).shuffle(labels)
    return np.array(labels, dtype=int)


def make_split_plan(n: int, nsplits: int, nfolds: int,
                    seeds: Optional[Sequence[int]] = None) -> SplitPlan:
    """Build one fold assignment per split; seeds default to default_seeds(nsplits)."""
    if seeds is None:
        seeds = default_seeds(nsplits)
    elif len(seeds) != nsplits:
        raise ArgumentError(f"Expected {nsplits} seeds, got {len(seeds)}",
                            {"module": "folds", "operation": "make_split_plan"})
    if nsplits < 1:
        raise ArgumentError(f"nsplits must be at least 1, got {nsplits}",
                            {"module": "folds", "operation": "make_split_plan"})

    assignment = np.vstack([assign_folds(n, nfolds, seed) for seed in seeds])
    app_logger.debug(f"Split plan: n={n}, nsplits={nsplits}, nfolds={nfolds}, seeds={list(seeds)}")
    return SplitPlan(nsplits=nsplits, nfolds=nfolds, seeds=tuple(int(s) for s in seeds),
                     assignment=assignment)
