import math
from typing import Optional

import numpy as np

from ..folds.prng import derive_seed
from .base_learner import Learner
from .tree import RegressionTree

FOREST_TREE_DEPTH = 30


class RandomForestLearner(Learner):
    """
    Bagged regression trees with per-split random feature subsampling.

    Tree t draws its bootstrap rows and candidate features from
    numpy's PCG64 generator seeded with derive_seed(seed, t), so a
    forest is fully determined by (data, params, seed). Predictions are
    the mean over trees.

    ``identity_resample`` replaces the bootstrap by the original rows;
    with n_trees=1 and mtry >= p the forest then equals a single Tree.
    """

    name = "RF"

    def __init__(self, n_trees: int = 100, mtry: Optional[int] = None, min_leaf: int = 5,
                 seed: int = 0, identity_resample: bool = False):
        self.n_trees = int(n_trees)
        self.mtry = mtry
        self.min_leaf = int(min_leaf)
        self.seed = int(seed)
        self.identity_resample = identity_resample

    def fit(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        n, p = x.shape
        mtry = self.mtry if self.mtry is not None else max(1, math.ceil(math.sqrt(p)))

        self.trees_ = []
        for t in range(self.n_trees):
            rng = np.random.default_rng(derive_seed(self.seed, t))
            rows = np.arange(n) if self.identity_resample else rng.integers(0, n, size=n)
            tree = RegressionTree(max_depth=FOREST_TREE_DEPTH, min_leaf=self.min_leaf,
                                  mtry=mtry, rng=rng)
            self.trees_.append(tree.fit(x[rows], y[rows]))
        return self

    def predict(self, x):
        x = np.asarray(x, dtype=float)
        if x.shape[0] == 0:
            return np.empty(0)
        return np.mean([tree.predict(x) for tree in self.trees_], axis=0)
