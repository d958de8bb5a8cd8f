from .prng import SplitMix64, derive_seed, mix64
from .split_plan import SplitPlan, assign_folds, default_seeds, make_split_plan

__all__ = [
    'SplitMix64',
    'SplitPlan',
    'assign_folds',
    'default_seeds',
    'derive_seed',
    'make_split_plan',
    'mix64',
]
