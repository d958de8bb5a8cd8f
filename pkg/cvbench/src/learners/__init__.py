from .base_learner import Learner
from .defaults import (BUILTIN_METHODS, EXTERNAL_METHODS, ParamRegistry, apply_user_params,
                       make_model_defaults)
from .forest import RandomForestLearner
from .knn import KNNLearner
from .preprocessing import Standardized, standardize
from .registry import MethodSpec, binarize, fit_predict, is_classification_fit, make_learner
from .ridge import RidgeLearner
from .tree import RegressionTree

__all__ = [
    'Learner',
    'BUILTIN_METHODS',
    'EXTERNAL_METHODS',
    'ParamRegistry',
    'apply_user_params',
    'make_model_defaults',
    'RandomForestLearner',
    'KNNLearner',
    'Standardized',
    'standardize',
    'MethodSpec',
    'binarize',
    'fit_predict',
    'is_classification_fit',
    'make_learner',
    'RidgeLearner',
    'RegressionTree',
]
