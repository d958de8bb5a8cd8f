"""
Exception hierarchy shared by every cvbench module.

Each error carries a ``context`` dict (module, operation and, where it
applies, the offending cell, column or row) that the CLI emits as a
structured log record.
"""

from typing import Any, Dict, Optional


class CvbenchError(Exception):
    """Base class for all cvbench failures."""

    def __init__(self, message: str, context: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.context = dict(context or {})

    def __str__(self) -> str:
        return self.message

    def __reduce__(self):
        # keep the context when a worker process sends the error back
        return self.__class__, (self.message, self.context)


class ConfigError(CvbenchError):
    """An environment setting cannot be used."""


class SchemaError(CvbenchError):
    """A required column is missing or the descriptor layout does not fit."""


class DataParseError(CvbenchError):
    """A cell could not be read as a number."""


class DataValidationError(CvbenchError):
    """Values parsed but violate a dataset invariant."""


class ArgumentError(CvbenchError, ValueError):
    """An argument is outside its documented range."""


class NumericError(CvbenchError):
    """A numerical routine could not produce a stable answer."""


class LearnerError(CvbenchError):
    """A learner failed inside a cross-validation task."""


class UndefinedMeasureError(CvbenchError):
    """A performance measure is undefined for the given data."""


class IncompatibleMetricError(CvbenchError):
    """The metric does not apply to the task kind."""


class IncompleteDesignError(CvbenchError):
    """The measure table is missing a (split, combo) cell."""


class DegenerateVarianceError(CvbenchError):
    """Error mean square is zero, so F and q statistics are undefined."""


class IncompleteComparisonsError(CvbenchError):
    """A pairwise comparison is missing."""


class PredictionImportError(CvbenchError):
    """External predictions do not cover the dataset correctly."""
