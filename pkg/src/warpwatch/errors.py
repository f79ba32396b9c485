"""Exception types raised across the library.

Every warpwatch-specific failure derives from :class:`WarpwatchError` so
callers can catch the whole family with one clause.
"""


class WarpwatchError(Exception):
    """Base class for all warpwatch errors."""


class EmptySeries(WarpwatchError, ValueError):
    """A time series with zero samples was passed where data is required."""


class NonFiniteSample(WarpwatchError, ValueError):
    """A series contains NaN or infinite samples."""


class MaskDimensionMismatch(WarpwatchError, ValueError):
    """Constraint mask shape does not match the series-pair lattice."""


class InstanceTooLarge(WarpwatchError, ValueError):
    """Input exceeds the size guard of an enumeration-based routine."""


class InfeasibleResult(WarpwatchError, ValueError):
    """Operation requires a feasible alignment but the result has none."""


class PathOutOfBounds(WarpwatchError, ValueError):
    """A warping path step lies outside the target matrix dimensions."""


class WindowTooLarge(WarpwatchError, ValueError):
    """Detection window length is not smaller than the shortest path."""


class DivisionByZeroCount(WarpwatchError, ZeroDivisionError):
    """Relative support requested at a cell no training path passes through."""


class SchemaVersionMismatch(WarpwatchError, ValueError):
    """Serialized model document carries an unsupported version tag."""


class MalformedDocument(WarpwatchError, ValueError):
    """Serialized model document is missing fields or has wrong shapes."""


class EmptyGroup(WarpwatchError, ValueError):
    """Representative selection was asked on an empty series group."""


class EmptyTrainingSet(WarpwatchError, ValueError):
    """An operation requiring training series received none."""


class InvalidBand(WarpwatchError, ValueError):
    """Uncertainty band bounds are not ordered or out of range."""


class InvalidConfig(WarpwatchError, ValueError):
    """Synthetic-data generator configuration is inconsistent."""


class MalformedRow(WarpwatchError, ValueError):
    """A dataset CSV row could not be parsed."""


class UnknownLabelToken(WarpwatchError, ValueError):
    """A dataset CSV row carries a label outside {normal, anomalous, ?}."""


class UnlabeledSeries(WarpwatchError, ValueError):
    """Evaluation requires ground-truth labels but a series has none."""
