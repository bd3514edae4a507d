__doc__ = "Exceptions and warnings raised by the metric library."


class TsrpError(ValueError):
    """Base class for all errors raised by pytsrp."""


class InvalidRangeError(TsrpError):
    """A time range has start > end or a negative timestamp."""


class OverlapOutsideRangeError(TsrpError):
    """An overlap part passed to omega() is not contained in its range."""


class InvalidBiasError(TsrpError):
    """A positional bias is unknown, out of its index domain, or not positive."""


class EmptyGroundTruthError(TsrpError):
    """Recall is undefined because there are no real anomaly ranges."""

    def __init__(self):
        super().__init__("Recall is undefined: the real range series is empty.")


class EmptyPredictionError(TsrpError):
    """Precision is undefined because there are no predicted anomaly ranges."""

    def __init__(self):
        super().__init__("Precision is undefined: the predicted range series is empty.")


class ZeroDenominatorError(TsrpError):
    """A classical metric is undefined because its denominator is zero."""

    def __init__(self, metric: str):
        self.metric = metric
        super().__init__(f"Classical {metric} is undefined (zero denominator).")


class LabelParseError(TsrpError):
    """A label file could not be parsed."""

    def __init__(self, path, reason: str, line: int | None = None):
        self.path = str(path)
        self.line = line
        self.reason = reason
        where = f"{self.path}:{line}" if line is not None else self.path
        super().__init__(f"{where}: {reason}")


class DomainMismatchError(TsrpError):
    """The real and predicted label files declare different domain lengths."""


class ConfigurationError(TsrpError):
    """An evaluation setting is unknown or out of range."""


class InfeasibleScenarioError(TsrpError):
    """A synthetic scenario cannot fit in its domain."""


class GammaClampWarning(UserWarning):
    """A custom cardinality function returned a value outside [0, 1]."""
