import warnings
from dataclasses import dataclass
from enum import StrEnum
from typing import Callable, Sequence, Union

from .errors import GammaClampWarning, InvalidBiasError, OverlapOutsideRangeError
from .ranges import TimeRange

__doc__ = """Overlap size (omega), positional bias (delta) and cardinality (gamma)
functions.

Position indices are 1-based within a range: i = 1 is the first point of the
range and i = L its last point.
"""

# Range lengths checked when a custom bias is constructed
_CUSTOM_BIAS_CHECK_LENGTH = 16


class BiasKind(StrEnum):
    """Built-in positional bias functions."""

    flat = "flat"
    front = "front"
    back = "back"
    middle = "middle"


class GammaKind(StrEnum):
    """Built-in cardinality functions."""

    one = "one"
    reciprocal = "reciprocal"


@dataclass(frozen=True)
class CustomBias:
    """User-supplied positional bias.

    The weight function receives (i, L) with 1 <= i <= L and must return a
    positive number. It may be called concurrently from several threads or
    processes and must therefore be free of side effects.
    """

    weight: Callable[[int, int], float]
    name: str = "custom"

    def __post_init__(self):
        for length in range(1, _CUSTOM_BIAS_CHECK_LENGTH + 1):
            for i in range(1, length + 1):
                _check_weight(self, i, length, self.weight(i, length))

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class CustomGamma:
    """User-supplied cardinality function of the overlap count x >= 2.

    Values outside [0, 1] are clamped and reported with a GammaClampWarning.
    """

    function: Callable[[int], float]
    name: str = "custom"

    def __str__(self) -> str:
        return self.name


Bias = Union[BiasKind, CustomBias]
Gamma = Union[GammaKind, CustomGamma]


def as_bias(value: Union[str, Bias]) -> Bias:
    """Resolve a bias name ("flat", "front", ...) or pass a bias through."""
    if isinstance(value, (BiasKind, CustomBias)):
        return value
    try:
        return BiasKind(str(value).strip().lower())
    except ValueError:
        raise InvalidBiasError(
            f"Unknown positional bias '{value}'. "
            f"Valid names are {[b.value for b in BiasKind]}."
        )


def as_gamma(value: Union[str, Gamma]) -> Gamma:
    """Resolve a cardinality function name ("one", "reciprocal") or pass it through."""
    if isinstance(value, (GammaKind, CustomGamma)):
        return value
    try:
        return GammaKind(str(value).strip().lower())
    except ValueError:
        raise InvalidBiasError(
            f"Unknown cardinality function '{value}'. "
            f"Valid names are {[g.value for g in GammaKind]}."
        )


def _check_weight(kind: CustomBias, i: int, length: int, value) -> None:
    if not value > 0:
        raise InvalidBiasError(
            f"Custom bias '{kind.name}' returned a non-positive weight {value} "
            f"for i={i}, L={length}."
        )


def delta(kind: Bias, i: int, length: int) -> Union[int, float]:
    """Weight of position i (1-based) in a range of the given length.

    Parameters
    ----------

    kind: Bias
        Built-in BiasKind or a CustomBias.

    i: int
        Position index, 1 <= i <= length.

    length: int
        Range length L.

    Returns
    -------

    weight: int | float
        Positive weight; built-in kinds return integers >= 1.
    """
    if not 1 <= i <= length:
        raise InvalidBiasError(f"Position index {i} is outside 1..{length}.")
    match kind:
        case BiasKind.flat:
            return 1
        case BiasKind.front:
            return length - i + 1
        case BiasKind.back:
            return i
        case BiasKind.middle:
            # i <= L/2 evaluated exactly
            if 2 * i <= length:
                return i
            return length - i + 1
        case CustomBias():
            value = kind.weight(i, length)
            _check_weight(kind, i, length, value)
            return value
    raise InvalidBiasError(f"Unknown positional bias {kind!r}.")


def _validate_parts(anomaly_range: TimeRange, parts: Sequence[TimeRange]) -> None:
    for part in parts:
        if part.start < anomaly_range.start or part.end > anomaly_range.end:
            raise OverlapOutsideRangeError(
                f"Overlap part {part} is not contained in range {anomaly_range}."
            )


def omega(
    anomaly_range: TimeRange, overlap_parts: Sequence[TimeRange], kind: Bias
) -> float:
    """Positionally weighted fraction of a range covered by its overlap parts.

    Walks every position of the range, accumulating the bias weight of all
    positions (MaxValue) and of the covered ones (MyValue).

    Parameters
    ----------

    anomaly_range: TimeRange
        Range being scored.

    overlap_parts: Sequence[TimeRange]
        Pairwise disjoint sub-ranges of anomaly_range.

    kind: Bias
        Positional bias.

    Returns
    -------

    value: float
        MyValue / MaxValue, in [0, 1].
    """
    _validate_parts(anomaly_range, overlap_parts)
    if len(overlap_parts) == 0:
        return 0.0

    length = len(anomaly_range)
    covered = [False] * (length + 1)
    for part in overlap_parts:
        for t in part:
            covered[t - anomaly_range.start + 1] = True

    my_value = 0
    max_value = 0
    for i in range(1, length + 1):
        bias = delta(kind, i, length)
        max_value += bias
        if covered[i]:
            my_value += bias
    return my_value / max_value


def _front_sum(length: int, a: int, b: int) -> int:
    # sum of (L - i + 1) for i in [a, b]
    return (b - a + 1) * (2 * length + 2 - a - b) // 2


def _back_sum(a: int, b: int) -> int:
    # sum of i for i in [a, b]
    return (a + b) * (b - a + 1) // 2


def _segment_weight(kind: BiasKind, length: int, a: int, b: int) -> int:
    match kind:
        case BiasKind.flat:
            return b - a + 1
        case BiasKind.front:
            return _front_sum(length, a, b)
        case BiasKind.back:
            return _back_sum(a, b)
        case BiasKind.middle:
            half = length // 2
            total = 0
            if a <= half:
                total += _back_sum(a, min(b, half))
            if b > half:
                total += _front_sum(length, max(a, half + 1), b)
            return total
    raise InvalidBiasError(f"No closed form for positional bias {kind!r}.")


def omega_closed_form(
    anomaly_range: TimeRange, overlap_parts: Sequence[TimeRange], kind: Bias
) -> float:
    """Same value as omega(), computed with O(1) arithmetic per overlap part.

    Custom biases have no closed form and fall back to omega().
    """
    if not isinstance(kind, BiasKind):
        return omega(anomaly_range, overlap_parts, kind)
    _validate_parts(anomaly_range, overlap_parts)
    if len(overlap_parts) == 0:
        return 0.0

    length = len(anomaly_range)
    offset = anomaly_range.start - 1
    my_value = 0
    for part in overlap_parts:
        a = part.start - offset
        my_value += _segment_weight(kind, length, a, part.end - offset)
    return my_value / _segment_weight(kind, length, 1, length)


def gamma(kind: Gamma, x: int) -> float:
    """Cardinality factor for a range overlapped by x >= 2 distinct ranges.

    Parameters
    ----------

    kind: Gamma
        Built-in GammaKind or a CustomGamma.

    x: int
        Number of distinct overlapping ranges.

    Returns
    -------

    value: float
        Value in [0, 1]. Custom values outside the interval are clamped.
    """
    match kind:
        case GammaKind.one:
            return 1.0
        case GammaKind.reciprocal:
            return 1.0 / x
        case CustomGamma():
            value = float(kind.function(x))
            if 0.0 <= value <= 1.0:
                return value
            clamped = min(max(value, 0.0), 1.0)
            warnings.warn(
                f"Custom cardinality function '{kind.name}' returned {value} "
                f"for x={x}; clamped to {clamped}.",
                GammaClampWarning,
                stacklevel=2,
            )
            return clamped
    raise InvalidBiasError(f"Unknown cardinality function {kind!r}.")
