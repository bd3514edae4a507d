from dataclasses import dataclass

from .errors import ConfigurationError, ZeroDenominatorError
from .ranges import RangeSeries, TimeRange

__doc__ = "Classical point-based precision/recall and the F-beta score."

# Named beta values, after the three NAB application profiles
BETA_PRESETS = {
    "standard": 1.0,
    "low-fp": 0.5,
    "low-fn": 2.0,
}


@dataclass(frozen=True)
class ConfusionCounts:
    """Point-level true positives, false positives and false negatives."""

    tp: int
    fp: int
    fn: int

    def __post_init__(self):
        if min(self.tp, self.fp, self.fn) < 0:
            raise ValueError(f"Confusion counts must be non-negative: {self}.")

    @property
    def real_points(self) -> int:
        return self.tp + self.fn

    @property
    def predicted_points(self) -> int:
        return self.tp + self.fp


def to_unit_ranges(s: RangeSeries) -> list[TimeRange]:
    """Split every range into unit-size ranges, one per covered point."""
    return [TimeRange(t, t) for r in s.ranges for t in r]


def classical_counts(r: RangeSeries, p: RangeSeries) -> ConfusionCounts:
    """Point-level confusion counts computed with interval arithmetic.

    Walks both normalized series once; the intersection size is the sum of
    pairwise overlap lengths.
    """
    tp = 0
    i = j = 0
    while i < len(r.ranges) and j < len(p.ranges):
        a = r.ranges[i]
        b = p.ranges[j]
        start = max(a.start, b.start)
        end = min(a.end, b.end)
        if start <= end:
            tp += end - start + 1
        if a.end < b.end:
            i += 1
        else:
            j += 1
    return ConfusionCounts(tp=tp, fp=p.total_points - tp, fn=r.total_points - tp)


def classical_counts_naive(r: RangeSeries, p: RangeSeries) -> ConfusionCounts:
    """Point-level confusion counts by explicit enumeration of every point."""
    real_points = r.points()
    predicted_points = p.points()
    tp = len(real_points & predicted_points)
    return ConfusionCounts(
        tp=tp,
        fp=len(predicted_points - real_points),
        fn=len(real_points - predicted_points),
    )


def classical_precision(c: ConfusionCounts) -> float:
    """TP / (TP + FP); raises ZeroDenominatorError if nothing was predicted."""
    if c.tp + c.fp == 0:
        raise ZeroDenominatorError("precision")
    return c.tp / (c.tp + c.fp)


def classical_recall(c: ConfusionCounts) -> float:
    """TP / (TP + FN); raises ZeroDenominatorError if there are no real points."""
    if c.tp + c.fn == 0:
        raise ZeroDenominatorError("recall")
    return c.tp / (c.tp + c.fn)


def classical_precision_recall(c: ConfusionCounts) -> tuple[float, float]:
    """Classical (precision, recall) pair.

    Raises
    ------

    ZeroDenominatorError
        If either metric is undefined; `metric` names the first one found.
    """
    return classical_precision(c), classical_recall(c)


def f_beta(precision: float, recall: float, beta: float = 1.0) -> float:
    """Weighted harmonic mean of precision and recall.

    Parameters
    ----------

    precision: float
        Precision in [0, 1].

    recall: float
        Recall in [0, 1].

    beta: float
        Relative importance of recall with respect to precision (> 0).

    Returns
    -------

    score: float
        (1 + beta^2) * P * R / (beta^2 * P + R), or 0 if P = R = 0.
    """
    if not beta > 0:
        raise ConfigurationError(f"Beta must be positive, got {beta}.")
    if precision == recall:
        return float(precision)
    beta2 = beta * beta
    denominator = beta2 * precision + recall
    if denominator == 0:
        return 0.0
    return (1 + beta2) * precision * recall / denominator


def beta_label(beta: float) -> str:
    """Column label for an F-beta score, e.g. 'F1', 'F0.5', 'F2'."""
    return f"F{beta:g}"
