from dataclasses import dataclass
from enum import StrEnum
from typing import Optional, Union

from .bias import Bias, Gamma, omega_closed_form
from .errors import ConfigurationError, EmptyGroundTruthError, EmptyPredictionError
from .metric import MetricConfig, cardinality_from_count, precision_t, recall_t
from .ranges import RangeSeries, TimeRange

__doc__ = """Optimized evaluation: one sorted sweep over both series to collect the
overlapping pairs, then closed-form positional bias sums per overlap.

Results agree with the naive model in `pytsrp.lib.metric` within 1e-9 (for
built-in biases the two are computed with the same operations and agree exactly).
"""


class Engine(StrEnum):
    """Available evaluation engines."""

    naive = "naive"
    fast = "fast"


def as_engine(value: Union[str, Engine]) -> Engine:
    """Resolve an engine name."""
    try:
        return Engine(str(value).strip().lower())
    except ValueError:
        raise ConfigurationError(
            f"Unknown engine '{value}'. Valid engines are {[e.value for e in Engine]}."
        )


@dataclass(frozen=True)
class OverlapAssignment:
    """Non-empty intersections between a real and a predicted series.

    `real[i]` lists (predicted index, overlap) for real range i and
    `predicted[j]` lists (real index, overlap) for predicted range j. Each
    intersection appears exactly once on each side.
    """

    real: tuple[tuple[tuple[int, TimeRange], ...], ...]
    predicted: tuple[tuple[tuple[int, TimeRange], ...], ...]
    comparisons: int = 0

    @property
    def pairs(self) -> list[tuple[int, int, TimeRange]]:
        """All (real index, predicted index, overlap) triples, in sweep order."""
        return [(i, j, part) for i, row in enumerate(self.real) for j, part in row]


def paired_sweep(r: RangeSeries, p: RangeSeries) -> OverlapAssignment:
    """Collect all overlapping (real, predicted) pairs in a single sweep.

    One cursor walks each series. At every step the current ranges are
    compared, and the one that ends first is retired: it cannot overlap any
    later range of the other series, since both are sorted and disjoint.
    The number of comparisons is at most N_r + N_p - 1.
    """
    real: list[list[tuple[int, TimeRange]]] = [[] for _ in range(len(r))]
    predicted: list[list[tuple[int, TimeRange]]] = [[] for _ in range(len(p))]

    r_ranges = r.ranges
    p_ranges = p.ranges
    i = j = 0
    comparisons = 0
    while i < len(r_ranges) and j < len(p_ranges):
        a = r_ranges[i]
        b = p_ranges[j]
        comparisons += 1
        start = a.start if a.start > b.start else b.start
        end = a.end if a.end < b.end else b.end
        if start <= end:
            part = TimeRange(start, end)
            real[i].append((j, part))
            predicted[j].append((i, part))
        if a.end < b.end:
            i += 1
        else:
            j += 1

    return OverlapAssignment(
        real=tuple(tuple(row) for row in real),
        predicted=tuple(tuple(row) for row in predicted),
        comparisons=comparisons,
    )


def _overlap_score(
    target: TimeRange,
    row: tuple[tuple[int, TimeRange], ...],
    kind: Gamma,
    bias: Bias,
) -> float:
    if len(row) == 0:
        return 0.0
    total = 0.0
    for _, part in row:
        total += omega_closed_form(target, [part], bias)
    return cardinality_from_count(len(row), kind) * total


def _recall_from(
    r: RangeSeries, assignment: OverlapAssignment, cfg: MetricConfig
) -> float:
    total = 0.0
    for ri, row in zip(r.ranges, assignment.real):
        score = (1.0 - cfg.alpha) * _overlap_score(
            ri, row, cfg.recall_gamma, cfg.recall_bias
        )
        if cfg.alpha > 0.0:
            score += cfg.alpha * (1 if len(row) > 0 else 0)
        total += score
    return total / len(r)


def _precision_from(
    p: RangeSeries, assignment: OverlapAssignment, cfg: MetricConfig
) -> float:
    total = 0.0
    for pi, row in zip(p.ranges, assignment.predicted):
        total += _overlap_score(pi, row, cfg.precision_gamma, cfg.precision_bias)
    return total / len(p)


def evaluate_fast(
    r: RangeSeries, p: RangeSeries, cfg: MetricConfig
) -> tuple[float, float]:
    """Range-based (recall, precision) with the sweep engine.

    Raises
    ------

    EmptyGroundTruthError
        If r is empty.

    EmptyPredictionError
        If p is empty.
    """
    if len(r) == 0:
        raise EmptyGroundTruthError()
    if len(p) == 0:
        raise EmptyPredictionError()
    assignment = paired_sweep(r, p)
    return _recall_from(r, assignment, cfg), _precision_from(p, assignment, cfg)


def evaluate_naive(
    r: RangeSeries, p: RangeSeries, cfg: MetricConfig
) -> tuple[float, float]:
    """Range-based (recall, precision) with the reference model."""
    return recall_t(r, p, cfg), precision_t(r, p, cfg)


def evaluate(
    r: RangeSeries,
    p: RangeSeries,
    cfg: MetricConfig,
    engine: Union[str, Engine] = Engine.fast,
) -> tuple[float, float]:
    """Range-based (recall, precision) with the requested engine."""
    if as_engine(engine) == Engine.naive:
        return evaluate_naive(r, p, cfg)
    return evaluate_fast(r, p, cfg)


def score_pair(
    r: RangeSeries,
    p: RangeSeries,
    cfg: MetricConfig,
    engine: Union[str, Engine] = Engine.fast,
) -> tuple[Optional[float], Optional[float]]:
    """Like evaluate(), but an undefined metric is returned as None.

    Recall is undefined for an empty real series, precision for an empty
    predicted series; the other metric is still computed.
    """
    engine = as_engine(engine)
    if len(r) > 0 and len(p) > 0:
        return evaluate(r, p, cfg, engine)

    recall = None
    precision = None
    if len(r) > 0:
        # Nothing was predicted: no real range earns any reward
        recall = recall_t(r, p, cfg)
    if len(p) > 0:
        precision = precision_t(r, p, cfg)
    return recall, precision
