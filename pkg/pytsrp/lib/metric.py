from dataclasses import dataclass
from typing import Union

from .bias import (
    Bias,
    BiasKind,
    Gamma,
    GammaKind,
    as_bias,
    as_gamma,
    gamma,
    omega,
)
from .errors import ConfigurationError, EmptyGroundTruthError, EmptyPredictionError
from .ranges import RangeSeries, TimeRange, overlap

__doc__ = """Reference (naive) implementation of range-based recall and precision.

Every function scans the complete opposite series and walks overlaps point by
point. `pytsrp.lib.engine.evaluate_fast` computes the same values efficiently;
this module is the oracle it is checked against.
"""


@dataclass(frozen=True)
class MetricConfig:
    """Tunable parameters of the range-based model.

    The existence weight alpha applies to recall only: precision is always
    computed with alpha = 0.
    """

    alpha: float = 0.0
    recall_gamma: Gamma = GammaKind.one
    recall_bias: Bias = BiasKind.flat
    precision_gamma: Gamma = GammaKind.one
    precision_bias: Bias = BiasKind.flat

    def __post_init__(self):
        try:
            alpha = float(self.alpha)
        except (TypeError, ValueError):
            raise ConfigurationError(f"Alpha must be a number, got {self.alpha!r}.")
        if not 0.0 <= alpha <= 1.0:
            raise ConfigurationError(f"Alpha must be in [0, 1], got {self.alpha}.")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "recall_gamma", as_gamma(self.recall_gamma))
        object.__setattr__(self, "recall_bias", as_bias(self.recall_bias))
        object.__setattr__(self, "precision_gamma", as_gamma(self.precision_gamma))
        object.__setattr__(self, "precision_bias", as_bias(self.precision_bias))

    def with_recall_bias(self, bias: Union[str, Bias]) -> "MetricConfig":
        """Copy of this configuration with a different recall bias."""
        return MetricConfig(
            alpha=self.alpha,
            recall_gamma=self.recall_gamma,
            recall_bias=bias,
            precision_gamma=self.precision_gamma,
            precision_bias=self.precision_bias,
        )

    def as_dict(self) -> dict:
        """Configuration echo with plain string values."""
        return {
            "alpha": self.alpha,
            "recall_gamma": str(self.recall_gamma),
            "recall_bias": str(self.recall_bias),
            "precision_gamma": str(self.precision_gamma),
            "precision_bias": str(self.precision_bias),
        }


def _overlap_parts(target: TimeRange, others: RangeSeries) -> list[TimeRange]:
    # All-pairs scan: every range of `others` is compared with `target`
    parts = []
    for other in others.ranges:
        if other.start <= target.end and other.end >= target.start:
            parts.append(overlap(target, other))
    return parts


def cardinality_from_count(count: int, kind: Gamma) -> float:
    """Cardinality factor for a range overlapped by `count` distinct ranges."""
    if count <= 1:
        return 1.0
    return gamma(kind, count)


def existence_reward(ri: TimeRange, p: RangeSeries) -> int:
    """1 if the real range is touched by at least one predicted point, else 0."""
    total = 0
    for pj in p.ranges:
        part = overlap(ri, pj)
        if part is not None:
            total += len(part)
    return 1 if total >= 1 else 0


def cardinality_factor(target: TimeRange, others: RangeSeries, kind: Gamma) -> float:
    """1 if target overlaps at most one range of others, gamma(x) otherwise.

    x is the number of distinct ranges of `others` overlapping `target`.
    """
    return cardinality_from_count(len(_overlap_parts(target, others)), kind)


def overlap_reward(ri: TimeRange, p: RangeSeries, kind: Gamma, bias: Bias) -> float:
    """Cardinality factor times the summed omega of every overlap with p."""
    parts = _overlap_parts(ri, p)
    if len(parts) == 0:
        return 0.0
    total = 0.0
    for part in parts:
        total += omega(ri, [part], bias)
    return cardinality_from_count(len(parts), kind) * total


def recall_t_single(ri: TimeRange, p: RangeSeries, cfg: MetricConfig) -> float:
    """Recall score of one real range: alpha * existence + (1 - alpha) * overlap."""
    reward = overlap_reward(ri, p, cfg.recall_gamma, cfg.recall_bias)
    score = (1.0 - cfg.alpha) * reward
    if cfg.alpha > 0.0:
        score += cfg.alpha * existence_reward(ri, p)
    return score


def recall_t(r: RangeSeries, p: RangeSeries, cfg: MetricConfig) -> float:
    """Range-based recall: mean recall score over all real ranges.

    Raises
    ------

    EmptyGroundTruthError
        If r is empty.
    """
    if len(r) == 0:
        raise EmptyGroundTruthError()
    total = 0.0
    for ri in r.ranges:
        total += recall_t_single(ri, p, cfg)
    return total / len(r)


def precision_t_single(pi: TimeRange, r: RangeSeries, cfg: MetricConfig) -> float:
    """Precision score of one predicted range (overlap reward only)."""
    return overlap_reward(pi, r, cfg.precision_gamma, cfg.precision_bias)


def precision_t(r: RangeSeries, p: RangeSeries, cfg: MetricConfig) -> float:
    """Range-based precision: mean precision score over all predicted ranges.

    Raises
    ------

    EmptyPredictionError
        If p is empty.
    """
    if len(p) == 0:
        raise EmptyPredictionError()
    total = 0.0
    for pi in p.ranges:
        total += precision_t_single(pi, r, cfg)
    return total / len(p)
