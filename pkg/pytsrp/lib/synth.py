import math
import timeit
from dataclasses import dataclass
from enum import StrEnum
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np
import pandas as pd

from .bias import BiasKind
from .classical import beta_label, classical_counts, classical_counts_naive, f_beta
from .engine import evaluate_fast, evaluate_naive
from .errors import ConfigurationError, InfeasibleScenarioError
from .metric import MetricConfig
from .ranges import RangeSeries, TimeDomain, TimeRange

__doc__ = """Seeded synthetic range series, positional scenarios and the cost
benchmark of the evaluation engines.

Generated series are always normalized: consecutive ranges are separated by
at least one normal point.
"""


class PlacementPolicy(StrEnum):
    """How predicted ranges are placed relative to the real ones."""

    random = "random"
    front = "front"
    back = "back"
    fragmented = "fragmented"


@dataclass(frozen=True)
class ScenarioSpec:
    """Parameters of a synthetic (real, predicted) pair.

    `n_predicted` is only used by the random policy and defaults to `n_real`.
    `fraction` is the coverage of the front and back policies, `pieces` the
    number of fragments of the fragmented policy.
    """

    n_points: int = 50_000
    n_real: int = 100
    n_predicted: Optional[int] = None
    min_length: int = 1
    max_length: int = 50
    policy: PlacementPolicy = PlacementPolicy.random
    fraction: float = 1.0
    pieces: int = 2
    seed: int = 42

    def __post_init__(self):
        try:
            object.__setattr__(self, "policy", PlacementPolicy(self.policy))
        except ValueError:
            raise ConfigurationError(
                f"Unknown placement policy '{self.policy}'. "
                f"Valid policies are {[p.value for p in PlacementPolicy]}."
            )
        if self.n_predicted is None:
            object.__setattr__(self, "n_predicted", self.n_real)
        if self.n_points < 1:
            raise ConfigurationError("The domain needs at least one point.")
        if self.n_real < 0 or self.n_predicted < 0:
            raise ConfigurationError("Range counts must be non-negative.")
        if not 1 <= self.min_length <= self.max_length:
            raise ConfigurationError(
                f"Invalid length bounds [{self.min_length}, {self.max_length}]."
            )
        if not 0.0 < self.fraction <= 1.0:
            raise ConfigurationError(
                f"Coverage fraction must be in (0, 1], got {self.fraction}."
            )
        if self.pieces < 1:
            raise ConfigurationError("At least one fragment is required.")

    @property
    def domain(self) -> TimeDomain:
        return TimeDomain(self.n_points)


@dataclass(frozen=True)
class Scenario:
    """A named (real, predicted) pair over a time domain."""

    name: str
    real: RangeSeries
    predicted: RangeSeries
    domain: TimeDomain


def _place(
    rng: np.random.Generator,
    n_points: int,
    count: int,
    min_length: int,
    max_length: int,
) -> RangeSeries:
    """Place `count` ranges uniformly at random, one free point apart at least.

    Every admissible placement of the drawn lengths is equally likely: the
    free points are distributed over the count + 1 gaps by choosing `count`
    distinct slots among slack + count (stars and bars).
    """
    if count == 0:
        return RangeSeries()
    lengths = rng.integers(min_length, max_length + 1, size=count)
    required = int(lengths.sum()) + count - 1
    slack = n_points - required
    if slack < 0:
        raise InfeasibleScenarioError(
            f"{count} ranges of lengths in [{min_length}, {max_length}] "
            f"need {required} points, but the domain has {n_points}."
        )
    slots = np.sort(rng.choice(slack + count, size=count, replace=False))
    before = np.concatenate(([0], np.cumsum(lengths)[:-1]))
    starts = slots + before
    return RangeSeries(
        tuple(
            TimeRange(int(s), int(s + n - 1)) for s, n in zip(starts, lengths)
        )
    )


def _covered_length(length: int, fraction: float) -> int:
    # ceil(f * L) without floating point round-off (0.3 * 10 must give 3)
    exact = Fraction(fraction).limit_denominator(1_000_000) * length
    return max(1, math.ceil(exact))


def front_predictions(real: RangeSeries, fraction: float) -> RangeSeries:
    """Predict the first ceil(f * L) points of every real range."""
    return RangeSeries(
        tuple(
            TimeRange(r.start, r.start + _covered_length(len(r), fraction) - 1)
            for r in real
        )
    )


def back_predictions(real: RangeSeries, fraction: float) -> RangeSeries:
    """Predict the last ceil(f * L) points of every real range."""
    return RangeSeries(
        tuple(
            TimeRange(r.end - _covered_length(len(r), fraction) + 1, r.end)
            for r in real
        )
    )


def fragmented_predictions(real: RangeSeries, pieces: int) -> RangeSeries:
    """Cover every real range with up to `pieces` disjoint fragments.

    The range is cut into 2k - 1 near-equal segments and every other segment
    is predicted; short ranges get fewer fragments.
    """
    fragments = []
    for r in real:
        k = min(pieces, (len(r) + 1) // 2)
        segments = np.array_split(np.arange(r.start, r.end + 1), 2 * k - 1)
        for segment in segments[0::2]:
            fragments.append(TimeRange(int(segment[0]), int(segment[-1])))
    return RangeSeries(tuple(fragments))


def gen_random(spec: ScenarioSpec) -> tuple[RangeSeries, RangeSeries]:
    """Generate a reproducible (real, predicted) pair.

    Parameters
    ----------

    spec: ScenarioSpec
        Scenario parameters, including the seed.

    Returns
    -------

    real: RangeSeries
        Exactly `spec.n_real` ranges.

    predicted: RangeSeries
        Predicted ranges placed according to `spec.policy`.

    Raises
    ------

    InfeasibleScenarioError
        If the ranges and their gaps do not fit in the domain.
    """
    rng = np.random.default_rng(spec.seed)
    real = _place(rng, spec.n_points, spec.n_real, spec.min_length, spec.max_length)
    match spec.policy:
        case PlacementPolicy.random:
            predicted = _place(
                rng, spec.n_points, spec.n_predicted, spec.min_length, spec.max_length
            )
        case PlacementPolicy.front:
            predicted = front_predictions(real, spec.fraction)
        case PlacementPolicy.back:
            predicted = back_predictions(real, spec.fraction)
        case PlacementPolicy.fragmented:
            predicted = fragmented_predictions(real, spec.pieces)
    return real, predicted


def gen_positional_pair(
    base_spec: ScenarioSpec, fraction: float
) -> tuple[Scenario, Scenario]:
    """Front and back scenarios over the same real ranges.

    The front scenario predicts the first ceil(f * L) points of each real
    range, the back scenario the last ones. Within every real range the two
    predictions are mirror images of each other.

    Parameters
    ----------

    base_spec: ScenarioSpec
        Domain, real range count, length bounds and seed (the placement
        policy is ignored).

    fraction: float
        Coverage fraction, 0 < f <= 1.

    Returns
    -------

    front, back: tuple[Scenario, Scenario]
        The two scenarios.
    """
    if not 0.0 < fraction <= 1.0:
        raise ConfigurationError(
            f"Coverage fraction must be in (0, 1], got {fraction}."
        )
    rng = np.random.default_rng(base_spec.seed)
    real = _place(
        rng,
        base_spec.n_points,
        base_spec.n_real,
        base_spec.min_length,
        base_spec.max_length,
    )
    domain = base_spec.domain
    front = Scenario("front", real, front_predictions(real, fraction), domain)
    back = Scenario("back", real, back_predictions(real, fraction), domain)
    return front, back


# Cost variants: (metric, engine) -> callable(r, p, cfg)
COST_VARIANTS = {
    ("classical", "naive"): lambda r, p, cfg: classical_counts_naive(r, p),
    ("classical", "fast"): lambda r, p, cfg: classical_counts(r, p),
    ("range", "naive"): evaluate_naive,
    ("range", "fast"): evaluate_fast,
}


def benchmark_spec(size: int, n_points: int, seed: int) -> ScenarioSpec:
    """Random scenario with `size` ranges per side that fits in the domain."""
    max_length = max(1, n_points // (2 * size))
    return ScenarioSpec(
        n_points=n_points,
        n_real=size,
        n_predicted=size,
        min_length=1,
        max_length=max_length,
        seed=seed,
    )


def cost_benchmark(
    sizes: Sequence[int],
    seed: int = 42,
    n_points: int = 50_000,
    repeats: int = 5,
    warmup: int = 1,
    metrics: Sequence[str] = ("classical", "range"),
    cfg: Optional[MetricConfig] = None,
) -> pd.DataFrame:
    """Median wall time of the naive and fast engines per input size.

    All variants of one size run sequentially on the same generated pair. Each
    timed sample loops over the call as many times as `timeit.Timer.autorange`
    needs to last at least 0.2 s, and is divided by that number of calls.

    Parameters
    ----------

    sizes: Sequence[int]
        Ascending numbers of ranges per side.

    seed: int
        Seed of the generated inputs.

    n_points: int
        Domain length.

    repeats: int
        Timed samples per variant; the median per-call time is reported.

    warmup: int
        Untimed runs per variant before timing.

    metrics: Sequence[str]
        Subset of "classical" and "range".

    cfg: Optional[MetricConfig]
        Range-based configuration (defaults to MetricConfig()).

    Returns
    -------

    table: pd.DataFrame
        Columns size, metric, engine, median_seconds, one row per size and
        variant.
    """
    sizes = list(sizes)
    if len(sizes) == 0:
        raise ConfigurationError("At least one size is required.")
    if any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise ConfigurationError(f"Sizes must be strictly ascending, got {sizes}.")
    for metric in metrics:
        if metric not in ("classical", "range"):
            raise ConfigurationError(f"Unknown metric family '{metric}'.")
    if repeats < 1:
        raise ConfigurationError("At least one timed repeat is required.")
    cfg = cfg if cfg is not None else MetricConfig()

    rows = []
    for size in sizes:
        r, p = gen_random(benchmark_spec(size, n_points, seed))
        for (metric, engine), function in COST_VARIANTS.items():
            if metric not in metrics:
                continue
            for _ in range(warmup):
                function(r, p, cfg)
            timer = timeit.Timer(lambda: function(r, p, cfg))
            number, _ = timer.autorange()
            times = [
                t / number for t in timer.repeat(repeat=repeats, number=number)
            ]
            rows.append((size, metric, engine, float(np.median(times))))
    return pd.DataFrame(rows, columns=["size", "metric", "engine", "median_seconds"])


def scaling_ratios(table: pd.DataFrame) -> pd.DataFrame:
    """Time ratio between consecutive sizes for every (metric, engine) variant."""
    table = table.sort_values(["metric", "engine", "size"])
    ratios = table.groupby(["metric", "engine"])["median_seconds"].transform(
        lambda s: s / s.shift(1)
    )
    return table.assign(ratio=ratios).dropna(subset=["ratio"]).reset_index(drop=True)


def positional_scores(
    scenarios: Sequence[Scenario],
    biases: Sequence[BiasKind] = (BiasKind.front, BiasKind.back, BiasKind.flat),
    beta: float = 1.0,
) -> pd.DataFrame:
    """Score every scenario under each recall bias (flat precision, gamma one).

    Returns
    -------

    table: pd.DataFrame
        Columns scenario, recall_bias, recall_t, precision_t and the F-beta
        label, one row per (scenario, bias).
    """
    label = beta_label(beta)
    rows = []
    for scenario in scenarios:
        for bias in biases:
            cfg = MetricConfig(recall_bias=bias, precision_bias=BiasKind.flat)
            recall, precision = evaluate_fast(scenario.real, scenario.predicted, cfg)
            rows.append(
                (
                    scenario.name,
                    str(bias),
                    recall,
                    precision,
                    f_beta(precision, recall, beta),
                )
            )
    return pd.DataFrame(
        rows, columns=["scenario", "recall_bias", "recall_t", "precision_t", label]
    )
