import numpy as np
import pytest
from hypothesis import given, settings

from pytsrp.lib.bias import BiasKind, CustomBias, GammaKind
from pytsrp.lib.engine import (
    Engine,
    as_engine,
    evaluate,
    evaluate_fast,
    evaluate_naive,
    paired_sweep,
    score_pair,
)
from pytsrp.lib.errors import (
    ConfigurationError,
    EmptyGroundTruthError,
    EmptyPredictionError,
)
from pytsrp.lib.metric import MetricConfig, precision_t, recall_t
from pytsrp.lib.ranges import RangeSeries, TimeRange, merge_ranges, overlap
from pytsrp.lib.synth import ScenarioSpec, cost_benchmark, gen_random

from .strategies import alphas, bias_kinds, gamma_kinds, range_series

R = RangeSeries.from_ranges([(1, 5), (11, 15)])
P = RangeSeries.from_ranges([(2, 3), (13, 14), (16, 17)])


def _all_pairs(r: RangeSeries, p: RangeSeries) -> list[tuple[int, int, TimeRange]]:
    pairs = []
    for i, a in enumerate(r):
        for j, b in enumerate(p):
            part = overlap(a, b)
            if part is not None:
                pairs.append((i, j, part))
    return pairs


def test_engine_names():

    assert as_engine("FAST") == Engine.fast
    assert as_engine(Engine.naive) == Engine.naive
    with pytest.raises(ConfigurationError):
        as_engine("turbo")


def test_paired_sweep_examples():

    assignment = paired_sweep(R, P)
    assert assignment.pairs == [(0, 0, TimeRange(2, 3)), (1, 1, TimeRange(13, 14))]
    assert assignment.predicted[2] == ()
    assert assignment.comparisons <= len(R) + len(P) - 1

    empty = paired_sweep(R, RangeSeries())
    assert empty.pairs == []
    assert empty.predicted == ()

    fan_out = paired_sweep(
        RangeSeries.from_ranges([(1, 100)]),
        RangeSeries.from_ranges([(10, 20), (30, 40), (50, 60)]),
    )
    assert [j for j, _ in fan_out.real[0]] == [0, 1, 2]
    assert all(len(row) == 1 for row in fan_out.predicted)


@given(range_series(), range_series())
@settings(max_examples=500)
def test_paired_sweep_is_complete(r, p):

    assignment = paired_sweep(r, p)
    assert sorted(assignment.pairs) == sorted(_all_pairs(r, p))
    assert assignment.comparisons <= max(len(r) + len(p) - 1, 0)

    # Each intersection appears once on each side
    mirrored = [
        (i, j, part) for j, row in enumerate(assignment.predicted) for i, part in row
    ]
    assert sorted(mirrored) == sorted(assignment.pairs)

    # The overlaps cover exactly the intersection of both point sets
    merged, _ = merge_ranges(part for _, _, part in assignment.pairs)
    covered = {t for part in merged for t in part}
    assert covered == r.points() & p.points()


def test_examples_match_the_naive_model():

    cfg = MetricConfig(recall_gamma="reciprocal", precision_gamma="reciprocal")
    recall, precision = evaluate_fast(R, P, cfg)
    assert recall == pytest.approx(0.4, abs=1e-12)
    assert precision == pytest.approx(2 / 3, abs=1e-9)
    assert (recall, precision) == evaluate_naive(R, P, cfg)
    assert evaluate(R, P, cfg, "naive") == evaluate(R, P, cfg, "fast")

    assert evaluate_fast(R, R, cfg) == (1.0, 1.0)

    with pytest.raises(EmptyGroundTruthError):
        evaluate_fast(RangeSeries(), P, cfg)
    with pytest.raises(EmptyPredictionError):
        evaluate_fast(R, RangeSeries(), cfg)


def test_two_real_ranges_covered_by_one_prediction():

    r = RangeSeries.from_ranges([(10, 20), (30, 40)])
    p = RangeSeries.from_ranges([(10, 40)])
    for engine in Engine:
        for bias in BiasKind:
            for gamma in GammaKind:
                cfg = MetricConfig(recall_gamma=gamma, recall_bias=bias)
                recall, _ = evaluate(r, p, cfg, engine)
                assert recall == 1.0


def test_score_pair():

    cfg = MetricConfig()
    assert score_pair(RangeSeries(), P, cfg) == (None, 0.0)
    assert score_pair(R, RangeSeries(), cfg) == (0.0, None)
    assert score_pair(RangeSeries(), RangeSeries(), cfg) == (None, None)
    assert score_pair(R, R, cfg, "naive") == (1.0, 1.0)


@given(range_series(), range_series(), alphas, gamma_kinds, bias_kinds, bias_kinds)
@settings(max_examples=500)
def test_engines_agree_on_small_instances(r, p, alpha, gamma, recall_bias, bias):

    if len(r) == 0 or len(p) == 0:
        return
    cfg = MetricConfig(
        alpha=alpha,
        recall_gamma=gamma,
        recall_bias=recall_bias,
        precision_gamma=gamma,
        precision_bias=bias,
    )
    fast = evaluate_fast(r, p, cfg)
    assert abs(fast[0] - recall_t(r, p, cfg)) <= 1e-9
    assert abs(fast[1] - precision_t(r, p, cfg)) <= 1e-9


def test_engines_agree_on_random_instances():

    rng = np.random.default_rng(5)
    kinds = list(BiasKind)
    for seed in range(1000):
        spec = ScenarioSpec(
            n_points=50_000,
            n_real=int(rng.integers(1, 501)),
            n_predicted=int(rng.integers(1, 501)),
            max_length=int(rng.integers(1, 50)),
            seed=seed,
        )
        r, p = gen_random(spec)
        cfg = MetricConfig(
            alpha=float(rng.choice([0.0, 0.5])),
            recall_gamma=GammaKind.reciprocal if seed % 2 else GammaKind.one,
            recall_bias=kinds[seed % 4],
            precision_gamma=GammaKind.reciprocal,
            precision_bias=kinds[(seed // 4) % 4],
        )
        fast = evaluate_fast(r, p, cfg)
        naive = evaluate_naive(r, p, cfg)
        assert abs(fast[0] - naive[0]) <= 1e-9
        assert abs(fast[1] - naive[1]) <= 1e-9


def test_custom_bias_falls_back_to_the_loop():

    cfg = MetricConfig(recall_bias=CustomBias(lambda i, length: 2**i, name="steep"))
    assert evaluate_fast(R, P, cfg) == pytest.approx(evaluate_naive(R, P, cfg))


@pytest.mark.slow
def test_engines_agree_on_a_large_instance():

    spec = ScenarioSpec(
        n_points=50_000, n_real=10_000, n_predicted=10_000, max_length=2, seed=7
    )
    r, p = gen_random(spec)
    cfg = MetricConfig(recall_bias="front", recall_gamma="reciprocal")
    fast = evaluate_fast(r, p, cfg)
    naive = evaluate_naive(r, p, cfg)
    assert abs(fast[0] - naive[0]) <= 1e-9
    assert abs(fast[1] - naive[1]) <= 1e-9


@pytest.mark.slow
def test_scaling_shape():

    table = cost_benchmark([1000, 2000, 4000, 8000], seed=1, metrics=("range",))
    naive = table[table["engine"] == "naive"]["median_seconds"].to_numpy()
    fast = table[table["engine"] == "fast"]["median_seconds"].to_numpy()

    assert np.all(fast <= naive)
    for ratio in naive[1:] / naive[:-1]:
        assert 2.0 <= ratio <= 6.0
    for ratio in fast[1:] / fast[:-1]:
        assert 1.2 <= ratio <= 3.0
