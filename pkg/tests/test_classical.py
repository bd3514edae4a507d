import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pytsrp.lib.classical import (
    BETA_PRESETS,
    ConfusionCounts,
    beta_label,
    classical_counts,
    classical_counts_naive,
    classical_precision,
    classical_precision_recall,
    classical_recall,
    f_beta,
    to_unit_ranges,
)
from pytsrp.lib.errors import ConfigurationError, ZeroDenominatorError
from pytsrp.lib.metric import MetricConfig, precision_t, recall_t
from pytsrp.lib.ranges import RangeSeries, TimeRange
from pytsrp.lib.synth import ScenarioSpec, gen_random

from .strategies import range_series


def test_to_unit_ranges():

    s = RangeSeries.from_ranges([(1, 3)])
    assert to_unit_ranges(s) == [TimeRange(1, 1), TimeRange(2, 2), TimeRange(3, 3)]
    assert to_unit_ranges(RangeSeries()) == []
    assert to_unit_ranges(RangeSeries.from_ranges([(5, 5)])) == [TimeRange(5, 5)]


def test_counts_reproduce_the_reference_instance():

    r = RangeSeries.from_ranges([(1, 3), (6, 8)])
    p = RangeSeries.from_ranges([(1, 2), (6, 6), (10, 11)])
    counts = classical_counts(r, p)
    assert counts == ConfusionCounts(tp=3, fp=2, fn=3)
    assert counts == classical_counts_naive(r, p)
    assert counts.real_points == 6
    assert counts.predicted_points == 5
    assert classical_precision_recall(counts) == (0.6, 0.5)

    other = classical_counts(
        RangeSeries.from_ranges([(1, 3), (5, 5), (7, 8)]),
        RangeSeries.from_ranges([(2, 3), (6, 6), (7, 8)]),
    )
    assert other == ConfusionCounts(tp=4, fp=1, fn=2)

    assert classical_counts(r, r) == ConfusionCounts(tp=6, fp=0, fn=0)


def test_precision_recall():

    assert classical_precision_recall(ConfusionCounts(0, 5, 5)) == (0.0, 0.0)

    degenerate = ConfusionCounts(tp=0, fp=0, fn=3)
    assert classical_recall(degenerate) == 0.0
    with pytest.raises(ZeroDenominatorError) as e:
        classical_precision(degenerate)
    assert e.value.metric == "precision"

    with pytest.raises(ZeroDenominatorError) as e:
        classical_recall(ConfusionCounts(tp=0, fp=2, fn=0))
    assert e.value.metric == "recall"

    with pytest.raises(ValueError):
        ConfusionCounts(tp=-1, fp=0, fn=0)


def test_f_beta():

    assert f_beta(0.6, 0.5) == pytest.approx(0.5455, abs=1e-4)
    assert f_beta(0.4, 2 / 3) == pytest.approx(0.5, abs=1e-9)
    assert f_beta(0.3, 0.3, beta=2.0) == 0.3
    assert f_beta(1.0, 1.0, beta=0.5) == 1.0
    assert f_beta(0.0, 0.0) == 0.0
    assert f_beta(0.0, 0.7) == 0.0

    # Beta weighs recall
    assert f_beta(0.9, 0.1, beta=2.0) < f_beta(0.9, 0.1, beta=0.5)

    with pytest.raises(ConfigurationError):
        f_beta(0.5, 0.5, beta=0)

    assert beta_label(1.0) == "F1"
    assert beta_label(0.5) == "F0.5"
    assert beta_label(2) == "F2"
    assert BETA_PRESETS == {"standard": 1.0, "low-fp": 0.5, "low-fn": 2.0}


@given(
    st.floats(0, 1, allow_nan=False),
    st.floats(0, 1, allow_nan=False),
    st.floats(0.1, 5, allow_nan=False),
    st.floats(0, 0.5, allow_nan=False),
)
@settings(max_examples=500)
def test_f_beta_properties(precision, recall, beta, step):

    score = f_beta(precision, recall, beta)
    assert 0.0 <= score <= 1.0 + 1e-12
    assert f_beta(precision, recall) == pytest.approx(f_beta(recall, precision))
    assert f_beta(min(precision + step, 1.0), recall, beta) >= score - 1e-12
    assert f_beta(precision, min(recall + step, 1.0), beta) >= score - 1e-12


@given(range_series(max_point=1000, max_ranges=20, max_length=60), range_series())
@settings(max_examples=500)
def test_interval_counts_match_point_enumeration(r, p):

    assert classical_counts(r, p) == classical_counts_naive(r, p)


def test_subsumption():

    # Unit ranges, alpha = 0, gamma = 1 and flat bias reduce to classical metrics
    cfg = MetricConfig()
    rng = np.random.default_rng(2017)
    for seed in range(1000):
        n_points = int(rng.integers(1000, 5001))
        n_real = int(rng.integers(1, 201))
        n_pred = int(rng.integers(1, 201))
        max_length = max(1, min(5, n_points // (2 * max(n_real, n_pred))))
        spec = ScenarioSpec(
            n_points=n_points,
            n_real=n_real,
            n_predicted=n_pred,
            max_length=max_length,
            seed=seed,
        )
        r, p = gen_random(spec)
        precision, recall = classical_precision_recall(classical_counts(r, p))

        r_units = RangeSeries.units(r)
        p_units = RangeSeries.units(p)
        assert recall_t(r_units, p_units, cfg) == recall
        assert precision_t(r_units, p_units, cfg) == precision
