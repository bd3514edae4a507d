from fractions import Fraction

from hypothesis import strategies as st

from pytsrp.lib.bias import BiasKind, GammaKind
from pytsrp.lib.ranges import RangeSeries, TimeRange

__doc__ = "Hypothesis strategies and brute-force oracles shared by the tests."


@st.composite
def range_series(draw, max_point=100, max_ranges=8, max_length=20):
    """Normalized series with ranges inside [0, max_point]."""
    items = draw(
        st.lists(
            st.tuples(
                st.integers(0, max_point), st.integers(0, max_length - 1)
            ),
            max_size=max_ranges,
        )
    )
    return RangeSeries.from_ranges(
        TimeRange(s, min(s + n, max_point)) for s, n in items
    )


non_empty_series = range_series().filter(lambda s: len(s) > 0)

bias_kinds = st.sampled_from(list(BiasKind))
gamma_kinds = st.sampled_from(list(GammaKind))
alphas = st.sampled_from([0.0, 0.25, 0.5, 1.0])


def oracle_delta(kind: BiasKind, i: int, length: int) -> Fraction:
    if kind == BiasKind.flat:
        return Fraction(1)
    if kind == BiasKind.front:
        return Fraction(length - i + 1)
    if kind == BiasKind.back:
        return Fraction(i)
    if Fraction(i) <= Fraction(length, 2):
        return Fraction(i)
    return Fraction(length - i + 1)


def oracle_recall_single(
    ri: TimeRange, p: RangeSeries, alpha: float, kind: GammaKind, bias: BiasKind
) -> float:
    """Point-by-point evaluation of the recall score of one real range."""
    predicted = p.points()
    length = len(ri)
    my_value = Fraction(0)
    max_value = Fraction(0)
    for i, t in enumerate(ri, start=1):
        weight = oracle_delta(bias, i, length)
        max_value += weight
        if t in predicted:
            my_value += weight
    count = sum(1 for pj in p if set(pj) & set(ri))
    if count <= 1:
        factor = Fraction(1)
    elif kind == GammaKind.one:
        factor = Fraction(1)
    else:
        factor = Fraction(1, count)
    existence = 1 if count >= 1 else 0
    reward = factor * my_value / max_value
    return float(Fraction(alpha) * existence + (1 - Fraction(alpha)) * reward)
