import warnings

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pytsrp.lib.bias import (
    BiasKind,
    CustomBias,
    CustomGamma,
    GammaKind,
    as_bias,
    as_gamma,
    delta,
    gamma,
    omega,
    omega_closed_form,
)
from pytsrp.lib.errors import (
    GammaClampWarning,
    InvalidBiasError,
    OverlapOutsideRangeError,
)
from pytsrp.lib.ranges import TimeRange

from .strategies import bias_kinds, oracle_delta


def test_delta_examples():

    assert delta(BiasKind.front, 1, 10) == 10
    assert delta(BiasKind.flat, 7, 10) == 1
    assert delta(BiasKind.back, 3, 10) == 3
    assert [delta(BiasKind.middle, i, 5) for i in range(1, 6)] == [1, 2, 3, 2, 1]
    assert [delta(BiasKind.middle, i, 4) for i in range(1, 5)] == [1, 2, 2, 1]

    with pytest.raises(InvalidBiasError):
        delta(BiasKind.flat, 0, 10)
    with pytest.raises(InvalidBiasError):
        delta(BiasKind.front, 11, 10)


@pytest.mark.parametrize("length", range(1, 21))
def test_delta_monotone_structure(length):

    front = [delta(BiasKind.front, i, length) for i in range(1, length + 1)]
    back = [delta(BiasKind.back, i, length) for i in range(1, length + 1)]
    middle = [delta(BiasKind.middle, i, length) for i in range(1, length + 1)]

    assert all(a > b for a, b in zip(front, front[1:]))
    assert all(a < b for a, b in zip(back, back[1:]))
    peak = middle.index(max(middle))
    assert all(a <= b for a, b in zip(middle[:peak], middle[1 : peak + 1]))
    assert all(a >= b for a, b in zip(middle[peak:], middle[peak + 1 :]))

    for kind in BiasKind:
        for i in range(1, length + 1):
            assert delta(kind, i, length) >= 1
            assert delta(kind, i, length) == oracle_delta(kind, i, length)


def test_names():

    assert as_bias("Front") == BiasKind.front
    assert as_gamma("reciprocal") == GammaKind.reciprocal
    with pytest.raises(InvalidBiasError):
        as_bias("exponential")
    with pytest.raises(InvalidBiasError):
        as_gamma("two")


def test_omega_examples():

    r = TimeRange(1, 10)
    assert omega(r, [TimeRange(1, 5)], BiasKind.flat) == 0.5
    assert omega(r, [TimeRange(1, 5)], BiasKind.front) == pytest.approx(
        40 / 55, abs=1e-9
    )
    assert omega(r, [], BiasKind.front) == 0.0
    assert omega_closed_form(r, [], BiasKind.middle) == 0.0

    assert omega_closed_form(
        TimeRange(1, 5), [TimeRange(2, 3)], BiasKind.back
    ) == pytest.approx(5 / 15, abs=1e-9)

    for kind in BiasKind:
        assert omega(TimeRange(1, 1), [TimeRange(1, 1)], kind) == 1.0
        assert omega_closed_form(TimeRange(1, 1), [TimeRange(1, 1)], kind) == 1.0

    with pytest.raises(OverlapOutsideRangeError):
        omega(r, [TimeRange(8, 12)], BiasKind.flat)
    with pytest.raises(OverlapOutsideRangeError):
        omega_closed_form(r, [TimeRange(0, 2)], BiasKind.front)


@pytest.mark.parametrize("kind", list(BiasKind))
def test_closed_form_exhaustive(kind):

    # Every contiguous segment of every range up to length 20
    for length in range(1, 21):
        r = TimeRange(100, 100 + length - 1)
        for a in range(r.start, r.end + 1):
            for b in range(a, r.end + 1):
                part = [TimeRange(a, b)]
                loop = omega(r, part, kind)
                closed = omega_closed_form(r, part, kind)
                assert abs(loop - closed) <= 1e-12
                assert 0.0 < loop <= 1.0


@given(
    bias_kinds,
    st.integers(1, 2000),
    st.data(),
)
@settings(max_examples=500)
def test_closed_form_large_ranges(kind, length, data):

    r = TimeRange(0, length - 1)
    a = data.draw(st.integers(0, length - 1))
    b = data.draw(st.integers(a, length - 1))
    part = [TimeRange(a, b)]
    assert abs(omega(r, part, kind) - omega_closed_form(r, part, kind)) <= 1e-12


@given(bias_kinds, st.integers(2, 40), st.data())
@settings(max_examples=500)
def test_omega_additivity_and_normalization(kind, length, data):

    r = TimeRange(0, length - 1)
    cut = data.draw(st.integers(0, length - 2))
    first = TimeRange(0, cut)
    second = TimeRange(cut + 1, length - 1)

    whole = omega(r, [first, second], kind)
    assert whole == pytest.approx(1.0, abs=1e-12)
    assert omega(r, [r], kind) == 1.0
    assert omega(r, [first], kind) + omega(r, [second], kind) == pytest.approx(
        whole, abs=1e-12
    )


@given(st.integers(2, 40), st.data())
@settings(max_examples=500)
def test_positional_sensitivity_and_mirror_symmetry(length, data):

    r = TimeRange(0, length - 1)
    size = data.draw(st.integers(1, length - 1))
    front_part = [TimeRange(0, size - 1)]
    back_part = [TimeRange(length - size, length - 1)]

    assert omega(r, front_part, BiasKind.front) > omega(r, back_part, BiasKind.front)
    assert omega(r, back_part, BiasKind.back) > omega(r, front_part, BiasKind.back)
    assert omega(r, front_part, BiasKind.flat) == omega(r, back_part, BiasKind.flat)
    assert omega(r, front_part, BiasKind.flat) == pytest.approx(size / length)

    # Mirroring a segment swaps front and back bias
    a = data.draw(st.integers(0, length - 1))
    b = data.draw(st.integers(a, length - 1))
    segment = [TimeRange(a, b)]
    mirrored = [TimeRange(length - 1 - b, length - 1 - a)]
    assert omega(r, segment, BiasKind.front) == omega(r, mirrored, BiasKind.back)


def test_custom_bias():

    square = CustomBias(lambda i, length: i * i, name="square")
    assert str(square) == "square"
    assert delta(square, 3, 5) == 9
    r = TimeRange(1, 3)
    assert omega(r, [TimeRange(3, 3)], square) == pytest.approx(9 / 14)
    assert omega_closed_form(r, [TimeRange(3, 3)], square) == pytest.approx(9 / 14)

    with pytest.raises(InvalidBiasError):
        CustomBias(lambda i, length: i - 2)

    # Not positive beyond the checked lengths: rejected when used
    late = CustomBias(lambda i, length: 1 if length < 30 else 0)
    with pytest.raises(InvalidBiasError):
        delta(late, 1, 40)


def test_gamma():

    assert gamma(GammaKind.reciprocal, 2) == 0.5
    assert gamma(GammaKind.one, 7) == 1.0
    assert gamma(GammaKind.reciprocal, 4) == 0.25
    assert all(
        gamma(GammaKind.reciprocal, x) > gamma(GammaKind.reciprocal, x + 1)
        for x in range(2, 50)
    )

    half = CustomGamma(lambda x: 0.5, name="half")
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert gamma(half, 3) == 0.5

    too_large = CustomGamma(lambda x: float(x))
    with pytest.warns(GammaClampWarning):
        assert gamma(too_large, 3) == 1.0

    negative = CustomGamma(lambda x: -1.0)
    with pytest.warns(GammaClampWarning):
        assert gamma(negative, 2) == 0.0
