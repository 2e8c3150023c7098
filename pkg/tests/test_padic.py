import math
from fractions import Fraction

import pytest

from ultrametric.padic import (
    PAdicParams,
    WeightSpec,
    ball_measure,
    ball_weighted_measure,
    is_prime,
    padic_norm,
    padic_valuation,
    sphere_measure,
    sphere_weighted_measure,
    vector_norm,
)
from ultrametric.scalar import DivergenceError, Scalar


def test_params_validation():
    assert PAdicParams(7, 3).p == 7
    for bad in [(4, 1), (1, 1), (2, 0), (2, -1)]:
        with pytest.raises(ValueError):
            PAdicParams(*bad)


def test_is_prime_small():
    assert [k for k in range(30) if is_prime(k)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


@pytest.mark.parametrize("x,p,want", [
    (0, 2, math.inf), (12, 2, 2), (Fraction(9, 2), 3, 2), (Fraction(9, 2), 2, -1), (-5, 5, 1), (7, 5, 0),
])
def test_valuation(x, p, want):
    assert padic_valuation(x, p) == want


@pytest.mark.parametrize("x,p,want", [
    (0, 2, Fraction(0)), (12, 2, Fraction(1, 4)), (5, 7, Fraction(1)), (Fraction(1, 9), 3, Fraction(9)),
])
def test_norm(x, p, want):
    r = padic_norm(x, p)
    assert r.exact and r == Scalar(want)


def test_vector_norm():
    assert vector_norm([0, 0], PAdicParams(2, 2)) == Scalar(0)
    assert vector_norm([Fraction(1, 3), 9], PAdicParams(3, 2)) == Scalar(3)
    assert vector_norm([2, 4], PAdicParams(2, 2)) == Scalar(Fraction(1, 2))
    with pytest.raises(ValueError):
        vector_norm([1], PAdicParams(2, 2))


def test_ball_measure_examples():
    for p in (2, 3, 5):
        for n in (1, 2, 3):
            assert ball_measure(0, PAdicParams(p, n)) == Scalar(1)
    assert ball_measure(2, PAdicParams(3, 2)) == Scalar(81)
    assert ball_measure(-3, PAdicParams(2, 1)) == Scalar(Fraction(1, 8))


def test_sphere_weighted_examples():
    p2n1 = PAdicParams(2, 1)
    assert sphere_weighted_measure(0, WeightSpec(0), p2n1) == Scalar(Fraction(1, 2))
    assert sphere_weighted_measure(1, WeightSpec(1), p2n1) == Scalar(2)
    assert sphere_measure(0, p2n1) == Fraction(1, 2)
    s = sphere_weighted_measure(1, WeightSpec(Fraction(1, 2)), p2n1)
    assert not s.exact


def test_sphere_sum_equals_ball():
    params = PAdicParams(2, 1)
    partial = sum(sphere_measure(k, params) for k in range(-200, 1))
    assert Fraction(1) - partial == ball_measure(-201, params).as_fraction()


def test_ball_weighted_examples():
    p2n1 = PAdicParams(2, 1)
    r = ball_weighted_measure(0, WeightSpec(1), p2n1)
    # (1/2) / (1 - 2^-2); the ratio is p^-(n+gamma) = 1/4
    assert r.exact and r == Scalar(Fraction(2, 3))
    partial = sum(Fraction(2) ** (2 * j) * Fraction(1, 2) for j in range(-100, 1))
    assert abs(r.as_fraction() - partial) < Fraction(1, 2 ** 190)
    assert ball_weighted_measure(1, WeightSpec(0), PAdicParams(3, 1)) == Scalar(3)
    for k in range(-5, 6):
        assert ball_weighted_measure(k, WeightSpec(0), PAdicParams(5, 2)) == ball_measure(k, PAdicParams(5, 2))


def test_ball_weighted_diverges():
    with pytest.raises(DivergenceError):
        ball_weighted_measure(0, WeightSpec(-1), PAdicParams(2, 1))
    with pytest.raises(DivergenceError):
        ball_weighted_measure(0, WeightSpec(-3), PAdicParams(2, 2))


def test_ball_weighted_monotone_and_vanishing():
    params, w = PAdicParams(3, 2), WeightSpec(Fraction(-3, 2))
    values = [ball_weighted_measure(k, w, params) for k in range(-40, 10)]
    assert all(a < b for a, b in zip(values, values[1:]))
    assert values[0] < Scalar(Fraction(1, 10 ** 9))
