#!/usr/bin/env python3
"""
Tests for PSL2 matrices over Q(sqrt2) and closed intervals.
"""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from modules.exact.algebraic import INFINITY, RealAlgebraic
from modules.exact.qsqrt2 import SQRT2, QSqrt2
from modules.projective.interval import Interval, parse_interval
from modules.projective.mat2 import (
    IDENTITY,
    S_MATRIX,
    T_MATRIX,
    Mat2,
    act,
    act_value,
    classify,
    compose,
    derivative_bounds,
    diagonal,
    dist_to_identity,
    in_ball,
    inverse,
    mat_group_ops,
    translation,
)
from modules.shared.errors import ClassificationError, DeterminantError, PoleInIntervalError

generators = st.sampled_from([S_MATRIX, T_MATRIX, inverse(T_MATRIX), Mat2(2, 1, 1, 1),
                              translation(SQRT2), diagonal(SQRT2)])
words = st.lists(generators, min_size=1, max_size=6)
points = st.fractions(min_value=-50, max_value=50, max_denominator=60)


def test_interval_basics():
    interval = Interval.of(0, 1)
    assert interval.length == 1
    assert interval.midpoint == Fraction(1, 2)
    assert interval.radius_bound == 1
    assert interval.contains(Fraction(1, 3))
    assert not interval.contains(2)
    assert str(interval) == "[0, 1]"


def test_interval_scaling_keeps_midpoint():
    wide = Interval.of(0, 1).scaled(1 + Fraction(1, 48))
    assert wide.midpoint == Fraction(1, 2)
    assert wide.length == 1 + Fraction(1, 48)
    assert wide.lo == Fraction(-1, 96)


def test_interval_parsing_and_errors():
    assert parse_interval("0,1/2") == Interval.of(0, Fraction(1, 2))
    assert parse_interval("-sqrt2, sqrt2").length == 2 * SQRT2
    with pytest.raises(ValueError):
        Interval.of(1, 0)
    with pytest.raises(ValueError):
        parse_interval("0;1")


def test_canonical_sign():
    assert Mat2(-1, 0, 0, -1) == IDENTITY
    assert Mat2(0, -1, 1, 0).b == 1
    assert hash(Mat2(-2, -1, -1, -1)) == hash(Mat2(2, 1, 1, 1))


def test_determinant_is_enforced():
    with pytest.raises(DeterminantError):
        Mat2(1, 1, 1, 1)
    assert Mat2.from_entries(2, 0, 0, 2) == IDENTITY
    assert Mat2.from_entries(2, 0, 0, 1) == diagonal(SQRT2)
    with pytest.raises(DeterminantError):
        Mat2.from_entries(3, 0, 0, 1)


def test_compose_is_apply_first_then_second():
    assert compose(T_MATRIX, S_MATRIX) == Mat2(0, 1, -1, -1)
    x = QSqrt2(Fraction(1, 3))
    assert act_value(act_value(x, T_MATRIX), S_MATRIX) == QSqrt2(Fraction(-3, 4))
    assert act_value(x, compose(T_MATRIX, S_MATRIX)) == QSqrt2(Fraction(-3, 4))


def test_group_ops_dispatch():
    g = Mat2(2, 1, 1, 1)
    assert mat_group_ops(g, S_MATRIX, "compose") == compose(g, S_MATRIX)
    assert mat_group_ops(g, None, "invert-first") == inverse(g)
    assert compose(g, inverse(g)) == IDENTITY
    with pytest.raises(ValueError):
        mat_group_ops(g, g, "conjugate")


@given(words, points)
def test_action_is_a_right_action(word, x):
    x = QSqrt2(x)
    total = IDENTITY
    value = x
    for g in word:
        total = compose(total, g)
        if value is INFINITY:
            value = INFINITY if not g.c else g.a / g.c
        else:
            value = act_value(value, g)
    assert act_value(x, total) == value


def test_act_on_points():
    assert act(INFINITY, T_MATRIX) is INFINITY
    assert act(INFINITY, S_MATRIX) == RealAlgebraic.from_rational(0)
    assert act(RealAlgebraic.from_rational(0), S_MATRIX) is INFINITY
    assert act(RealAlgebraic.from_qsqrt2(SQRT2), T_MATRIX) == RealAlgebraic.from_qsqrt2(QSqrt2(1, 1))


def test_distance_to_identity():
    assert dist_to_identity(IDENTITY) == 0
    assert dist_to_identity(translation(Fraction(1, 100))) == Fraction(1, 100)
    assert dist_to_identity(Mat2(1, 0, Fraction(-1, 50), 1)) == Fraction(1, 50)
    assert in_ball(translation(Fraction(1, 100)), Fraction(1, 50))
    assert not in_ball(translation(Fraction(1, 50)), Fraction(1, 50))


def test_derivative_bounds():
    assert derivative_bounds(translation(3), Interval.of(0, 1)) == (QSqrt2(1), QSqrt2(1))
    low, high = derivative_bounds(Mat2(1, 0, 1, 1), Interval.of(0, 1))
    assert (low, high) == (QSqrt2(Fraction(1, 4)), QSqrt2(1))
    with pytest.raises(PoleInIntervalError):
        derivative_bounds(S_MATRIX, Interval.of(-1, 1))


def test_classification():
    assert classify(T_MATRIX).kind == "parabolic"
    assert classify(T_MATRIX).fixed_points == (INFINITY,)
    assert classify(S_MATRIX).kind == "elliptic"
    doubling = classify(diagonal(SQRT2))
    assert doubling.kind == "hyperbolic"
    assert doubling.fixed_points == (RealAlgebraic.from_rational(0), INFINITY)
    assert doubling.finite_fixed_points() == (RealAlgebraic.from_rational(0),)
    with pytest.raises(ClassificationError):
        classify(IDENTITY)


def test_hyperbolic_fixed_points_outside_qsqrt2():
    kind = classify(Mat2(2, 1, 1, 1))
    assert kind.is_hyperbolic
    low, high = kind.fixed_points
    assert abs(float(low) - (1 - 5 ** 0.5) / 2) < 1e-12
    assert abs(float(high) - (1 + 5 ** 0.5) / 2) < 1e-12
    assert low.as_qsqrt2() is None


def test_hyperbolic_fixed_points_inside_qsqrt2():
    # trace 6, discriminant 32 = (4 sqrt2)^2: fixed points 1 +- sqrt2
    kind = classify(Mat2(5, 2, 2, 1))
    assert kind.is_hyperbolic
    assert [p.as_qsqrt2() for p in kind.fixed_points] == [QSqrt2(1, -1), QSqrt2(1, 1)]


def test_json_form():
    g = Mat2(SQRT2, 1, 1, SQRT2)
    assert Mat2.from_json(g.to_json()) == g
    assert g.in_ring("zsqrt2-with-halves")
    assert not g.in_ring("integers")
