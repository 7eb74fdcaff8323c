#!/usr/bin/env python3
"""
Tests for exact arithmetic: Q(sqrt2) and real algebraic numbers.
"""

import random
from fractions import Fraction
from itertools import combinations

import mpmath
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from modules.exact.algebraic import (
    INFINITY,
    NEG_INFINITY,
    RealAlgebraic,
    _apply_irrational,
    alg_apply_moebius,
    alg_approx,
    alg_compare,
    is_infinite,
    point_compare,
    point_from_json,
    point_to_json,
)
from modules.exact.qsqrt2 import SQRT2, QSqrt2, parse_qsqrt2, qsqrt2_field_ops, qsqrt2_sign
from modules.projective.mat2 import Mat2, classify, inverse
from modules.shared.errors import DegreeBoundError, IsolationError, ZeroDivisionInFieldError

fractions = st.fractions(min_value=-1000, max_value=1000, max_denominator=1000)
elements = st.builds(QSqrt2, fractions, fractions)


# -- Q(sqrt2) -------------------------------------------------------------------

def test_conjugate_product_is_norm():
    x = QSqrt2(1, 1)
    assert x * x.conjugate() == QSqrt2(-1)
    assert x.norm() == -1
    assert x.inverse() == QSqrt2(-1, 1)


def test_sign_of_close_opposite_terms():
    assert QSqrt2(3, -2).sign() == 1      # 3 - 2.828...
    assert QSqrt2(1, -1).sign() == -1
    assert QSqrt2(-3, 2).sign() == -1
    assert qsqrt2_sign(QSqrt2(0)) == 0


def test_comparisons_with_plain_numbers():
    assert QSqrt2(1) == 1
    assert QSqrt2(Fraction(1, 2)) == Fraction(1, 2)
    assert SQRT2 > Fraction(141, 100)
    assert SQRT2 < Fraction(142, 100)


def test_exact_square_roots():
    assert QSqrt2(3, 2).sqrt() == QSqrt2(1, 1)
    assert QSqrt2(2).sqrt() == SQRT2
    assert QSqrt2(Fraction(9, 4)).sqrt() == QSqrt2(Fraction(3, 2))
    assert QSqrt2(3).sqrt() is None
    assert QSqrt2(-4).sqrt() is None


def test_division_by_zero():
    with pytest.raises(ZeroDivisionInFieldError):
        QSqrt2(1) / QSqrt2(0)
    with pytest.raises(ZeroDivisionInFieldError):
        QSqrt2(0).inverse()


def test_field_ops_dispatch():
    x, y = QSqrt2(1, 1), QSqrt2(2, -1)
    assert qsqrt2_field_ops(x, y, "add") == QSqrt2(3, 0)
    assert qsqrt2_field_ops(x, y, "sub") == QSqrt2(-1, 2)
    assert qsqrt2_field_ops(x, y, "mul") == QSqrt2(0, 1)
    assert qsqrt2_field_ops(x, y, "div") * y == x
    with pytest.raises(ValueError):
        qsqrt2_field_ops(x, y, "pow")


def test_ring_membership():
    assert QSqrt2(Fraction(1, 2), Fraction(3, 4)).in_ring("zsqrt2-with-halves")
    assert not QSqrt2(Fraction(1, 3)).in_ring("zsqrt2-with-halves")
    assert QSqrt2(5).in_ring("integers")
    assert not SQRT2.in_ring("integers")
    with pytest.raises(ValueError):
        SQRT2.in_ring("gaussian")


@pytest.mark.parametrize("text, expected", [
    ("1/2", QSqrt2(Fraction(1, 2))),
    ("sqrt2", QSqrt2(0, 1)),
    ("-sqrt2", QSqrt2(0, -1)),
    ("1/2-3/4*sqrt2", QSqrt2(Fraction(1, 2), Fraction(-3, 4))),
    ("3+2√2", QSqrt2(3, 2)),
])
def test_parse_literals(text, expected):
    assert parse_qsqrt2(text) == expected


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        parse_qsqrt2("")
    with pytest.raises(ValueError):
        parse_qsqrt2("sqrt2+1")


def test_bounds_enclose_value():
    lo, hi = SQRT2.bounds(Fraction(1, 10**6))
    assert lo < SQRT2 < hi
    assert hi - lo <= Fraction(1, 10**6)


def test_json_form():
    x = QSqrt2(Fraction(-1, 3), 2)
    assert x.to_json() == {"r": "-1/3", "s": "2/1"}
    assert QSqrt2.from_json(x.to_json()) == x


@given(elements, elements)
def test_division_inverts_multiplication(x, y):
    assume(y != 0)
    assert (x * y) / y == x


@given(elements, elements)
def test_order_is_total_and_consistent(x, y):
    assert (x < y) + (x == y) + (x > y) == 1
    assert (x - y).sign() == (x > y) - (x < y)


@given(elements)
def test_sign_agrees_with_float(x):
    assume(abs(float(x)) > 1e-6)
    assert x.sign() == (1 if float(x) > 0 else -1)


# -- real algebraic numbers ------------------------------------------------------

def test_rational_roundtrip():
    half = RealAlgebraic.from_rational(Fraction(1, 2))
    assert half.rational == Fraction(1, 2)
    assert half.as_qsqrt2() == QSqrt2(Fraction(1, 2))


def test_qsqrt2_roundtrip():
    for value in (SQRT2, QSqrt2(1, -1), QSqrt2(Fraction(1, 3), Fraction(5, 7))):
        point = RealAlgebraic.from_qsqrt2(value)
        assert point.rational is None
        assert point.as_qsqrt2() == value


def test_isolated_root_equals_embedded_sqrt2():
    root = RealAlgebraic([-2, 0, 1], 1, 2)
    assert root == RealAlgebraic.from_qsqrt2(SQRT2)
    assert alg_compare(root, RealAlgebraic.from_rational(Fraction(141, 100))) == 1
    assert alg_compare(root, RealAlgebraic.from_rational(Fraction(142, 100))) == -1


def test_conjugate_roots_are_ordered():
    plus = RealAlgebraic.from_qsqrt2(QSqrt2(1, 1))
    minus = RealAlgebraic.from_qsqrt2(QSqrt2(1, -1))
    assert plus.poly == minus.poly
    assert minus < plus
    assert alg_compare(plus, minus) == 1


def test_quartic_root_compares_exactly():
    # sqrt(2 + sqrt2) is a root of t^4 - 4t^2 + 2
    root = RealAlgebraic([2, 0, -4, 0, 1], Fraction(18, 10), Fraction(19, 10))
    assert root.degree == 4
    assert root.as_qsqrt2() is None
    lo, hi = alg_approx(root, Fraction(1, 10**9))
    assert hi - lo <= Fraction(1, 10**9)
    assert abs(float(lo) - 1.8477590650225735) < 1e-8
    assert root > RealAlgebraic.from_qsqrt2(SQRT2)


def test_isolation_errors():
    with pytest.raises(IsolationError):
        RealAlgebraic([1, 0, -2, 0, 1], 0, 2)      # (t^2 - 1)^2
    with pytest.raises(IsolationError):
        RealAlgebraic([-2, 0, 1], -2, 2)           # two roots inside
    with pytest.raises(IsolationError):
        RealAlgebraic([-2, 0, 1], 2, 1)


def test_degree_bound():
    with pytest.raises(DegreeBoundError):
        RealAlgebraic([-2, 0, 0, 0, 0, 1], 1, 2)   # fifth root of 2


def test_moebius_image_of_irrational_point():
    root = RealAlgebraic.from_qsqrt2(SQRT2)
    image = alg_apply_moebius(root, Mat2(1, 1, 0, 1))
    assert image == RealAlgebraic.from_qsqrt2(QSqrt2(1, 1))
    # (sqrt2 + 0) / (sqrt2 + 1) = 2 - sqrt2
    image = alg_apply_moebius(root, Mat2(1, 0, 1, 1))
    assert image == RealAlgebraic.from_qsqrt2(QSqrt2(2, -1))


def test_moebius_pole_goes_to_infinity():
    point = RealAlgebraic.from_rational(-1)
    assert alg_apply_moebius(point, Mat2(1, 0, 1, 1)) is INFINITY


def test_infinities_order_and_json():
    zero = RealAlgebraic.from_rational(0)
    assert point_compare(NEG_INFINITY, zero) == -1
    assert point_compare(INFINITY, zero) == 1
    assert point_compare(INFINITY, INFINITY) == 0
    assert point_from_json(point_to_json(INFINITY)) is INFINITY
    assert point_from_json(point_to_json(NEG_INFINITY)) is NEG_INFINITY
    root = RealAlgebraic([2, 0, -4, 0, 1], Fraction(18, 10), Fraction(19, 10))
    assert point_from_json(point_to_json(root)) == root


# -- transport of quadratic irrationalities over Q(sqrt2) -------------------------

TRANSPORT_MATRICES = [Mat2(1, SQRT2, 0, 1), Mat2(QSqrt2(1, 1), 1, SQRT2, 1), Mat2(2, 1, 1, 1)]


def test_fixed_points_carry_their_quadratic(dyadic_pair):
    for generator, degree in ((dyadic_pair.a, 2), (dyadic_pair.b, 4)):
        for point in classify(generator).finite_fixed_points():
            assert point.over_k is not None
            assert point.degree == degree
            # the factoring constructor finds the same minimal polynomial
            assert RealAlgebraic(point.poly, point.lo, point.hi) == point


@pytest.mark.parametrize("matrix", TRANSPORT_MATRICES)
def test_transport_agrees_with_factoring(dyadic_pair, matrix):
    point = classify(dyadic_pair.b).finite_fixed_points()[1]
    image = alg_apply_moebius(point, matrix)
    assert image.over_k is not None
    assert RealAlgebraic(image.poly, image.lo, image.hi) == image
    plain = RealAlgebraic.from_json(point.to_json())
    assert plain.over_k is None
    assert _apply_irrational.__wrapped__(plain, matrix) == image
    assert alg_apply_moebius(image, inverse(matrix)) == point


# -- seeded runs at scale ---------------------------------------------------------------

def quartic_root():
    # sqrt(2 + sqrt2), a root of t^4 - 4t^2 + 2
    return RealAlgebraic([2, 0, -4, 0, 1], Fraction(18, 10), Fraction(19, 10))


def mpq(value):
    return mpmath.mpf(value.numerator) / value.denominator


def algebraic_pool(seed=1000):
    """Numbers of degree 1, 2 and 4 paired with independent 60-digit mpmath values."""
    rng = random.Random(seed)
    with mpmath.workdps(60):
        sqrt2 = mpmath.sqrt(2)
        rho = mpmath.sqrt(2 + sqrt2)
        pool = [(quartic_root(), rho)]
        for _ in range(12):
            q = Fraction(rng.randint(-500, 500), rng.randint(1, 60))
            pool.append((RealAlgebraic.from_rational(q), mpq(q)))
        for _ in range(12):
            r = Fraction(rng.randint(-300, 300), rng.randint(1, 40))
            s = Fraction(rng.randint(1, 300), rng.randint(1, 40)) * rng.choice((1, -1))
            pool.append((RealAlgebraic.from_qsqrt2(QSqrt2(r, s)), mpq(r) + mpq(s) * sqrt2))
        for _ in range(16):
            a = Fraction(rng.randint(1, 40), rng.randint(1, 40))
            b = Fraction(rng.randint(0, 40), rng.randint(1, 20))
            c = Fraction(rng.randint(0, 10), rng.randint(1, 20))
            d = (1 + b * c) / a
            value = (mpq(a) * rho + mpq(b)) / (mpq(c) * rho + mpq(d))
            pool.append((alg_apply_moebius(quartic_root(), Mat2(a, b, c, d)), value))
        # rational neighbours of the quartic root closer than 1e-30
        below = Fraction(int(mpmath.floor(rho * 10**30)), 10**30)
        above = below + Fraction(1, 10**30)
        pool.extend((RealAlgebraic.from_rational(q), mpq(q)) for q in (below, above))
        # the same number reached through a detour
        detour = Mat2(3, 1, 2, 1)
        pool.append((alg_apply_moebius(alg_apply_moebius(quartic_root(), detour), inverse(detour)), rho))
        for matrix, value in ((Mat2(1, SQRT2, 0, 1), rho + sqrt2),
                              (Mat2(SQRT2, 0, 0, QSqrt2(0, Fraction(1, 2))), 2 * rho),
                              (Mat2(QSqrt2(1, 1), 1, SQRT2, 1), ((1 + sqrt2) * rho + 1) / (sqrt2 * rho + 1))):
            pool.append((alg_apply_moebius(quartic_root(), matrix), value))
    return pool


@pytest.mark.slow
def test_comparisons_agree_with_mpmath():
    pool = algebraic_pool()
    pairs = list(combinations(pool, 2))
    assert len(pairs) >= 1000
    with mpmath.workdps(60):
        for (x, vx), (y, vy) in pairs:
            gap = vx - vy
            expected = 0 if abs(gap) < mpmath.mpf(10) ** -45 else (1 if gap > 0 else -1)
            assert alg_compare(x, y) == expected
        for x, value in pool:
            assert abs(x.to_mpf(50) - value) < mpmath.mpf(10) ** -45


@pytest.mark.slow
@settings(max_examples=1000)
@given(elements, elements, elements)
def test_field_axioms_at_scale(x, y, z):
    assert (x + y) * z == x * z + y * z
    assert (x * y) * z == x * (y * z)
    assert x - x == 0
    if x:
        assert x * x.inverse() == 1
    assert qsqrt2_sign(x - y) == -qsqrt2_sign(y - x)


ROUND_TRIP_MATRICES = TRANSPORT_MATRICES + [Mat2(3, 1, 2, 1), Mat2(1, 0, Fraction(1, 5), 1)]


@pytest.mark.parametrize("matrix", ROUND_TRIP_MATRICES)
def test_moebius_round_trip_returns_the_point(matrix):
    back = inverse(matrix)
    for x, _ in algebraic_pool(seed=7)[:30]:
        image = alg_apply_moebius(x, matrix)
        if is_infinite(image):
            continue
        assert alg_apply_moebius(image, back) == x
