"""
Exact Numbers

Rationals, the quadratic field Q(sqrt2) and real algebraic numbers of small degree.
"""

from modules.exact.qsqrt2 import (
    ONE,
    SQRT2,
    ZERO,
    QSqrt2,
    Rational,
    as_fraction,
    format_fraction,
    parse_qsqrt2,
    qsqrt2_field_ops,
    qsqrt2_sign,
    require_qsqrt2,
)
from modules.exact.algebraic import (
    INFINITY,
    NEG_INFINITY,
    ProjPoint,
    RealAlgebraic,
    alg_apply_moebius,
    alg_approx,
    alg_compare,
    is_infinite,
    point_compare,
    point_from_json,
    point_to_json,
    qsqrt2_poly_norm,
    quadratic_over_k,
)

__all__ = [
    'ONE', 'SQRT2', 'ZERO', 'QSqrt2', 'Rational', 'as_fraction', 'format_fraction',
    'parse_qsqrt2', 'qsqrt2_field_ops', 'qsqrt2_sign', 'require_qsqrt2',
    'INFINITY', 'NEG_INFINITY', 'ProjPoint', 'RealAlgebraic', 'alg_apply_moebius',
    'alg_approx', 'alg_compare', 'is_infinite', 'point_compare', 'point_from_json',
    'point_to_json', 'qsqrt2_poly_norm', 'quadratic_over_k',
]
