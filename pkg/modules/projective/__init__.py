"""
Projective Core

PSL2 matrices over Q(sqrt2) acting on the extended real line.
"""

from modules.projective.interval import Interval, parse_interval
from modules.projective.mat2 import (
    GAMMA,
    IDENTITY,
    S_MATRIX,
    T_MATRIX,
    Classification,
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

__all__ = [
    'Interval', 'parse_interval', 'GAMMA', 'IDENTITY', 'S_MATRIX', 'T_MATRIX',
    'Classification', 'Mat2', 'act', 'act_value', 'classify', 'compose',
    'derivative_bounds', 'diagonal', 'dist_to_identity', 'in_ball', 'inverse',
    'mat_group_ops', 'translation',
]
