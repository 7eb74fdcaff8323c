"""
Piecewise Homeomorphisms

Piecewise projective maps of the line, their group operations, the text
grammar and the builtin generator libraries.
"""

from modules.piecewise.piecewise_map import (
    IDENTITY_MAP,
    PiecewiseMap,
    ValidationReport,
    pw_apply,
    pw_apply_value,
    pw_compose,
    pw_equal,
    pw_invert,
    pw_normalize,
    pw_pieces_on,
    pw_validate,
    splice_lift,
)
from modules.piecewise.generators import (
    GENERATOR_LIBRARIES,
    THOMPSON_F_RELATORS,
    affine_map,
    builtin_generators,
    check_relations,
    is_admissible_affine,
    pw_eval_word,
    thompson_f,
    translation_map,
)
from modules.piecewise.grammar import format_map, parse_map

__all__ = [
    'IDENTITY_MAP', 'PiecewiseMap', 'ValidationReport', 'pw_apply', 'pw_apply_value',
    'pw_compose', 'pw_equal', 'pw_invert', 'pw_normalize', 'pw_pieces_on', 'pw_validate',
    'splice_lift', 'GENERATOR_LIBRARIES', 'THOMPSON_F_RELATORS', 'affine_map',
    'builtin_generators', 'check_relations', 'is_admissible_affine', 'pw_eval_word',
    'thompson_f', 'translation_map', 'format_map', 'parse_map',
]
