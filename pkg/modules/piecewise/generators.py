"""Builtin generator libraries for groups of piecewise projective maps."""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Sequence

from modules.exact.algebraic import RealAlgebraic
from modules.exact.qsqrt2 import QSqrt2, parse_qsqrt2
from modules.piecewise.piecewise_map import (
    IDENTITY_MAP,
    PiecewiseMap,
    pw_compose,
    pw_invert,
)
from modules.projective.mat2 import IDENTITY, Mat2, diagonal, translation
from modules.shared.errors import UnknownGeneratorError
from modules.words.word import Word, word_product

GENERATOR_LIBRARIES = ("thompson-f", "translation", "gamma-conjugators", "affine-extension")

# commutator relators of F with a = x0, b = x1, read left to right
THOMPSON_F_RELATORS = (Word("bAABaaBAba"), Word("bAAABaaaBAAbaa"))


def _q(value) -> QSqrt2:
    return parse_qsqrt2(value) if isinstance(value, str) else QSqrt2.coerce(value)


def translation_map(shift) -> PiecewiseMap:
    return PiecewiseMap.moebius(translation(_q(shift)))


def affine_map(scale_root, shift) -> PiecewiseMap:
    """t -> scale_root**2 * t + shift as a one-piece map."""
    root = _q(scale_root)
    if root.sign() <= 0:
        raise ValueError("scale_root must be positive")
    return PiecewiseMap.moebius(Mat2(root, _q(shift) / root, 0, root.inverse()))


def is_admissible_affine(scale, shift) -> bool:
    """Positive scale, and a shift that is not an integer when the scale is one."""
    scale, shift = _q(scale), _q(shift)
    if scale.sign() <= 0:
        return False
    if scale == 1:
        return not shift.in_ring("integers")
    return True


def thompson_f() -> List[PiecewiseMap]:
    """x0 = t + 1 and the three-breakpoint generator x1, both over PSL2(Z)."""
    x0 = translation_map(1)
    x1 = PiecewiseMap(
        [RealAlgebraic.from_rational(0), RealAlgebraic.from_rational(Fraction(1, 2)),
         RealAlgebraic.from_rational(1)],
        [IDENTITY, Mat2(1, 0, -1, 1), Mat2(3, -1, 1, 0), translation(1)],
    )
    return [x0, x1]


def gamma_conjugators() -> List[PiecewiseMap]:
    """t -> 2t and the conjugate of x1 by it."""
    gamma = PiecewiseMap.moebius(diagonal(QSqrt2(0, 1)))
    x1 = thompson_f()[1]
    return [gamma, pw_compose(pw_compose(pw_invert(gamma), x1), gamma)]


def builtin_generators(name: str, shift=None, scale_root=None) -> List[PiecewiseMap]:
    """Generator list for one of GENERATOR_LIBRARIES."""
    if name == "thompson-f":
        return thompson_f()
    if name == "translation":
        return [translation_map(1 if shift is None else shift)]
    if name == "gamma-conjugators":
        return gamma_conjugators()
    if name == "affine-extension":
        root = QSqrt2(0, 1) if scale_root is None else _q(scale_root)
        offset = 0 if shift is None else shift
        if not is_admissible_affine(root * root, _q(offset)):
            raise ValueError(f"affine map with scale {root * root} and shift {offset} is not admissible")
        return thompson_f() + [affine_map(root, offset)]
    raise UnknownGeneratorError(f"unknown generator library {name!r}; expected one of {GENERATOR_LIBRARIES}")


def letter_values(a: PiecewiseMap, b: PiecewiseMap) -> Dict[str, PiecewiseMap]:
    return {"a": a, "A": pw_invert(a), "b": b, "B": pw_invert(b)}


def pw_eval_word(word: Word, a: PiecewiseMap, b: PiecewiseMap) -> PiecewiseMap:
    return word_product(word, letter_values(a, b), pw_compose, IDENTITY_MAP)


def check_relations(generators: Sequence[PiecewiseMap],
                    relators: Sequence[Word] = THOMPSON_F_RELATORS) -> Dict[str, bool]:
    """Whether each relator evaluates to the identity map."""
    a, b = generators[0], generators[1]
    values = letter_values(a, b)
    return {
        str(relator): word_product(relator, values, pw_compose, IDENTITY_MAP).is_identity()
        for relator in relators
    }
