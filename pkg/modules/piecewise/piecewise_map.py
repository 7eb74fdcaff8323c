"""
Piecewise Projective Maps

Homeomorphisms of the real line fixing infinity, given by PSL2 matrices on
the intervals between finitely many algebraic breakpoints. Values are kept in
canonical form (no two adjacent pieces equal), which makes equality and
hashing exact.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from modules.exact.algebraic import (
    INFINITY,
    NEG_INFINITY,
    ProjPoint,
    RealAlgebraic,
    alg_compare,
    is_infinite,
    point_compare,
)
from modules.exact.qsqrt2 import QSqrt2, RINGS
from modules.projective.interval import Interval
from modules.projective.mat2 import IDENTITY, Mat2, act, act_value, classify, compose, inverse
from modules.shared.errors import (
    ClassificationError,
    ContinuityError,
    LiftPreconditionError,
    MonotonicityError,
)


class PiecewiseMap:
    """Breakpoints b_1 < ... < b_n and pieces M_0..M_n; M_k acts on [b_k, b_k+1]."""

    __slots__ = ("breakpoints", "pieces", "_key", "_hash")

    def __init__(self, breakpoints: Sequence[RealAlgebraic], pieces: Sequence[Mat2]) -> None:
        breakpoints = tuple(breakpoints)
        pieces = tuple(pieces)
        _check_structure(breakpoints, pieces)
        _check_values(breakpoints, pieces)
        self._set(breakpoints, pieces)

    def _set(self, breakpoints, pieces) -> None:
        self.breakpoints: Tuple[RealAlgebraic, ...] = breakpoints
        self.pieces: Tuple[Mat2, ...] = pieces
        self._key = None
        self._hash = None

    @classmethod
    def _trusted(cls, breakpoints, pieces) -> "PiecewiseMap":
        obj = cls.__new__(cls)
        obj._set(tuple(breakpoints), tuple(pieces))
        return obj

    @classmethod
    def moebius(cls, matrix: Mat2) -> "PiecewiseMap":
        """One-piece map; the matrix must fix infinity."""
        return cls((), (matrix,))

    @property
    def key(self):
        if self._key is None:
            self._key = (tuple(b.key for b in self.breakpoints), self.pieces)
        return self._key

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PiecewiseMap):
            return NotImplemented
        return pw_equal(self, other)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.key)
        return self._hash

    def __reduce__(self):
        return (PiecewiseMap._trusted, (self.breakpoints, self.pieces))

    def __repr__(self) -> str:
        if not self.breakpoints:
            return f"PiecewiseMap({self.pieces[0]!r})"
        return f"PiecewiseMap({len(self.pieces)} pieces, breakpoints={list(self.breakpoints)!r})"

    def is_identity(self) -> bool:
        return not self.breakpoints and self.pieces[0].is_identity()

    def piece_index(self, x: RealAlgebraic) -> int:
        """Index of a piece whose closed interval contains x."""
        return bisect_right(self.breakpoints, x)

    def piece_span(self, index: int) -> Tuple[ProjPoint, ProjPoint]:
        lo = self.breakpoints[index - 1] if index > 0 else NEG_INFINITY
        hi = self.breakpoints[index] if index < len(self.breakpoints) else INFINITY
        return lo, hi

    def to_json(self) -> dict:
        return {"breakpoints": [b.to_json() for b in self.breakpoints],
                "pieces": [p.to_json() for p in self.pieces]}

    @classmethod
    def from_json(cls, data: dict) -> "PiecewiseMap":
        return cls([RealAlgebraic.from_json(b) for b in data["breakpoints"]],
                   [Mat2.from_json(p) for p in data["pieces"]])


IDENTITY_MAP = PiecewiseMap._trusted((), (IDENTITY,))

# default breakpoint condition per ring
BREAKPOINT_RULES = {"integers": "rational", "zsqrt2-with-halves": "hyperbolic"}


def _check_structure(breakpoints, pieces) -> None:
    if len(pieces) != len(breakpoints) + 1:
        raise ValueError(f"{len(breakpoints)} breakpoints need {len(breakpoints) + 1} pieces, got {len(pieces)}")
    for left, right in zip(breakpoints, breakpoints[1:]):
        if alg_compare(left, right) >= 0:
            raise ValueError(f"breakpoints not strictly increasing at {right!r}")


def _pole_point(matrix: Mat2) -> Optional[RealAlgebraic]:
    pole = matrix.pole
    return None if pole is None else RealAlgebraic.from_qsqrt2(pole)


def _check_values(breakpoints, pieces) -> None:
    if not pieces[0].fixes_infinity():
        raise MonotonicityError("first piece does not fix infinity", NEG_INFINITY)
    if not pieces[-1].fixes_infinity():
        raise MonotonicityError("last piece does not fix infinity", INFINITY)
    for index, piece in enumerate(pieces):
        pole = _pole_point(piece)
        if pole is None:
            continue
        lo = breakpoints[index - 1] if index > 0 else NEG_INFINITY
        hi = breakpoints[index] if index < len(breakpoints) else INFINITY
        if point_compare(lo, pole) <= 0 <= point_compare(hi, pole):
            raise MonotonicityError(f"pole of piece {index} lies in its interval", pole)
    for index, point in enumerate(breakpoints):
        if act(point, pieces[index]) != act(point, pieces[index + 1]):
            raise ContinuityError(f"pieces {index} and {index + 1} disagree", point)


def pw_normalize(pm: PiecewiseMap) -> PiecewiseMap:
    """Merge adjacent equal pieces and drop the breakpoints between them."""
    _check_structure(pm.breakpoints, pm.pieces)
    _check_values(pm.breakpoints, pm.pieces)
    return _merged(pm.breakpoints, pm.pieces)


def _merged(breakpoints, pieces) -> PiecewiseMap:
    kept_points: List[RealAlgebraic] = []
    kept_pieces: List[Mat2] = [pieces[0]]
    for point, piece in zip(breakpoints, pieces[1:]):
        if piece == kept_pieces[-1]:
            continue
        kept_points.append(point)
        kept_pieces.append(piece)
    if not kept_points and kept_pieces[0].is_identity():
        return IDENTITY_MAP
    return PiecewiseMap._trusted(kept_points, kept_pieces)


def pw_compose(f: PiecewiseMap, g: PiecewiseMap) -> PiecewiseMap:
    """The map x -> g(f(x)) in canonical form."""
    if f.is_identity():
        return g
    if g.is_identity():
        return f
    images = [NEG_INFINITY] + [act(p, piece) for p, piece in zip(f.breakpoints, f.pieces)] + [INFINITY]
    points: List[RealAlgebraic] = []
    pieces: List[Mat2] = []
    j = 0
    targets = g.breakpoints
    for k, f_piece in enumerate(f.pieces):
        lower, upper = images[k], images[k + 1]
        while j < len(targets) and point_compare(targets[j], lower) <= 0:
            j += 1
        back = None
        while j < len(targets) and point_compare(targets[j], upper) < 0:
            if back is None:
                back = inverse(f_piece)
            pieces.append(compose(f_piece, g.pieces[j]))
            points.append(act(targets[j], back))
            j += 1
        pieces.append(compose(f_piece, g.pieces[j]))
        if k < len(f.breakpoints):
            points.append(f.breakpoints[k])
    return _merged(points, pieces)


def pw_invert(f: PiecewiseMap) -> PiecewiseMap:
    if f.is_identity():
        return f
    images = [act(p, piece) for p, piece in zip(f.breakpoints, f.pieces)]
    return PiecewiseMap._trusted(images, [inverse(piece) for piece in f.pieces])


def pw_equal(f: PiecewiseMap, g: PiecewiseMap) -> bool:
    """Exact equality of canonical forms."""
    if f is g:
        return True
    if f.pieces != g.pieces or len(f.breakpoints) != len(g.breakpoints):
        return False
    return all(x == y for x, y in zip(f.breakpoints, g.breakpoints))


def pw_apply(pm: PiecewiseMap, x: ProjPoint) -> ProjPoint:
    if is_infinite(x):
        return x
    return act(x, pm.pieces[pm.piece_index(x)])


def pw_apply_value(pm: PiecewiseMap, value) -> QSqrt2:
    """Evaluate at a point of Q(sqrt2); the result stays in Q(sqrt2)."""
    value = QSqrt2.coerce(value)
    index = pm.piece_index(RealAlgebraic.from_qsqrt2(value))
    return act_value(value, pm.pieces[index])


def pw_pieces_on(pm: PiecewiseMap, interval: Interval) -> List[Mat2]:
    """Pieces whose interval meets the interior of ``interval``."""
    lo = RealAlgebraic.from_qsqrt2(interval.lo)
    hi = RealAlgebraic.from_qsqrt2(interval.hi)
    found = []
    for index, piece in enumerate(pm.pieces):
        span_lo, span_hi = pm.piece_span(index)
        if point_compare(span_lo, hi) < 0 and point_compare(lo, span_hi) < 0:
            found.append(piece)
    return found


@dataclass
class ValidationReport:
    ring: str
    violations: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def _transition_fixes(point: RealAlgebraic, left: Mat2, right: Mat2) -> bool:
    transition = compose(right, inverse(left))
    try:
        kind = classify(transition)
    except ClassificationError:
        return False
    return kind.is_hyperbolic and point in kind.finite_fixed_points()


def pw_validate(pm: PiecewiseMap, ring: str, breakpoint_rule: Optional[str] = None) -> ValidationReport:
    """Check every invariant and ring condition, collecting each violation.

    Breakpoints must be rational under ring = integers and hyperbolic fixed
    points under zsqrt2-with-halves, unless ``breakpoint_rule`` names one.
    """
    if ring not in RINGS:
        raise ValueError(f"unknown ring {ring!r}; expected one of {RINGS}")
    rule = breakpoint_rule or BREAKPOINT_RULES[ring]
    if rule not in BREAKPOINT_RULES.values():
        raise ValueError(f"unknown breakpoint rule {rule!r}")
    report = ValidationReport(ring)
    breakpoints, pieces = pm.breakpoints, pm.pieces
    try:
        _check_structure(breakpoints, pieces)
    except ValueError as error:
        report.violations.append(f"structure: {error}")
        return report
    for end, piece in (("first", pieces[0]), ("last", pieces[-1])):
        if not piece.fixes_infinity():
            report.violations.append(f"infinity: {end} piece {piece!r} does not fix infinity")
    for index, piece in enumerate(pieces):
        pole = _pole_point(piece)
        lo, hi = pm.piece_span(index)
        if pole is not None and point_compare(lo, pole) <= 0 <= point_compare(hi, pole):
            report.violations.append(f"monotonicity: pole of piece {index} lies in its interval")
        if not piece.in_ring(ring):
            report.violations.append(f"ring: piece {index} {piece!r} has entries outside {ring}")
        if index and piece == pieces[index - 1]:
            report.violations.append(f"canonical: pieces {index - 1} and {index} are equal")
    for index, point in enumerate(breakpoints):
        left, right = pieces[index], pieces[index + 1]
        if act(point, left) != act(point, right):
            report.violations.append(f"continuity: jump at breakpoint {index} ({float(point):.6g})")
            continue
        if rule == "rational" and point.rational is None:
            report.violations.append(f"breakpoint: {index} ({float(point):.6g}) is not rational")
        if rule == "hyperbolic" and not _transition_fixes(point, left, right):
            report.violations.append(
                f"breakpoint: {index} ({float(point):.6g}) is not a hyperbolic fixed point over the ring")
    return report


def splice_lift(m: Mat2, interval: Interval) -> PiecewiseMap:
    """Identity outside the fixed points of a hyperbolic m, and m between them."""
    try:
        kind = classify(m)
    except ClassificationError as error:
        raise LiftPreconditionError(str(error)) from error
    if not kind.is_hyperbolic:
        raise LiftPreconditionError(f"{m!r} is {kind.kind}, not hyperbolic")
    if any(is_infinite(p) for p in kind.fixed_points):
        raise LiftPreconditionError(f"{m!r} fixes infinity")
    low, high = kind.fixed_points
    if not (low < RealAlgebraic.from_qsqrt2(interval.lo) and
            RealAlgebraic.from_qsqrt2(interval.hi) < high):
        raise LiftPreconditionError(
            f"fixed points {float(low):.6g}, {float(high):.6g} do not flank {interval}")
    return PiecewiseMap((low, high), (IDENTITY, m, IDENTITY))
