"""
Interval Sets

Finite unions of half-open intervals [lo, hi) with algebraic endpoints,
exact set algebra by endpoint sweep, Lebesgue measure and pushforwards
under Moebius and piecewise maps.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cmp_to_key
from typing import Callable, Iterable, List, Sequence, Tuple, Union

from modules.exact.algebraic import (
    INFINITY,
    NEG_INFINITY,
    ProjPoint,
    RealAlgebraic,
    alg_approx,
    is_infinite,
    point_compare,
    point_from_json,
    point_to_json,
)
from modules.exact.qsqrt2 import QSqrt2, as_fraction, parse_qsqrt2, require_qsqrt2
from modules.piecewise.piecewise_map import PiecewiseMap
from modules.projective.interval import Interval
from modules.projective.mat2 import Mat2, act
from modules.shared.errors import PoleInIntervalError

Span = Tuple[ProjPoint, ProjPoint]

_point_key = cmp_to_key(point_compare)


def as_point(value) -> ProjPoint:
    """Coerce numbers, "p/q" or Q(sqrt2) literals and "inf"/"-inf" to points."""
    if isinstance(value, RealAlgebraic) or is_infinite(value):
        return value
    if isinstance(value, str):
        lowered = value.strip().lower()
        if lowered in ("inf", "+inf"):
            return INFINITY
        if lowered == "-inf":
            return NEG_INFINITY
        value = parse_qsqrt2(value)
    return RealAlgebraic.from_qsqrt2(QSqrt2.coerce(value))


class IntervalSet:
    """Sorted, disjoint, non-adjacent half-open intervals."""

    __slots__ = ("intervals",)

    def __init__(self, spans: Iterable[Span] = ()) -> None:
        self.intervals: Tuple[Span, ...] = _normalize(
            (as_point(lo), as_point(hi)) for lo, hi in spans)

    @classmethod
    def _trusted(cls, spans: Sequence[Span]) -> "IntervalSet":
        obj = cls.__new__(cls)
        obj.intervals = tuple(spans)
        return obj

    @classmethod
    def of(cls, *spans) -> "IntervalSet":
        return cls(spans)

    @classmethod
    def from_interval(cls, interval: Interval) -> "IntervalSet":
        return cls([(interval.lo, interval.hi)])

    def __bool__(self) -> bool:
        return bool(self.intervals)

    def __len__(self) -> int:
        return len(self.intervals)

    def __iter__(self):
        return iter(self.intervals)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntervalSet):
            return NotImplemented
        return self.intervals == other.intervals

    def __hash__(self) -> int:
        return hash(self.intervals)

    def __repr__(self) -> str:
        parts = []
        for lo, hi in self.intervals:
            parts.append(f"[{_short(lo)}, {_short(hi)})")
        return "IntervalSet(" + " u ".join(parts) + ")"

    def endpoints(self) -> List[ProjPoint]:
        return [p for span in self.intervals for p in span]

    def is_bounded(self) -> bool:
        return not any(is_infinite(p) for p in self.endpoints())

    def contains_point(self, x: ProjPoint) -> bool:
        return any(point_compare(lo, x) <= 0 < point_compare(hi, x) for lo, hi in self.intervals)

    def to_json(self) -> dict:
        return {"intervals": [{"lo": point_to_json(lo), "hi": point_to_json(hi)}
                              for lo, hi in self.intervals]}

    @classmethod
    def from_json(cls, data: dict) -> "IntervalSet":
        return cls((point_from_json(s["lo"]), point_from_json(s["hi"])) for s in data["intervals"])


def _short(point: ProjPoint) -> str:
    if is_infinite(point):
        return repr(point)
    exact = point.as_qsqrt2()
    return str(exact) if exact is not None else f"~{float(point):.6g}"


def _normalize(spans: Iterable[Span]) -> Tuple[Span, ...]:
    kept = [s for s in spans if point_compare(s[0], s[1]) < 0]
    kept.sort(key=lambda s: _point_key(s[0]))
    merged: List[List[ProjPoint]] = []
    for lo, hi in kept:
        if merged and point_compare(lo, merged[-1][1]) <= 0:
            if point_compare(hi, merged[-1][1]) > 0:
                merged[-1][1] = hi
        else:
            merged.append([lo, hi])
    return tuple((lo, hi) for lo, hi in merged)


def _sorted_unique(points: Iterable[ProjPoint]) -> List[ProjPoint]:
    ordered = sorted(points, key=_point_key)
    unique: List[ProjPoint] = []
    for p in ordered:
        if not unique or point_compare(unique[-1], p) != 0:
            unique.append(p)
    return unique


def arrangement(sets: Sequence[IntervalSet]) -> List[Tuple[ProjPoint, ProjPoint, Tuple[int, ...]]]:
    """Elementary cells between consecutive endpoints, each with the indices of the sets covering it."""
    points = _sorted_unique(p for s in sets for p in s.endpoints())
    pointers = [0] * len(sets)
    cells = []
    for lo, hi in zip(points, points[1:]):
        covering = []
        for index, s in enumerate(sets):
            spans = s.intervals
            while pointers[index] < len(spans) and point_compare(spans[pointers[index]][1], lo) <= 0:
                pointers[index] += 1
            if pointers[index] < len(spans) and point_compare(spans[pointers[index]][0], lo) <= 0:
                covering.append(index)
        cells.append((lo, hi, tuple(covering)))
    return cells


_OPERATIONS: dict = {
    "union": lambda inside: bool(inside),
    "intersect": lambda inside: inside == (0, 1),
    "subtract": lambda inside: inside == (0,),
}


def iset_algebra(a: IntervalSet, b: IntervalSet, op: str) -> IntervalSet:
    """Union, intersection or difference a minus b."""
    try:
        keep: Callable = _OPERATIONS[op]
    except KeyError:
        raise ValueError(f"unknown set operation {op!r}; expected one of {sorted(_OPERATIONS)}") from None
    cells = [(lo, hi) for lo, hi, inside in arrangement([a, b]) if keep(inside)]
    return IntervalSet._trusted(_normalize(cells))


def iset_subset(a: IntervalSet, b: IntervalSet) -> bool:
    return not iset_algebra(a, b, "subtract")


def iset_measure(a: IntervalSet) -> QSqrt2:
    """Exact Lebesgue measure; endpoints must be finite and lie in Q(sqrt2)."""
    total = QSqrt2(0)
    for lo, hi in a.intervals:
        if is_infinite(lo) or is_infinite(hi):
            raise ValueError("an unbounded interval set has infinite measure")
        total = total + require_qsqrt2(hi) - require_qsqrt2(lo)
    return total


def iset_measure_enclosure(a: IntervalSet, width=Fraction(1, 1 << 30)) -> Tuple[Fraction, Fraction]:
    """Rational (lo, hi) around the exact measure with hi - lo <= width."""
    width = as_fraction(width)
    if not a.intervals:
        return Fraction(0), Fraction(0)
    share = width / (2 * len(a.intervals))
    low = high = Fraction(0)
    for lo, hi in a.intervals:
        if is_infinite(lo) or is_infinite(hi):
            raise ValueError("an unbounded interval set has infinite measure")
        lo_low, lo_high = alg_approx(lo, share)
        hi_low, hi_high = alg_approx(hi, share)
        low += hi_low - lo_high
        high += hi_high - lo_low
    return low, high


def _push_span(lo: ProjPoint, hi: ProjPoint, m: Mat2) -> Span:
    pole = m.pole
    if pole is not None:
        pole_point = RealAlgebraic.from_qsqrt2(pole)
        if point_compare(lo, pole_point) <= 0 <= point_compare(hi, pole_point):
            raise PoleInIntervalError(f"pole {pole} of {m!r} lies in the closure of the set", pole)
    image_lo = act(lo, m) if not is_infinite(lo) or m.c else lo
    image_hi = act(hi, m) if not is_infinite(hi) or m.c else hi
    return image_lo, image_hi


def pushforward(j: IntervalSet, g: Union[Mat2, PiecewiseMap]) -> IntervalSet:
    """The image set J.g; order is preserved because every piece is increasing."""
    if isinstance(g, Mat2):
        return IntervalSet._trusted(_normalize(_push_span(lo, hi, g) for lo, hi in j.intervals))
    images = []
    for index, piece in enumerate(g.pieces):
        span = IntervalSet._trusted((g.piece_span(index),))
        for lo, hi in iset_algebra(j, span, "intersect").intervals:
            images.append(_push_span(lo, hi, piece))
    return IntervalSet._trusted(_normalize(images))


def parse_interval_set(text: str) -> IntervalSet:
    """Parse "lo,hi;lo,hi" into a union of intervals."""
    spans = []
    for part in text.split(";"):
        bounds = part.split(",")
        if len(bounds) != 2:
            raise ValueError(f"expected 'lo,hi' in {part!r}")
        spans.append((bounds[0], bounds[1]))
    return IntervalSet(spans)
