"""
Projective Matrices

Determinant-one 2x2 matrices over Q(sqrt2) taken up to sign (PSL2), their
Moebius action on the extended real line, a sup-metric to the identity,
derivative bounds on intervals and fixed-point classification.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple, Union

from modules.exact.algebraic import (
    INFINITY,
    ProjPoint,
    RealAlgebraic,
    alg_apply_moebius,
    is_infinite,
    qsqrt2_poly_norm,
    quadratic_over_k,
)
from modules.exact.qsqrt2 import QSqrt2, fraction_sqrt_bounds, parse_qsqrt2
from modules.projective.interval import Interval
from modules.shared.errors import ClassificationError, DeterminantError, PoleInIntervalError

Entry = Union[QSqrt2, int, Fraction, str]


def _entry(value: Entry) -> QSqrt2:
    if isinstance(value, str):
        return parse_qsqrt2(value)
    return QSqrt2.coerce(value)


class Mat2:
    """An element of PSL2 over Q(sqrt2), stored as its canonical sign representative.

    The first nonzero entry in the order a, b, c, d is positive, so two
    matrices are equal in PSL2 exactly when their entries agree.
    """

    __slots__ = ("a", "b", "c", "d", "_hash")

    def __init__(self, a: Entry, b: Entry, c: Entry, d: Entry) -> None:
        a, b, c, d = _entry(a), _entry(b), _entry(c), _entry(d)
        if a * d - b * c != 1:
            raise DeterminantError(f"determinant of ({a} {b}; {c} {d}) is not 1")
        first = next(e for e in (a, b, c, d) if e)
        if first.sign() < 0:
            a, b, c, d = -a, -b, -c, -d
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "_hash", hash((a, b, c, d)))

    def __setattr__(self, name, value):
        raise AttributeError("Mat2 is immutable")

    def __reduce__(self):
        return (Mat2, (self.a, self.b, self.c, self.d))

    @classmethod
    def from_entries(cls, a: Entry, b: Entry, c: Entry, d: Entry) -> "Mat2":
        """Normalize by the square root of a positive determinant."""
        a, b, c, d = _entry(a), _entry(b), _entry(c), _entry(d)
        det = a * d - b * c
        if det.sign() <= 0:
            raise DeterminantError(f"determinant {det} is not positive")
        root = det.sqrt()
        if root is None:
            raise DeterminantError(f"determinant {det} has no square root in Q(sqrt2)")
        return cls(a / root, b / root, c / root, d / root)

    @property
    def entries(self) -> Tuple[QSqrt2, QSqrt2, QSqrt2, QSqrt2]:
        return (self.a, self.b, self.c, self.d)

    @property
    def trace(self) -> QSqrt2:
        return self.a + self.d

    @property
    def pole(self) -> Optional[QSqrt2]:
        """The point -d/c sent to infinity, or None when c = 0."""
        if not self.c:
            return None
        return -self.d / self.c

    def is_identity(self) -> bool:
        return self == IDENTITY

    def fixes_infinity(self) -> bool:
        return not self.c

    def in_ring(self, ring: str) -> bool:
        return all(e.in_ring(ring) for e in self.entries)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Mat2):
            return NotImplemented
        return self._hash == other._hash and self.entries == other.entries

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Mat2({self.a} {self.b}; {self.c} {self.d})"

    def to_json(self) -> dict:
        return {"a": self.a.to_json(), "b": self.b.to_json(),
                "c": self.c.to_json(), "d": self.d.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "Mat2":
        return cls(*(QSqrt2.from_json(data[k]) for k in "abcd"))


def _product(p: Mat2, q: Mat2) -> Mat2:
    """Plain matrix product p*q; as Moebius maps this is q first, then p."""
    return Mat2(p.a * q.a + p.b * q.c, p.a * q.b + p.b * q.d,
                p.c * q.a + p.d * q.c, p.c * q.b + p.d * q.d)


IDENTITY = Mat2(1, 0, 0, 1)


def compose(g: Mat2, h: Mat2) -> Mat2:
    """The matrix of "apply g, then h": act(act(x, g), h) == act(x, compose(g, h))."""
    if g is IDENTITY:
        return h
    if h is IDENTITY:
        return g
    return _product(h, g)


def inverse(g: Mat2) -> Mat2:
    return Mat2(g.d, -g.b, -g.c, g.a)


def mat_group_ops(g: Mat2, h: Optional[Mat2], op: str) -> Mat2:
    """Dispatch "compose" (g then h) or "invert-first" (g inverse)."""
    if op == "compose":
        return compose(g, h)
    if op == "invert-first":
        return inverse(g)
    raise ValueError(f"unknown group operation {op!r}")


def translation(shift: Entry) -> Mat2:
    return Mat2(1, shift, 0, 1)


def diagonal(scale: Entry) -> Mat2:
    """t -> scale**2 * t, given by diag(scale, 1/scale)."""
    scale = _entry(scale)
    return Mat2(scale, 0, 0, scale.inverse())


GAMMA = diagonal(QSqrt2(0, 1))
S_MATRIX = Mat2(0, -1, 1, 0)
T_MATRIX = translation(1)


def act_value(value: QSqrt2, g: Mat2):
    """(a*x + b)/(c*x + d) for a finite x in Q(sqrt2); INFINITY at the pole."""
    den = g.c * value + g.d
    if not den:
        return INFINITY
    return (g.a * value + g.b) / den


def act(x: ProjPoint, g: Mat2) -> ProjPoint:
    """Right action x.g with infinity handled projectively."""
    if is_infinite(x):
        if not g.c:
            return INFINITY
        return RealAlgebraic.from_qsqrt2(g.a / g.c)
    return alg_apply_moebius(x, g)


def dist_to_identity(g: Mat2) -> QSqrt2:
    """Smaller of the two sign representatives' entrywise sup-distance to the identity."""
    best = None
    for sign in (1, -1):
        a, b, c, d = (e * sign for e in g.entries)
        distance = max(abs(a - 1), abs(b), abs(c), abs(d - 1))
        if best is None or distance < best:
            best = distance
    return best


def in_ball(g: Mat2, delta) -> bool:
    return dist_to_identity(g) < QSqrt2.coerce(delta)


def derivative_bounds(g: Mat2, interval: Interval) -> Tuple[QSqrt2, QSqrt2]:
    """Exact inf and sup of g'(x) = 1/(c*x + d)**2 over the closed interval."""
    lo, hi = interval
    pole = g.pole
    if pole is not None and lo <= pole <= hi:
        raise PoleInIntervalError(f"pole {pole} of {g!r} lies in {interval}", pole)
    values = [(g.c * x + g.d) ** -2 for x in (lo, hi)]
    return min(values), max(values)


@dataclass(frozen=True)
class Classification:
    kind: str
    trace: QSqrt2
    fixed_points: Tuple[ProjPoint, ...]

    @property
    def is_hyperbolic(self) -> bool:
        return self.kind == "hyperbolic"

    def finite_fixed_points(self) -> Tuple[RealAlgebraic, ...]:
        return tuple(p for p in self.fixed_points if not is_infinite(p))


def _div_intervals(num: Tuple[Fraction, Fraction], den: Tuple[Fraction, Fraction]):
    quotients = [n / d for n in num for d in den]
    return min(quotients), max(quotients)


def _fixed_point_enclosure(g: Mat2, plus: bool):
    """Enclosures of ((a - d) +- sqrt(trace**2 - 4)) / (2c) at precision 2**-bits."""
    disc = g.trace * g.trace - 4
    diff = g.a - g.d
    twice_c = 2 * g.c

    def enclose(bits: int):
        width = Fraction(1, 1 << bits)
        disc_lo, disc_hi = disc.bounds(width)
        while disc_lo <= 0:
            width /= 2
            disc_lo, disc_hi = disc.bounds(width)
        root = (fraction_sqrt_bounds(disc_lo, bits + 8)[0], fraction_sqrt_bounds(disc_hi, bits + 8)[1])
        diff_lo, diff_hi = diff.bounds(width)
        if plus:
            num = (diff_lo + root[0], diff_hi + root[1])
        else:
            num = (diff_lo - root[1], diff_hi - root[0])
        den_width = width
        den = twice_c.bounds(den_width)
        while den[0] <= 0 <= den[1]:
            den_width /= 2
            den = twice_c.bounds(den_width)
        return _div_intervals(num, den)

    return enclose


def _finite_fixed_points(g: Mat2) -> Tuple[RealAlgebraic, RealAlgebraic]:
    disc = g.trace * g.trace - 4
    root = disc.sqrt()
    if root is not None:
        points = [RealAlgebraic.from_qsqrt2((g.a - g.d + sign * root) / (2 * g.c)) for sign in (1, -1)]
    else:
        # roots of c t^2 + (d - a) t - b, isolated through its rational norm; the
        # quadratic has no root in Q(sqrt2), so the norm is already irreducible
        over_k = quadratic_over_k([-g.b, g.d - g.a, g.c])
        poly = qsqrt2_poly_norm(over_k)
        points = [RealAlgebraic.from_enclosures(poly, _fixed_point_enclosure(g, plus),
                                                irreducible=True, over_k=over_k)
                  for plus in (True, False)]
    return tuple(sorted(points))


def classify(g: Mat2) -> Classification:
    """Elliptic, parabolic or hyperbolic by |trace| against 2, with real fixed points."""
    if g.is_identity():
        raise ClassificationError("the identity has no classification")
    trace = g.trace
    squared = trace * trace
    if squared < 4:
        return Classification("elliptic", trace, ())
    if squared == 4:
        if not g.c:
            return Classification("parabolic", trace, (INFINITY,))
        point = RealAlgebraic.from_qsqrt2((g.a - g.d) / (2 * g.c))
        return Classification("parabolic", trace, (point,))
    if not g.c:
        point = RealAlgebraic.from_qsqrt2(g.b / (g.d - g.a))
        return Classification("hyperbolic", trace, (point, INFINITY))
    return Classification("hyperbolic", trace, _finite_fixed_points(g))
