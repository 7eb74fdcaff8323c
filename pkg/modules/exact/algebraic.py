"""Real algebraic numbers of small degree.

A ``RealAlgebraic`` is a root of a polynomial with rational coefficients,
pinned down by an isolating interval (lo, hi) with rational endpoints. The
stored polynomial is always the monic minimal polynomial of the root, so the
pair (polynomial, index of the root among all real roots) is a canonical,
hashable identity for the number. Refinement is plain bisection on Fractions;
sympy is only used for factorisation and Sturm root counting.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Callable, Optional, Protocol, Sequence, Tuple, Union

import mpmath
import sympy

from modules.exact.qsqrt2 import QSqrt2, as_fraction, format_fraction, fraction_sqrt
from modules.shared.errors import DegreeBoundError, IsolationError

MAX_DEGREE = 4
ISOLATOR_WIDTH = Fraction(1, 1 << 40)

_T = sympy.Symbol("t")

Coefficients = Tuple[Fraction, ...]


class MoebiusLike(Protocol):
    a: QSqrt2
    b: QSqrt2
    c: QSqrt2
    d: QSqrt2


class _Infinity:
    """Symbolic infinite endpoint. ``INFINITY`` doubles as the projective point."""

    __slots__ = ("direction",)

    def __init__(self, direction: int) -> None:
        self.direction = direction

    def __repr__(self) -> str:
        return "INFINITY" if self.direction > 0 else "NEG_INFINITY"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, _Infinity) and other.direction == self.direction

    def __hash__(self) -> int:
        return hash(("inf", self.direction))

    def __reduce__(self):
        return repr(self)


INFINITY = _Infinity(+1)
NEG_INFINITY = _Infinity(-1)


def is_infinite(point) -> bool:
    return isinstance(point, _Infinity)


# -- polynomial helpers ------------------------------------------------------


def _strip(coeffs: Sequence[Fraction]) -> Coefficients:
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def _monic(coeffs: Sequence[Fraction]) -> Coefficients:
    lead = coeffs[-1]
    return tuple(c / lead for c in coeffs)


def poly_eval(coeffs: Sequence[Fraction], x: Fraction) -> Fraction:
    """Horner evaluation of a low-to-high coefficient list at a rational."""
    value = Fraction(0)
    for c in reversed(coeffs):
        value = value * x + c
    return value


def _sign(value: Fraction) -> int:
    return (value > 0) - (value < 0)


def _to_sympy(coeffs: Sequence[Fraction]) -> sympy.Poly:
    high_to_low = [sympy.Rational(c.numerator, c.denominator) for c in reversed(coeffs)]
    return sympy.Poly(high_to_low, _T, domain=sympy.QQ)


def _from_sympy(poly: sympy.Poly) -> Coefficients:
    coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(poly.all_coeffs())]
    return _monic(_strip(coeffs))


def _sympy_rational(value: Fraction) -> sympy.Rational:
    return sympy.Rational(value.numerator, value.denominator)


def _count_closed(poly: sympy.Poly, lo: Fraction, hi: Fraction) -> int:
    return int(poly.count_roots(_sympy_rational(lo), _sympy_rational(hi)))


def _count_open(poly: sympy.Poly, lo: Fraction, hi: Fraction) -> int:
    count = _count_closed(poly, lo, hi)
    coeffs = _from_sympy(poly)
    for endpoint in (lo, hi):
        if poly_eval(coeffs, endpoint) == 0:
            count -= 1
    return count


# polynomials over Q(sqrt2), low-to-high lists of QSqrt2


def _qpoly_mul(p: Sequence[QSqrt2], q: Sequence[QSqrt2]) -> list:
    out = [QSqrt2(0)] * (len(p) + len(q) - 1)
    for i, pi in enumerate(p):
        if not pi:
            continue
        for j, qj in enumerate(q):
            out[i + j] = out[i + j] + pi * qj
    return out


def _qpoly_pow(p: Sequence[QSqrt2], exponent: int) -> list:
    result = [QSqrt2(1)]
    for _ in range(exponent):
        result = _qpoly_mul(result, p)
    return result


def moebius_transform_qpoly(coeffs: Sequence, a: QSqrt2, b: QSqrt2, c: QSqrt2, d: QSqrt2) -> list:
    """Polynomial over Q(sqrt2) vanishing at (a*x + b)/(c*x + d) for every root x.

    Substitutes x = (d*y - b)/(a - c*y) and clears the denominator; this is
    the resultant of the defining polynomial with (c*x + d)*y - (a*x + b).
    """
    n = len(coeffs) - 1
    numerator = [-b, d]
    denominator = [a, -c]
    total = [QSqrt2(0)]
    for k, pk in enumerate(coeffs):
        pk = QSqrt2.coerce(pk)
        if not pk:
            continue
        term = _qpoly_mul(_qpoly_pow(numerator, k), _qpoly_pow(denominator, n - k))
        term = [pk * t for t in term]
        width = max(len(total), len(term))
        total = [(total[i] if i < len(total) else QSqrt2(0)) +
                 (term[i] if i < len(term) else QSqrt2(0)) for i in range(width)]
    while len(total) > 1 and not total[-1]:
        total.pop()
    return total


def moebius_transform_poly(coeffs: Sequence[Fraction], a: QSqrt2, b: QSqrt2,
                           c: QSqrt2, d: QSqrt2) -> Coefficients:
    """Rational polynomial vanishing at (a*x + b)/(c*x + d) for every root x.

    When the transformed polynomial has coefficients in Q(sqrt2) it is
    multiplied by its Galois conjugate.
    """
    return qsqrt2_poly_norm(moebius_transform_qpoly(coeffs, a, b, c, d))


def quadratic_over_k(coeffs: Sequence) -> Optional[Tuple[QSqrt2, QSqrt2, QSqrt2]]:
    """Monic form of c0 + c1*t + c2*t**2 over Q(sqrt2), or None when it has a root in Q(sqrt2)."""
    if len(coeffs) != 3 or not coeffs[2]:
        return None
    lead = QSqrt2.coerce(coeffs[2])
    c0, c1 = QSqrt2.coerce(coeffs[0]) / lead, QSqrt2.coerce(coeffs[1]) / lead
    if (c1 * c1 - 4 * c0).sqrt() is not None:
        return None
    return (c0, c1, QSqrt2(1))


def qsqrt2_poly_norm(coeffs: Sequence[QSqrt2]) -> Coefficients:
    """Monic rational polynomial with the same real roots as a Q(sqrt2) polynomial.

    Coefficients run from low to high degree. When some coefficient is
    irrational the polynomial is multiplied by its Galois conjugate.
    """
    total = list(coeffs)
    if any(t.s != 0 for t in total):
        total = _qpoly_mul(total, [t.conjugate() for t in total])
    rational = _strip([t.r for t in total])
    if len(rational) < 2:
        raise IsolationError("polynomial over Q(sqrt2) is constant")
    return _monic(rational)


# -- the number type ---------------------------------------------------------


class RealAlgebraic:
    """A real root of a rational polynomial with an isolating interval.

    The public constructor accepts any square-free polynomial with exactly one
    root in the open interval (lo, hi) and stores that root's minimal
    polynomial. Instances never change; refinement returns new instances.
    """

    __slots__ = ("_poly", "_lo", "_hi", "_index", "_lo_sign", "_hash", "_over_k")

    def __init__(self, poly: Sequence[Union[int, str, Fraction]], lo, hi) -> None:
        coeffs = _strip([as_fraction(c) for c in poly])
        lo, hi = as_fraction(lo), as_fraction(hi)
        if lo >= hi:
            raise IsolationError(f"empty isolating interval ({lo}, {hi})")
        if len(coeffs) < 2:
            raise IsolationError("a constant polynomial has no isolated root")
        sp = _to_sympy(coeffs)
        if sp.gcd(sp.diff(_T)).degree() > 0:
            raise IsolationError("polynomial is not square-free")
        if _count_open(sp, lo, hi) != 1:
            raise IsolationError(f"interval ({lo}, {hi}) does not isolate exactly one root")
        minimal = None
        for factor, _ in sp.factor_list()[1]:
            if factor.degree() >= 1 and _count_open(factor, lo, hi) == 1:
                minimal = _from_sympy(factor)
                break
        if minimal is None:
            raise IsolationError("no irreducible factor vanishes in the interval")
        if len(minimal) - 1 > MAX_DEGREE:
            raise DegreeBoundError(f"degree {len(minimal) - 1} exceeds {MAX_DEGREE}")
        self._init(minimal, lo, hi, None)

    def _init(self, poly: Coefficients, lo: Fraction, hi: Fraction, index: Optional[int],
              over_k: Optional[Tuple[QSqrt2, ...]] = None) -> None:
        self._poly = poly
        self._lo = lo
        self._hi = hi
        self._index = index
        self._lo_sign = _sign(poly_eval(poly, lo)) if len(poly) > 2 else 0
        self._hash = None
        # monic quadratic over Q(sqrt2) with this root, irreducible there; not part of the identity
        self._over_k = over_k

    @classmethod
    def _trusted(cls, poly: Coefficients, lo: Fraction, hi: Fraction,
                 index: Optional[int] = None, over_k: Optional[Tuple[QSqrt2, ...]] = None) -> "RealAlgebraic":
        obj = cls.__new__(cls)
        obj._init(poly, lo, hi, index, over_k)
        return obj

    # -- constructors ----------------------------------------------------------

    @classmethod
    def from_rational(cls, value) -> "RealAlgebraic":
        q = as_fraction(value)
        return cls._trusted((-q, Fraction(1)), q - 1, q + 1, 0)

    @classmethod
    def from_qsqrt2(cls, value: QSqrt2) -> "RealAlgebraic":
        if value.s == 0:
            return cls.from_rational(value.r)
        lo, hi = value.bounds(min(ISOLATOR_WIDTH, abs(value.s)))
        poly = (value.norm(), -2 * value.r, Fraction(1))
        return cls._trusted(poly, lo, hi, 1 if value.s > 0 else 0)

    @classmethod
    def from_enclosures(cls, poly: Sequence[Fraction],
                        enclose: Callable[[int], Tuple[Fraction, Fraction]],
                        start_bits: int = 40, rounds: int = 8, *, irreducible: bool = False,
                        over_k: Optional[Tuple[QSqrt2, ...]] = None) -> "RealAlgebraic":
        """Isolate the root that ``enclose(bits)`` brackets to width about 2**-bits.

        The target must be a root of ``poly`` and must not lie in Q; the
        enclosures are tightened until a single root of a single irreducible
        factor remains inside. With ``irreducible`` set the caller vouches
        that ``poly`` is irreducible over Q and no factoring happens; that
        holds for the norm of a quadratic ``over_k`` with no root in Q(sqrt2).
        """
        if irreducible:
            factors = [_to_sympy(_monic(_strip(poly)))]
        else:
            factors = [f for f, _ in _to_sympy(_strip(poly)).factor_list()[1] if f.degree() >= 1]
        bits = start_bits
        for _ in range(rounds):
            lo, hi = enclose(bits)
            hits = [(f, _count_closed(f, lo, hi)) for f in factors]
            total = sum(count for _, count in hits)
            if total == 1:
                factor = next(f for f, count in hits if count == 1)
                minimal = _from_sympy(factor)
                if len(minimal) - 1 > MAX_DEGREE:
                    raise DegreeBoundError(f"degree {len(minimal) - 1} exceeds {MAX_DEGREE}")
                if len(minimal) == 2:
                    return cls.from_rational(-minimal[0])
                return cls._trusted(minimal, lo, hi, over_k=over_k).refined(ISOLATOR_WIDTH)
            if total == 0:
                raise IsolationError("enclosure contains no root of the polynomial")
            bits *= 2
        raise IsolationError("could not separate the root from its neighbours")

    # -- inspection ------------------------------------------------------------

    @property
    def poly(self) -> Coefficients:
        return self._poly

    @property
    def lo(self) -> Fraction:
        return self._lo

    @property
    def hi(self) -> Fraction:
        return self._hi

    @property
    def over_k(self) -> Optional[Tuple[QSqrt2, ...]]:
        return self._over_k

    @property
    def degree(self) -> int:
        return len(self._poly) - 1

    @property
    def rational(self) -> Optional[Fraction]:
        """The exact value when the number is rational, else None."""
        if len(self._poly) == 2:
            return -self._poly[0]
        return None

    @property
    def index(self) -> int:
        """Position of this root among the real roots of its minimal polynomial."""
        if self._index is None:
            below = _to_sympy(self._poly).count_roots(None, _sympy_rational(self._lo))
            self._index = int(below)
        return self._index

    @property
    def key(self) -> Tuple[Coefficients, int]:
        return (self._poly, self.index)

    def as_qsqrt2(self) -> Optional[QSqrt2]:
        """The value as r + s*sqrt2 when it lies in Q(sqrt2), else None."""
        if len(self._poly) == 2:
            return QSqrt2(-self._poly[0])
        if len(self._poly) != 3:
            return None
        q, p, _ = self._poly
        half_disc = (p * p - 4 * q) / 2
        k = fraction_sqrt(half_disc)
        if k is None:
            return None
        s = k / 2 if self.index == 1 else -k / 2
        return QSqrt2(-p / 2, s)

    def __repr__(self) -> str:
        rational = self.rational
        if rational is not None:
            return f"RealAlgebraic({rational})"
        return f"RealAlgebraic(poly={[str(c) for c in self._poly]}, lo={self._lo}, hi={self._hi})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RealAlgebraic):
            return NotImplemented
        if self._poly != other._poly:
            return False
        return len(self._poly) == 2 or self.index == other.index

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.key)
        return self._hash

    def __lt__(self, other: "RealAlgebraic") -> bool:
        return alg_compare(self, other) < 0

    def __le__(self, other: "RealAlgebraic") -> bool:
        return alg_compare(self, other) <= 0

    def __gt__(self, other: "RealAlgebraic") -> bool:
        return alg_compare(self, other) > 0

    def __ge__(self, other: "RealAlgebraic") -> bool:
        return alg_compare(self, other) >= 0

    # -- refinement --------------------------------------------------------------

    def bisected(self) -> "RealAlgebraic":
        mid = (self._lo + self._hi) / 2
        rational = self.rational
        if rational is not None:
            half = (self._hi - self._lo) / 4
            return RealAlgebraic._trusted(self._poly, rational - half, rational + half, 0)
        if _sign(poly_eval(self._poly, mid)) == self._lo_sign:
            return RealAlgebraic._trusted(self._poly, mid, self._hi, self._index, self._over_k)
        return RealAlgebraic._trusted(self._poly, self._lo, mid, self._index, self._over_k)

    def refined(self, width: Fraction) -> "RealAlgebraic":
        """A copy whose isolator is no wider than ``width``."""
        width = as_fraction(width)
        if width <= 0:
            raise ValueError("width must be positive")
        rational = self.rational
        if rational is not None:
            if self._hi - self._lo <= width:
                return self
            return RealAlgebraic._trusted(self._poly, rational - width / 2, rational + width / 2, 0)
        current = self
        while current._hi - current._lo > width:
            current = current.bisected()
        return current

    def to_mpf(self, dps: int = 50):
        bits = int(dps * 3.33) + 16
        tight = self.refined(Fraction(1, 1 << bits))
        mid = (tight._lo + tight._hi) / 2
        with mpmath.workdps(dps):
            return mpmath.mpf(mid.numerator) / mid.denominator

    def __float__(self) -> float:
        rational = self.rational
        if rational is not None:
            return float(rational)
        tight = self.refined(Fraction(1, 1 << 60))
        return float((tight._lo + tight._hi) / 2)

    def to_json(self) -> dict:
        return {
            "poly": [format_fraction(c) for c in self._poly],
            "lo": format_fraction(self._lo),
            "hi": format_fraction(self._hi),
        }

    @classmethod
    def from_json(cls, data: dict) -> "RealAlgebraic":
        return cls([as_fraction(c) for c in data["poly"]], data["lo"], data["hi"])


ProjPoint = Union[RealAlgebraic, _Infinity]


def _compare_to_rational(x: RealAlgebraic, q: Fraction) -> int:
    """Sign of x - q for an irrational x."""
    if q <= x.lo:
        return 1
    if q >= x.hi:
        return -1
    # x is irrational, so q is not a root; the sign at q tells the side
    if _sign(poly_eval(x.poly, q)) == x._lo_sign:
        return 1
    return -1


def alg_compare(x: RealAlgebraic, y: RealAlgebraic) -> int:
    """Exact three-way comparison: -1, 0 or +1."""
    if x is y:
        return 0
    qx, qy = x.rational, y.rational
    if qx is not None and qy is not None:
        return (qx > qy) - (qx < qy)
    if qx is not None:
        return -_compare_to_rational(y, qx)
    if qy is not None:
        return _compare_to_rational(x, qy)
    if x.poly == y.poly:
        # gcd of the two polynomials is the polynomial itself: equal iff same root
        ix, iy = x.index, y.index
        return (ix > iy) - (ix < iy)
    # distinct monic irreducible polynomials have gcd 1 and no common root,
    # so bisection terminates
    while True:
        if x.hi <= y.lo:
            return -1
        if y.hi <= x.lo:
            return 1
        if x.hi - x.lo >= y.hi - y.lo:
            x = x.bisected()
        else:
            y = y.bisected()


def point_compare(x, y) -> int:
    """Compare points of the extended line, with symbolic infinities."""
    if is_infinite(x) or is_infinite(y):
        dx = x.direction if is_infinite(x) else 0
        dy = y.direction if is_infinite(y) else 0
        return (dx > dy) - (dx < dy)
    return alg_compare(x, y)


def _moebius_value(m: MoebiusLike, value: QSqrt2):
    den = m.c * value + m.d
    if not den:
        return INFINITY
    return (m.a * value + m.b) / den


@lru_cache(maxsize=200_000)
def _apply_irrational(x: RealAlgebraic, m: MoebiusLike) -> RealAlgebraic:
    over_k = None
    if x.over_k is not None:
        # a Moebius map over Q(sqrt2) keeps the quadratic irreducible there
        over_k = quadratic_over_k(moebius_transform_qpoly(x.over_k, m.a, m.b, m.c, m.d))
    if over_k is not None:
        poly = qsqrt2_poly_norm(over_k)
        irreducible = True
    else:
        poly = moebius_transform_poly(x.poly, m.a, m.b, m.c, m.d)
        irreducible = all(e.is_rational() for e in (m.a, m.b, m.c, m.d))
    pole = None if not m.c else -m.d / m.c

    def enclose(bits: int) -> Tuple[Fraction, Fraction]:
        width = Fraction(1, 1 << bits)
        tight = x.refined(width)
        while pole is not None and QSqrt2(tight.lo) <= pole <= QSqrt2(tight.hi):
            tight = tight.bisected()
        # increasing on the isolator because the determinant is positive
        lo_image = _moebius_value(m, QSqrt2(tight.lo))
        hi_image = _moebius_value(m, QSqrt2(tight.hi))
        return lo_image.bounds(width)[0], hi_image.bounds(width)[1]

    return RealAlgebraic.from_enclosures(poly, enclose, irreducible=irreducible, over_k=over_k)


def alg_apply_moebius(x: RealAlgebraic, m: MoebiusLike) -> ProjPoint:
    """(a*x + b)/(c*x + d) as a RealAlgebraic, or INFINITY at the pole."""
    exact = x.as_qsqrt2()
    if exact is not None:
        image = _moebius_value(m, exact)
        if is_infinite(image):
            return image
        return RealAlgebraic.from_qsqrt2(image)
    # the pole -d/c lies in Q(sqrt2), so an irrational x outside it is never the pole
    return _apply_irrational(x, m)


def alg_approx(x: RealAlgebraic, width) -> Tuple[Fraction, Fraction]:
    """Rational (lo, hi) containing x with hi - lo <= width, by bisection."""
    width = as_fraction(width)
    if width <= 0:
        raise ValueError("width must be positive")
    tight = x.refined(width)
    return tight.lo, tight.hi


def point_to_json(point: ProjPoint):
    if is_infinite(point):
        return "inf" if point.direction > 0 else "-inf"
    return point.to_json()


def point_from_json(data) -> ProjPoint:
    if data == "inf":
        return INFINITY
    if data == "-inf":
        return NEG_INFINITY
    return RealAlgebraic.from_json(data)
