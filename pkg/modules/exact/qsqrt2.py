"""Exact arithmetic in Q and in the quadratic field Q(sqrt2).

Rationals are ``fractions.Fraction`` values; ``QSqrt2`` holds r + s*sqrt2
with rational r and s. Signs and comparisons are decided by integer
comparisons only, never by floating point.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import total_ordering
from typing import Tuple, Union

import mpmath

from modules.shared.errors import NotInFieldError, ZeroDivisionInFieldError

Rational = Fraction
RationalLike = Union[int, str, Fraction]

RINGS = ("integers", "zsqrt2-with-halves")


def as_fraction(value: RationalLike) -> Fraction:
    """Convert an int, a Fraction or a "p/q" string to a reduced Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("empty rational literal")
        try:
            return Fraction(text)
        except ValueError:
            raise ValueError(f"invalid rational literal: {value!r}") from None
    raise TypeError(f"cannot interpret {value!r} as a rational")


def format_fraction(value: Fraction) -> str:
    """Serialize a rational as the string "p/q" (q > 0, reduced)."""
    return f"{value.numerator}/{value.denominator}"


def fraction_sqrt(value: Fraction):
    """Exact square root of a non-negative rational, or None when irrational."""
    if value < 0:
        return None
    num_root = math.isqrt(value.numerator)
    den_root = math.isqrt(value.denominator)
    if num_root * num_root == value.numerator and den_root * den_root == value.denominator:
        return Fraction(num_root, den_root)
    return None


def fraction_sqrt_bounds(value: Fraction, bits: int) -> Tuple[Fraction, Fraction]:
    """Rational bounds lo <= sqrt(value) <= hi with hi - lo <= 2**-bits."""
    if value < 0:
        raise ValueError("square root of a negative rational")
    scale = 1 << bits
    # floor(sqrt(value) * scale) computed with integers only
    scaled = value * scale * scale
    root = math.isqrt(scaled.numerator // scaled.denominator)
    return Fraction(root, scale), Fraction(root + 1, scale)


def _sign(value: Fraction) -> int:
    return (value > 0) - (value < 0)


def _is_dyadic(value: Fraction) -> bool:
    den = value.denominator
    return den & (den - 1) == 0


@total_ordering
class QSqrt2:
    """The real number r + s*sqrt2 with rational r, s."""

    __slots__ = ("_r", "_s", "_hash")

    def __init__(self, r: RationalLike = 0, s: RationalLike = 0) -> None:
        self._r: Fraction = as_fraction(r)
        self._s: Fraction = as_fraction(s)
        self._hash = None

    @property
    def r(self) -> Fraction:
        return self._r

    @property
    def s(self) -> Fraction:
        return self._s

    @property
    def key(self) -> Tuple[Fraction, Fraction]:
        return (self._r, self._s)

    def __repr__(self) -> str:
        return f"QSqrt2({format_fraction(self._r)!r}, {format_fraction(self._s)!r})"

    def __str__(self) -> str:
        if self._s == 0:
            return str(self._r)
        if self._r == 0:
            return f"{self._s}√2"
        sign = "+" if self._s > 0 else "-"
        return f"{self._r}{sign}{abs(self._s)}√2"

    @classmethod
    def coerce(cls, value: Union["QSqrt2", RationalLike]) -> "QSqrt2":
        if isinstance(value, QSqrt2):
            return value
        return cls(as_fraction(value), 0)

    # -- ordering -----------------------------------------------------------

    def sign(self) -> int:
        """Sign of r + s*sqrt2, decided from sign(r), sign(s) and r^2 vs 2s^2."""
        sr, ss = _sign(self._r), _sign(self._s)
        if ss == 0:
            return sr
        if sr == 0 or sr == ss:
            return ss
        # opposite signs: the larger magnitude wins; equality is impossible
        if self._r * self._r > 2 * self._s * self._s:
            return sr
        return ss

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self._s == 0 and self._r == other
        if isinstance(other, QSqrt2):
            return self._r == other._r and self._s == other._s
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._r, self._s))
        return self._hash

    def __lt__(self, other: Union["QSqrt2", RationalLike]) -> bool:
        return (self - QSqrt2.coerce(other)).sign() < 0

    def __bool__(self) -> bool:
        return bool(self._r) or bool(self._s)

    # -- field operations ---------------------------------------------------

    def __add__(self, other):
        try:
            other = QSqrt2.coerce(other)
        except TypeError:
            return NotImplemented
        return QSqrt2(self._r + other._r, self._s + other._s)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            other = QSqrt2.coerce(other)
        except TypeError:
            return NotImplemented
        return QSqrt2(self._r - other._r, self._s - other._s)

    def __rsub__(self, other):
        return QSqrt2.coerce(other) - self

    def __neg__(self) -> "QSqrt2":
        return QSqrt2(-self._r, -self._s)

    def __abs__(self) -> "QSqrt2":
        return -self if self.sign() < 0 else self

    def __mul__(self, other):
        try:
            other = QSqrt2.coerce(other)
        except TypeError:
            return NotImplemented
        r = self._r * other._r + 2 * self._s * other._s
        s = self._r * other._s + self._s * other._r
        return QSqrt2(r, s)

    __rmul__ = __mul__

    def conjugate(self) -> "QSqrt2":
        """Galois conjugate r - s*sqrt2."""
        return QSqrt2(self._r, -self._s)

    def norm(self) -> Fraction:
        """Field norm r^2 - 2s^2."""
        return self._r * self._r - 2 * self._s * self._s

    def inverse(self) -> "QSqrt2":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionInFieldError("division by zero in Q(sqrt2)")
        return QSqrt2(self._r / n, -self._s / n)

    def __truediv__(self, other):
        try:
            other = QSqrt2.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return QSqrt2.coerce(other) * self.inverse()

    def __pow__(self, exponent: int) -> "QSqrt2":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = QSqrt2(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def sqrt(self):
        """Exact square root in Q(sqrt2) when one exists, else None."""
        if not self:
            return QSqrt2(0)
        if self.sign() < 0:
            return None
        if self._s == 0:
            root = fraction_sqrt(self._r)
            if root is not None:
                return QSqrt2(root)
            half = fraction_sqrt(self._r / 2)
            return QSqrt2(0, half) if half is not None else None
        n = fraction_sqrt(self.norm())
        if n is None:
            return None
        for p_squared in ((self._r + n) / 2, (self._r - n) / 2):
            p = fraction_sqrt(p_squared)
            if not p:
                continue
            candidate = QSqrt2(p, self._s / (2 * p))
            if candidate * candidate == self:
                return candidate if candidate.sign() > 0 else -candidate
        return None

    # -- inspection ----------------------------------------------------------

    def is_rational(self) -> bool:
        return self._s == 0

    def in_ring(self, ring: str) -> bool:
        """Membership in Z ("integers") or Z[sqrt2, 1/2] ("zsqrt2-with-halves")."""
        if ring == "integers":
            return self._s == 0 and self._r.denominator == 1
        if ring == "zsqrt2-with-halves":
            return _is_dyadic(self._r) and _is_dyadic(self._s)
        raise ValueError(f"unknown ring {ring!r}; expected one of {RINGS}")

    def bounds(self, width: Fraction) -> Tuple[Fraction, Fraction]:
        """Rational lo <= value <= hi with hi - lo <= width (strict for irrationals)."""
        width = as_fraction(width)
        if width <= 0:
            raise ValueError("width must be positive")
        if self._s == 0:
            return self._r - width / 2, self._r + width / 2
        bits = 8
        while Fraction(abs(self._s), 1 << bits) > width:
            bits += 8
        lo2, hi2 = fraction_sqrt_bounds(Fraction(2), bits)
        if self._s > 0:
            return self._r + self._s * lo2, self._r + self._s * hi2
        return self._r + self._s * hi2, self._r + self._s * lo2

    def to_mpf(self, dps: int = 50):
        with mpmath.workdps(dps):
            return mpmath.mpf(self._r.numerator) / self._r.denominator + \
                (mpmath.mpf(self._s.numerator) / self._s.denominator) * mpmath.sqrt(2)

    def __float__(self) -> float:
        return float(self._r) + float(self._s) * math.sqrt(2)

    def to_json(self) -> dict:
        return {"r": format_fraction(self._r), "s": format_fraction(self._s)}

    @classmethod
    def from_json(cls, data: dict) -> "QSqrt2":
        return cls(as_fraction(data["r"]), as_fraction(data["s"]))


ZERO = QSqrt2(0)
ONE = QSqrt2(1)
SQRT2 = QSqrt2(0, 1)


def qsqrt2_sign(x: QSqrt2) -> int:
    """Sign of x in {-1, 0, +1}."""
    return x.sign()


def qsqrt2_field_ops(x: QSqrt2, y: QSqrt2, op: str) -> QSqrt2:
    """Apply one of add, sub, mul, div to two elements of Q(sqrt2)."""
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown field operation {op!r}")


def parse_qsqrt2(text: str) -> QSqrt2:
    """Parse "r", "s*sqrt2" or "r+s*sqrt2" (also accepts the √2 sign)."""
    compact = text.replace(" ", "").replace("√2", "*sqrt2").replace("**sqrt2", "*sqrt2")
    if not compact:
        raise ValueError("empty Q(sqrt2) literal")
    if "sqrt2" not in compact:
        return QSqrt2(as_fraction(compact))
    if not compact.endswith("sqrt2"):
        raise ValueError(f"invalid Q(sqrt2) literal: {text!r}")
    head = compact[: -len("sqrt2")]
    # split head into "r" and "s*" at the last top-level sign
    split = max(head.rfind("+", 1), head.rfind("-", 1))
    if split > 0:
        r_text, s_text = head[:split], head[split:]
    else:
        r_text, s_text = "0", head
    s_text = s_text.rstrip("*")
    if s_text in ("", "+"):
        s_value = Fraction(1)
    elif s_text == "-":
        s_value = Fraction(-1)
    else:
        s_value = as_fraction(s_text)
    return QSqrt2(as_fraction(r_text), s_value)


def require_qsqrt2(value) -> QSqrt2:
    """Coerce a rational, QSqrt2 or RealAlgebraic lying in Q(sqrt2) to QSqrt2."""
    if isinstance(value, QSqrt2):
        return value
    if isinstance(value, (int, Fraction, str)):
        return QSqrt2.coerce(value)
    converted = getattr(value, "as_qsqrt2", lambda: None)()
    if converted is None:
        raise NotInFieldError(f"{value!r} does not lie in Q(sqrt2)")
    return converted
