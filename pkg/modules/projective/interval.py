"""Compact intervals with endpoints in Q(sqrt2)."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import NamedTuple

from modules.exact.qsqrt2 import QSqrt2, parse_qsqrt2


def _coerce(value) -> QSqrt2:
    if isinstance(value, str):
        return parse_qsqrt2(value)
    return QSqrt2.coerce(value)


class Interval(NamedTuple):
    """The closed interval [lo, hi] with lo < hi."""

    lo: QSqrt2
    hi: QSqrt2

    @classmethod
    def of(cls, lo, hi) -> "Interval":
        lo, hi = _coerce(lo), _coerce(hi)
        if not lo < hi:
            raise ValueError(f"interval endpoints must satisfy lo < hi, got [{lo}, {hi}]")
        return cls(lo, hi)

    @property
    def length(self) -> QSqrt2:
        return self.hi - self.lo

    @property
    def midpoint(self) -> QSqrt2:
        return (self.lo + self.hi) / 2

    @property
    def radius_bound(self) -> Fraction:
        """Least integer R with the interval inside [-R, R]."""
        bound = max(abs(self.lo), abs(self.hi))
        upper = bound.r if bound.is_rational() else bound.bounds(Fraction(1, 1 << 20))[1]
        return Fraction(math.ceil(upper))

    def contains(self, value) -> bool:
        value = _coerce(value)
        return self.lo <= value <= self.hi

    def scaled(self, factor) -> "Interval":
        """Concentric interval whose length is ``factor`` times this one."""
        half = self.length * _coerce(factor) / 2
        return Interval(self.midpoint - half, self.midpoint + half)

    def __str__(self) -> str:
        return f"[{self.lo}, {self.hi}]"

    def to_json(self) -> dict:
        return {"lo": self.lo.to_json(), "hi": self.hi.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "Interval":
        return cls.of(QSqrt2.from_json(data["lo"]), QSqrt2.from_json(data["hi"]))


def parse_interval(text: str) -> Interval:
    """Parse "lo,hi" such as "0,1" or "-1/2,sqrt2"."""
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError(f"expected 'lo,hi', got {text!r}")
    return Interval.of(parse_qsqrt2(parts[0]), parse_qsqrt2(parts[1]))
