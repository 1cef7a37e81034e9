"""Closed real intervals with outward-widened double arithmetic.

Rounding mode switching is not portable from Python, so every endpoint
computed by an operation is pushed one ulp outward with ``math.nextafter``.
Round-to-nearest is off by at most half an ulp, so the widened result
encloses the exact image.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = ["Interval", "IntervalDomainError"]

_INF = math.inf


class IntervalDomainError(ArithmeticError):
    """Division by an interval containing zero, or sqrt of a negative part."""


def _down(x: float) -> float:
    return math.nextafter(x, -_INF)


def _up(x: float) -> float:
    return math.nextafter(x, _INF)


@dataclass(frozen=True, slots=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self):
        if not (self.lo <= self.hi):
            raise ValueError(f"empty or NaN interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x: float) -> "Interval":
        return cls(float(x), float(x))

    @classmethod
    def hull(cls, x: float) -> "Interval":
        """Enclosure of a real constant only known to double precision."""
        return cls(_down(x), _up(x))

    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def contains(self, x) -> bool:
        if isinstance(x, Interval):
            return self.lo <= x.lo and x.hi <= self.hi
        return self.lo <= x <= self.hi

    def __contains__(self, x) -> bool:
        return self.contains(x)

    def split(self) -> tuple["Interval", "Interval"]:
        m = self.mid
        return Interval(self.lo, m), Interval(m, self.hi)

    def __repr__(self):
        return f"Interval({self.lo!r}, {self.hi!r})"

    # arithmetic -----------------------------------------------------------

    @staticmethod
    def _coerce(x) -> "Interval":
        if isinstance(x, Interval):
            return x
        return Interval.point(float(x))

    def __add__(self, other):
        o = Interval._coerce(other)
        return Interval(_down(self.lo + o.lo), _up(self.hi + o.hi))

    __radd__ = __add__

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other):
        o = Interval._coerce(other)
        return Interval(_down(self.lo - o.hi), _up(self.hi - o.lo))

    def __rsub__(self, other):
        return Interval._coerce(other) - self

    def __mul__(self, other):
        o = Interval._coerce(other)
        ps = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return Interval(_down(min(ps)), _up(max(ps)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = Interval._coerce(other)
        if o.lo <= 0.0 <= o.hi:
            raise IntervalDomainError(f"division by interval containing zero: {o}")
        qs = (self.lo / o.lo, self.lo / o.hi, self.hi / o.lo, self.hi / o.hi)
        return Interval(_down(min(qs)), _up(max(qs)))

    def __rtruediv__(self, other):
        return Interval._coerce(other) / self

    def sqr(self) -> "Interval":
        """Square, tighter than ``self * self`` when the interval straddles 0."""
        if self.lo >= 0.0:
            return Interval(_down(self.lo * self.lo), _up(self.hi * self.hi))
        if self.hi <= 0.0:
            return Interval(_down(self.hi * self.hi), _up(self.lo * self.lo))
        return Interval(0.0, _up(max(self.lo * self.lo, self.hi * self.hi)))

    def sqrt(self) -> "Interval":
        if self.lo < 0.0:
            raise IntervalDomainError(f"sqrt of interval with negative part: {self}")
        lo = math.sqrt(self.lo)
        return Interval(max(0.0, _down(lo)), _up(math.sqrt(self.hi)))

    def min(self, other) -> "Interval":
        o = Interval._coerce(other)
        return Interval(min(self.lo, o.lo), min(self.hi, o.hi))

    def max(self, other) -> "Interval":
        o = Interval._coerce(other)
        return Interval(max(self.lo, o.lo), max(self.hi, o.hi))

    def to_list(self) -> list[float]:
        return [self.lo, self.hi]
