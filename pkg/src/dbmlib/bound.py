"""Extended coefficients and intervals.

A bound is either a finite exact number (``int`` or ``fractions.Fraction``)
or ``INF``.  Integer coefficients behave as signed 64-bit values: any sum or
product leaving that range raises :class:`CoefficientOverflow` instead of
wrapping.  Fractions are unbounded.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

INF = math.inf
NEG_INF = -math.inf

INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1

Number = Union[int, Fraction]
Bound = Union[int, Fraction, float]  # the only float ever stored is INF


class CoefficientOverflow(ArithmeticError):
    """A 64-bit integer coefficient left its representable range."""


def check(value):
    if type(value) is int and not INT64_MIN <= value <= INT64_MAX:
        raise CoefficientOverflow(f"coefficient {value} does not fit in 64 bits")
    return value


def add(a: Bound, b: Bound) -> Bound:
    """Sum of two upper bounds; ``+inf`` absorbs."""
    if a == INF or b == INF:
        return INF
    return check(a + b)


class _Bottom:
    """The least element shared by both abstract domains (the empty set)."""

    __slots__ = ()

    def __repr__(self):
        return "BOTTOM"

    def __reduce__(self):
        return "BOTTOM"


BOTTOM = _Bottom()


def is_finite(b) -> bool:
    return b != INF and b != NEG_INF


def fmt(value) -> str:
    """Exact decimal rendering (``inf``/``-inf`` for the infinities)."""
    if value == INF:
        return "inf"
    if value == NEG_INF:
        return "-inf"
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    return str(value)


@dataclass(frozen=True)
class Interval:
    """Closed interval ``[lo, hi]``; an infinite endpoint is excluded.

    ``Interval.EMPTY`` (``lo > hi``) is the only empty interval value.
    """

    lo: Bound = NEG_INF
    hi: Bound = INF

    def __post_init__(self):
        if self.lo > self.hi and not (self.lo == INF and self.hi == NEG_INF):
            object.__setattr__(self, "lo", INF)
            object.__setattr__(self, "hi", NEG_INF)

    @property
    def is_empty(self) -> bool:
        return self.lo > self.hi

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    def issubset(self, other: Interval) -> bool:
        if self.is_empty:
            return True
        if other.is_empty:
            return False
        return other.lo <= self.lo and self.hi <= other.hi

    def hull(self, other: Interval) -> Interval:
        if self.is_empty:
            return other
        if other.is_empty:
            return self
        return Interval(min(self.lo, other.lo), max(self.hi, other.hi))

    def intersect(self, other: Interval) -> Interval:
        return Interval(max(self.lo, other.lo), min(self.hi, other.hi))

    def __str__(self):
        if self.is_empty:
            return "empty"
        lo = "(-inf" if self.lo == NEG_INF else f"[{fmt(self.lo)}"
        hi = "+inf)" if self.hi == INF else f"{fmt(self.hi)}]"
        return f"{lo},{hi}"


Interval.EMPTY = Interval(INF, NEG_INF)
Interval.TOP = Interval(NEG_INF, INF)
