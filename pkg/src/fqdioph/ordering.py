"""Degree/order sentinels.

``NEG_INF`` is the degree of the zero polynomial and the order of an exactly
vanishing fractional part.  It sorts below every integer and absorbs integer
addition, so ``deg(a*b) == deg(a) + deg(b)`` holds without special cases.

``BelowPrecision(c)`` records that an order is known only to be ``< c``
because the digits at and below ``c`` were not computed.
"""

from __future__ import annotations

from dataclasses import dataclass


class _NegInfinity:
    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __reduce__(self):
        return (_NegInfinity, ())

    def __repr__(self):
        return "NegInfinity"

    __str__ = __repr__

    def __hash__(self):
        return hash("NegInfinity")

    def __eq__(self, other):
        return other is self

    def __ne__(self, other):
        return other is not self

    def __lt__(self, other):
        if other is self or isinstance(other, (int, float)):
            return other is not self
        return NotImplemented

    def __le__(self, other):
        if other is self or isinstance(other, (int, float)):
            return True
        return NotImplemented

    def __gt__(self, other):
        if other is self or isinstance(other, (int, float)):
            return False
        return NotImplemented

    def __ge__(self, other):
        if other is self or isinstance(other, (int, float)):
            return other is self
        return NotImplemented

    def __add__(self, other):
        if other is self or isinstance(other, int):
            return self
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            return self
        return NotImplemented

    def __mul__(self, other):
        # only positive integer scaling keeps the sentinel meaningful
        if isinstance(other, int) and other > 0:
            return self
        return NotImplemented

    __rmul__ = __mul__


NEG_INF = _NegInfinity()


def is_neg_inf(x) -> bool:
    return x is NEG_INF


@dataclass(frozen=True)
class BelowPrecision:
    """The order is strictly below ``cutoff``; nothing finer is known."""

    cutoff: int

    def __str__(self):
        return f"<{self.cutoff}"


def ord_to_json(x):
    if x is NEG_INF:
        return "-inf"
    if isinstance(x, BelowPrecision):
        return {"below": x.cutoff}
    return x
