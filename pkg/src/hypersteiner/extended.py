"""Extended non-negative distances: exact rationals plus a distinguished infinity."""

from __future__ import annotations

from fractions import Fraction
from typing import Union


class _Infinity:
    """The single infinite distance. Addition saturates, ordering is total."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    __str__ = __repr__

    def __reduce__(self):
        return (_Infinity, ())

    def __hash__(self):
        return hash("hypersteiner.INF")

    def __eq__(self, other):
        return other is self

    def __ne__(self, other):
        return other is not self

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __add__(self, other):
        if isinstance(other, (int, Fraction, _Infinity)):
            return self
        return NotImplemented

    __radd__ = __add__


INF = _Infinity()

ExtendedDistance = Union[Fraction, _Infinity]


def is_inf(x) -> bool:
    return x is INF


def ext(value) -> ExtendedDistance:
    """Coerce ``value`` to an extended distance.

    Accepts ints, Fractions, ``INF``, and strings such as ``"3"``, ``"1/2"``,
    ``"inf"``. Floats are rejected: all stored distances are exact.
    """
    if value is INF:
        return INF
    if isinstance(value, bool):
        raise TypeError("booleans are not distances")
    if isinstance(value, int):
        out = Fraction(value)
    elif isinstance(value, Fraction):
        out = value
    elif isinstance(value, str):
        text = value.strip().lower()
        if text in ("inf", "infinity", "+inf"):
            return INF
        out = Fraction(text)
    else:
        raise TypeError(f"cannot interpret {value!r} as an exact distance")
    if out < 0:
        raise ValueError(f"distance must be non-negative, got {out}")
    return out


def parse_rational(value) -> Fraction:
    """Parse an exact (possibly negative) rational from int or ``"p/q"`` text."""
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def fmt(value) -> str:
    """Serialize an extended distance or rational as ``"p/q"``, ``"p"`` or ``"inf"``."""
    if value is INF:
        return "inf"
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def ext_sum(values) -> ExtendedDistance:
    total: ExtendedDistance = Fraction(0)
    for v in values:
        total = total + v
        if total is INF:
            return INF
    return total
