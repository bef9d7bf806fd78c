"""Outward-rounded intervals with dyadic endpoints.

Thin immutable wrapper over the raw interval primitives of ``mpmath.libmp``.
Every primitive there takes the working precision explicitly, so nothing here
touches the global mpmath context.  Transcendental results are widened by one
extra ulp on each side as a guard against rounding slips inside libmp.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Union

from mpmath.libmp import (
    fzero,
    from_int,
    from_man_exp,
    from_rational,
    mpf_add,
    mpf_cmp,
    mpf_lt,
    mpf_sign,
    round_ceiling,
    round_floor,
    to_float,
    to_rational,
)
from mpmath.libmp import libmpi

from ..errors import DomainError

DEFAULT_BITS = 128

Number = Union[int, Fraction, "DyadicInterval"]


def _ulp_nudge(x, prec, direction):
    """Move the mpf value ``x`` one unit in the last place up (+1) or down (-1)."""
    if x == fzero:
        # Smallest step that still dominates any rounding error at this scale.
        tiny = from_man_exp(direction, -prec - 64)
        return tiny
    sign, man, exp, bc = x
    ulp = from_man_exp(1, exp + bc - prec)
    if direction > 0:
        return mpf_add(x, ulp, prec, round_ceiling)
    return mpf_add(x, (1, ulp[1], ulp[2], ulp[3]), prec, round_floor)


def _widen(iv, prec):
    lo, hi = iv
    return (_ulp_nudge(lo, prec, -1), _ulp_nudge(hi, prec, +1))


def _to_fraction(x) -> Fraction:
    p, q = to_rational(x)
    return Fraction(int(p), int(q))


def _from_fraction(q: Fraction, prec: int):
    if q.denominator == 1:
        lo = from_int(q.numerator, prec, round_floor)
        hi = from_int(q.numerator, prec, round_ceiling)
    else:
        lo = from_rational(q.numerator, q.denominator, prec, round_floor)
        hi = from_rational(q.numerator, q.denominator, prec, round_ceiling)
    return (lo, hi)


class DyadicInterval:
    """A closed interval ``[lo, hi]`` with dyadic endpoints.

    Arithmetic rounds outward, so the result always contains the exact image
    of the operands.  Instances are immutable.
    """

    __slots__ = ("_iv", "precision_bits")

    def __init__(self, raw, precision_bits: int = DEFAULT_BITS):
        lo, hi = raw
        if mpf_lt(hi, lo):
            raise ValueError("interval with lo > hi")
        object.__setattr__(self, "_iv", (lo, hi))
        object.__setattr__(self, "precision_bits", int(precision_bits))

    def __setattr__(self, name, value):
        raise AttributeError("DyadicInterval is immutable")

    # -- construction ---------------------------------------------------

    @classmethod
    def exact(cls, x, bits: int = DEFAULT_BITS) -> "DyadicInterval":
        """Enclose an int or rational number at ``bits`` of precision."""
        if isinstance(x, DyadicInterval):
            return x
        if isinstance(x, float):
            q = Fraction(x)
        elif isinstance(x, Rational):
            q = Fraction(x)
        else:
            raise TypeError(f"cannot enclose {type(x).__name__}")
        return cls(_from_fraction(q, bits), bits)

    @classmethod
    def hull(cls, lo, hi, bits: int = DEFAULT_BITS) -> "DyadicInterval":
        a = cls.exact(lo, bits)
        b = cls.exact(hi, bits)
        return cls((a._iv[0], b._iv[1]), bits)

    @classmethod
    def pi(cls, bits: int = DEFAULT_BITS) -> "DyadicInterval":
        return cls(_widen(libmpi.mpi_pi(bits), bits), bits)

    # -- accessors ------------------------------------------------------

    @property
    def lo(self) -> Fraction:
        return _to_fraction(self._iv[0])

    @property
    def hi(self) -> Fraction:
        return _to_fraction(self._iv[1])

    @property
    def raw(self):
        return self._iv

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __float__(self) -> float:
        a, b = self._iv
        return (to_float(a) + to_float(b)) / 2

    def contains(self, x) -> bool:
        if isinstance(x, DyadicInterval):
            return self.lo <= x.lo and x.hi <= self.hi
        q = Fraction(x)
        return self.lo <= q <= self.hi

    def sign(self):
        """+1 / -1 when certain, 0 for the exact zero interval, None if undecided."""
        lo, hi = self._iv
        if mpf_sign(lo) > 0:
            return 1
        if mpf_sign(hi) < 0:
            return -1
        if lo == fzero and hi == fzero:
            return 0
        return None

    def certainly_lt(self, other) -> bool:
        other = self._coerce(other)
        return mpf_cmp(self._iv[1], other._iv[0]) < 0

    def certainly_gt(self, other) -> bool:
        other = self._coerce(other)
        return mpf_cmp(self._iv[0], other._iv[1]) > 0

    def __repr__(self) -> str:
        return f"DyadicInterval([{to_float(self._iv[0])!r}, {to_float(self._iv[1])!r}], bits={self.precision_bits})"

    # -- arithmetic -----------------------------------------------------

    def _coerce(self, other) -> "DyadicInterval":
        if isinstance(other, DyadicInterval):
            return other
        return DyadicInterval.exact(other, self.precision_bits)

    def _prec(self, other: "DyadicInterval") -> int:
        return max(self.precision_bits, other.precision_bits)

    def __add__(self, other):
        other = self._coerce(other)
        p = self._prec(other)
        return DyadicInterval(libmpi.mpi_add(self._iv, other._iv, p), p)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        p = self._prec(other)
        return DyadicInterval(libmpi.mpi_sub(self._iv, other._iv, p), p)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        p = self._prec(other)
        return DyadicInterval(libmpi.mpi_mul(self._iv, other._iv, p), p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other.sign() is None or other.sign() == 0:
            raise ZeroDivisionError("interval division by an interval containing 0")
        p = self._prec(other)
        return DyadicInterval(libmpi.mpi_div(self._iv, other._iv, p), p)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __neg__(self):
        return DyadicInterval(libmpi.mpi_neg(self._iv, self.precision_bits), self.precision_bits)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise TypeError("only non-negative integer powers are supported")
        return DyadicInterval(libmpi.mpi_pow_int(self._iv, n, self.precision_bits), self.precision_bits)

    def __abs__(self):
        return DyadicInterval(libmpi.mpi_abs(self._iv, self.precision_bits), self.precision_bits)

    def max(self, other) -> "DyadicInterval":
        other = self._coerce(other)
        p = self._prec(other)
        lo = self._iv[0] if mpf_cmp(self._iv[0], other._iv[0]) >= 0 else other._iv[0]
        hi = self._iv[1] if mpf_cmp(self._iv[1], other._iv[1]) >= 0 else other._iv[1]
        return DyadicInterval((lo, hi), p)

    def union(self, other) -> "DyadicInterval":
        other = self._coerce(other)
        lo = self._iv[0] if mpf_cmp(self._iv[0], other._iv[0]) <= 0 else other._iv[0]
        hi = self._iv[1] if mpf_cmp(self._iv[1], other._iv[1]) >= 0 else other._iv[1]
        return DyadicInterval((lo, hi), self._prec(other))


def interval_exp(x: DyadicInterval, bits: int | None = None) -> DyadicInterval:
    p = bits or x.precision_bits
    return DyadicInterval(_widen(libmpi.mpi_exp(x.raw, p), p), p)


def interval_log(x: DyadicInterval, bits: int | None = None) -> DyadicInterval:
    p = bits or x.precision_bits
    if mpf_sign(x.raw[0]) <= 0:
        raise DomainError("log needs a strictly positive interval")
    return DyadicInterval(_widen(libmpi.mpi_log(x.raw, p), p), p)


def interval_sqrt(x: DyadicInterval, bits: int | None = None) -> DyadicInterval:
    p = bits or x.precision_bits
    if mpf_sign(x.raw[0]) < 0:
        raise DomainError("sqrt needs a non-negative interval")
    lo, hi = libmpi.mpi_sqrt(x.raw, p)
    # sqrt is correctly rounded in libmp; keep the lower end clamped at 0.
    lo = _ulp_nudge(lo, p, -1) if lo != fzero else lo
    if mpf_sign(lo) < 0:
        lo = fzero
    return DyadicInterval((lo, _ulp_nudge(hi, p, +1)), p)


def interval_sin(x: DyadicInterval, bits: int | None = None) -> DyadicInterval:
    p = bits or x.precision_bits
    return DyadicInterval(_widen(libmpi.mpi_sin(x.raw, p), p), p)


def interval_cos(x: DyadicInterval, bits: int | None = None) -> DyadicInterval:
    p = bits or x.precision_bits
    return DyadicInterval(_widen(libmpi.mpi_cos(x.raw, p), p), p)


def enclose(x, bits: int = DEFAULT_BITS) -> DyadicInterval:
    """Enclose ints, rationals, intervals, or anything with an ``enclosure`` method."""
    if isinstance(x, DyadicInterval):
        return x
    if hasattr(x, "enclosure"):
        return x.enclosure(bits)
    return DyadicInterval.exact(x, bits)
