"""Exact real numbers of the form  c_0 + c_1·√m_1 + ... + c_k·√m_k.

Rational coefficients, squarefree positive integer radicands.  The set of
such numbers is a ring (products of square roots reduce to new square roots),
and the sign of every element is decided exactly by eliminating one prime at a
time:  for  x = A + B√p  with A, B free of p,  sign(x) follows from sign(A),
sign(B) and sign(A² − pB²).
"""

from __future__ import annotations

from enum import IntEnum
from fractions import Fraction
from functools import lru_cache
from math import gcd
from numbers import Rational
from typing import Dict, Iterable, Mapping, Tuple

from .interval import DEFAULT_BITS, DyadicInterval, interval_sqrt


class Sign(IntEnum):
    NEGATIVE = -1
    ZERO = 0
    POSITIVE = 1

    @property
    def label(self) -> str:
        return self.name.capitalize()

    @classmethod
    def of(cls, x) -> "Sign":
        if isinstance(x, QuadExtValue):
            return x.sign()
        if isinstance(x, Sign):
            return x
        return cls((x > 0) - (x < 0))


@lru_cache(maxsize=4096)
def squarefree_split(n: int) -> Tuple[int, int]:
    """Return (s, f) with n = s²·f and f squarefree."""
    if n <= 0:
        raise ValueError("radicand must be positive")
    s, f, m, p = 1, 1, n, 2
    while p * p <= m:
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        s *= p ** (e // 2)
        if e % 2:
            f *= p
        p += 1 if p == 2 else 2
    return s, f * m


@lru_cache(maxsize=4096)
def smallest_prime_factor(n: int) -> int:
    if n % 2 == 0:
        return 2
    p = 3
    while p * p <= n:
        if n % p == 0:
            return p
        p += 2
    return n


def _mul_radicands(a: int, b: int) -> Tuple[int, int]:
    """√a·√b = k·√c for squarefree a, b; returns (k, c)."""
    g = gcd(a, b)
    return g, (a // g) * (b // g)


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


class QuadExtValue:
    """Exact element of the field generated by square roots over the rationals.

    ``QuadExtValue(base, coeff_d, radicand_d, coeff_d1, radicand_d1)`` builds
    ``base + coeff_d·√radicand_d + coeff_d1·√radicand_d1``; radicands with a
    square factor are normalised on the way in.  Arithmetic results may carry
    further radicands (e.g. √d·√(d+1)).
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, base=0, coeff_d=0, radicand_d=1, coeff_d1=0, radicand_d1=1):
        terms: Dict[int, Fraction] = {}
        _accumulate(terms, 1, _as_fraction(base))
        for c, m in ((coeff_d, radicand_d), (coeff_d1, radicand_d1)):
            c = _as_fraction(c)
            if c:
                s, f = squarefree_split(int(m))
                _accumulate(terms, f, c * s)
        object.__setattr__(self, "_terms", terms)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("QuadExtValue is immutable")

    @classmethod
    def _from_terms(cls, terms: Mapping[int, Fraction]) -> "QuadExtValue":
        obj = cls.__new__(cls)
        object.__setattr__(obj, "_terms", {k: v for k, v in terms.items() if v})
        object.__setattr__(obj, "_hash", None)
        return obj

    @classmethod
    def from_terms(cls, pairs: Iterable[Tuple[int, object]]) -> "QuadExtValue":
        """Build Σ c·√m from (m, c) pairs, normalising each radicand."""
        terms: Dict[int, Fraction] = {}
        for m, c in pairs:
            c = _as_fraction(c)
            if c:
                s, f = squarefree_split(int(m))
                _accumulate(terms, f, c * s)
        return cls._from_terms(terms)

    @classmethod
    def sqrt(cls, m: int, coeff=1) -> "QuadExtValue":
        return cls(0, coeff, m)

    # -- inspection -----------------------------------------------------

    @property
    def terms(self) -> Dict[int, Fraction]:
        return dict(self._terms)

    @property
    def radicands(self) -> Tuple[int, ...]:
        return tuple(sorted(m for m in self._terms if m != 1))

    @property
    def base(self) -> Fraction:
        return self._terms.get(1, Fraction(0))

    def coeff(self, m: int) -> Fraction:
        """Coefficient of √m, where m is taken after squarefree reduction."""
        s, f = squarefree_split(m)
        return self._terms.get(f, Fraction(0)) / s

    @property
    def coeff_d(self) -> Fraction:
        r = self.radicands
        return self._terms[r[0]] if r else Fraction(0)

    @property
    def radicand_d(self) -> int:
        r = self.radicands
        return r[0] if r else 1

    @property
    def coeff_d1(self) -> Fraction:
        r = self.radicands
        return self._terms[r[1]] if len(r) > 1 else Fraction(0)

    @property
    def radicand_d1(self) -> int:
        r = self.radicands
        return r[1] if len(r) > 1 else 1

    def is_rational(self) -> bool:
        return all(m == 1 for m in self._terms)

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("value is irrational")
        return self.base

    def is_zero(self) -> bool:
        return not self._terms

    # -- arithmetic -----------------------------------------------------

    @staticmethod
    def _coerce(x) -> "QuadExtValue":
        if isinstance(x, QuadExtValue):
            return x
        return QuadExtValue._from_terms({1: _as_fraction(x)})

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        terms = dict(self._terms)
        for m, c in other._terms.items():
            _accumulate(terms, m, c)
        return QuadExtValue._from_terms(terms)

    __radd__ = __add__

    def __neg__(self):
        return QuadExtValue._from_terms({m: -c for m, c in self._terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return QuadExtValue._from_terms({})
            return QuadExtValue._from_terms({m: c * other for m, c in self._terms.items()})
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        terms: Dict[int, Fraction] = {}
        for a, ca in self._terms.items():
            for b, cb in other._terms.items():
                if a == 1:
                    _accumulate(terms, b, ca * cb)
                elif b == 1:
                    _accumulate(terms, a, ca * cb)
                else:
                    k, c = _mul_radicands(a, b)
                    _accumulate(terms, c, ca * cb * k)
        return QuadExtValue._from_terms(terms)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, QuadExtValue):
            if other.is_rational():
                other = other.base
            else:
                return self * other.inverse()
        other = _as_fraction(other)
        if not other:
            raise ZeroDivisionError("division by zero")
        return QuadExtValue._from_terms({m: c / other for m, c in self._terms.items()})

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def inverse(self) -> "QuadExtValue":
        """Multiplicative inverse, by repeated conjugation over each prime."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        num = QuadExtValue._from_terms({1: Fraction(1)})
        den = self
        while not den.is_rational():
            p = _pick_prime(den._terms)
            conj = den._conjugate(p)
            num = num * conj
            den = den * conj
        return num / den.base

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise TypeError("only non-negative integer powers are supported")
        result = QuadExtValue._from_terms({1: Fraction(1)})
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def _conjugate(self, p: int) -> "QuadExtValue":
        """Flip the sign of √p wherever p divides the radicand."""
        return QuadExtValue._from_terms({m: (-c if m % p == 0 else c) for m, c in self._terms.items()})

    # -- order ----------------------------------------------------------

    def sign(self) -> Sign:
        return Sign(_sign_terms(self._terms))

    def __eq__(self, other):
        if isinstance(other, QuadExtValue):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.base == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(frozenset(self._terms.items())))
        return self._hash

    def _cmp(self, other) -> int:
        return int((self - self._coerce(other)).sign())

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __bool__(self):
        return bool(self._terms)

    # -- numerics -------------------------------------------------------

    def enclosure(self, bits: int = DEFAULT_BITS) -> DyadicInterval:
        acc = DyadicInterval.exact(0, bits)
        for m, c in sorted(self._terms.items()):
            term = DyadicInterval.exact(c, bits)
            if m != 1:
                term = term * interval_sqrt(DyadicInterval.exact(m, bits), bits)
            acc = acc + term
        return acc

    def __float__(self) -> float:
        return float(self.enclosure(80))

    def __repr__(self) -> str:
        return f"QuadExtValue({self.pretty()})"

    def pretty(self) -> str:
        """Human form such as ``3√3/4`` or ``√2 − 1/2``."""
        if not self._terms:
            return "0"
        parts = []
        for m in sorted(self._terms, key=lambda k: (k == 1, k)):
            c = self._terms[m]
            parts.append((c < 0, _fmt_term(abs(c), m)))
        out = ("-" if parts[0][0] else "") + parts[0][1]
        for neg, s in parts[1:]:
            out += (" − " if neg else " + ") + s
        return out


def _fmt_term(c: Fraction, m: int) -> str:
    if m == 1:
        return str(c)
    root = f"√{m}"
    num = "" if c.numerator == 1 else str(c.numerator)
    den = "" if c.denominator == 1 else f"/{c.denominator}"
    return f"{num}{root}{den}"


def _accumulate(terms: Dict[int, Fraction], m: int, c: Fraction) -> None:
    if not c:
        return
    v = terms.get(m, 0) + c
    if v:
        terms[m] = v
    else:
        terms.pop(m, None)


def _pick_prime(terms: Mapping[int, Fraction]) -> int:
    return smallest_prime_factor(max(m for m in terms if m != 1))


def _sign_terms(terms: Mapping[int, Fraction]) -> int:
    if not terms:
        return 0
    if len(terms) == 1:
        (m, c), = terms.items()
        return 1 if c > 0 else -1
    if all(m == 1 for m in terms):
        c = terms[1]
        return (c > 0) - (c < 0)
    p = _pick_prime(terms)
    a: Dict[int, Fraction] = {}
    b: Dict[int, Fraction] = {}
    for m, c in terms.items():
        if m % p == 0:
            b[m // p] = c
        else:
            a[m] = c
    sa = _sign_terms(a)
    sb = _sign_terms(b)
    if sb == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb if sa == 0 else sa
    A = QuadExtValue._from_terms(a)
    B = QuadExtValue._from_terms(b)
    norm = A * A - B * B * p
    return sa * _sign_terms(norm._terms)


def sign_quadext(v: QuadExtValue) -> Sign:
    """Exact sign of ``v``; never uses floating point."""
    return QuadExtValue._coerce(v).sign()
