"""Exact volumes of cube sections orthogonal to a main diagonal.

With  z = d/2 − √d·t  the section volume is

    I_d(t) = √d/(d−1)! · Σ_{i=0}^{⌊z⌋} (−1)^i C(d, i) (z − i)^(d−1),

a polynomial in z on each interval i ≤ z ≤ i+1.  At rational t the value lies
in ℚ(√d).  All work below is exact; √d enters only through z.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, isqrt
from typing import List, Tuple

from .errors import DomainError, IndexOutOfRange
from .numeric.interval import DEFAULT_BITS, DyadicInterval
from .numeric.poly import Poly
from .numeric.quadext import QuadExtValue, Sign, squarefree_split
from .numeric.roots import IsolatingInterval, isolate_roots, refine


@dataclass(frozen=True)
class SectionPiece:
    """I_d on one breakpoint interval, as √d/(d−1)! · poly_in_z(z)."""

    d: int
    i: int
    poly_in_z: Poly
    valid_z: Tuple[Fraction, Fraction]

    @property
    def prefactor(self) -> QuadExtValue:
        return QuadExtValue(0, Fraction(1, factorial(self.d - 1)), self.d)

    def in_t(self) -> Poly:
        """The same piece as a polynomial in t (coefficients in ℚ(√d))."""
        z_of_t = Poly([Fraction(self.d, 2), QuadExtValue(0, -1, self.d)], "t")
        return self.poly_in_z.compose(z_of_t) * self.prefactor

    def t_range(self) -> Tuple[QuadExtValue, QuadExtValue]:
        """(t_lo, t_hi) in ℚ(√d), with t decreasing as z increases."""
        return tuple(z_to_t(self.d, z) for z in (self.valid_z[1], self.valid_z[0]))  # type: ignore[return-value]


@dataclass(frozen=True)
class SectionValue:
    value: QuadExtValue
    d: int
    t: Fraction

    def enclosure(self, bits: int = DEFAULT_BITS) -> DyadicInterval:
        return self.value.enclosure(bits)

    def __float__(self) -> float:
        return float(self.value)


@dataclass(frozen=True)
class Breakpoints:
    d: int
    heights: Tuple[QuadExtValue, ...]


def z_to_t(d: int, z) -> QuadExtValue:
    """t = (d/2 − z)/√d, as an element of ℚ(√d)."""
    return QuadExtValue(0, (Fraction(d, 2) - Fraction(z)) / d, d)


def _check_d(d: int) -> None:
    if not isinstance(d, int) or d < 1:
        raise DomainError(f"dimension must be a positive integer, got {d!r}")


@lru_cache(maxsize=512)
def section_piece(d: int, i: int) -> SectionPiece:
    _check_d(d)
    if not 0 <= i <= d // 2:
        raise IndexOutOfRange(f"piece index {i} outside 0..{d // 2} for d={d}")
    acc = Poly([], "z")
    for j in range(i + 1):
        term = Poly([-j, 1], "z") ** (d - 1)
        acc = acc + term * ((-1) ** j * comb(d, j))
    return SectionPiece(d, i, acc, (Fraction(i), min(Fraction(i + 1), Fraction(d, 2))))


def floor_z(d: int, t: Fraction) -> int:
    """⌊d/2 − √d·t⌋ computed exactly; negative when t > √d/2."""
    p, q = t.numerator, t.denominator
    m = 4 * d * p * p
    r = isqrt(m)
    ceil_sqrt = r if r * r == m else r + 1
    # q(d − 2j) ≥ √m  ⇔  d − 2j ≥ ⌈ceil_sqrt/q⌉
    need = -(-ceil_sqrt // q)
    return (d - need) // 2


def pow_surd(a: int, b: int, d: int, n: int) -> Tuple[int, int]:
    """(a + b√d)^n = X + Y√d with integers X, Y."""
    x, y = 1, 0
    ba, bb = a, b
    while n:
        if n & 1:
            x, y = x * ba + y * bb * d, x * bb + y * ba
        n >>= 1
        if n:
            ba, bb = ba * ba + bb * bb * d, 2 * ba * bb
    return x, y


def eval_exact(d: int, t) -> SectionValue:
    """I_d(t) exactly, as a value in ℚ(√d).  Even in t.

    ``t`` is rational, or an element of ℚ(√d) such as a hypersimplex height.
    """
    _check_d(d)
    if isinstance(t, QuadExtValue):
        if t.is_rational():
            t = t.base
        else:
            return _eval_surd(d, t)
    t = abs(Fraction(t))
    j = floor_z(d, t)
    if j < 0:
        return SectionValue(QuadExtValue(), d, t)
    p, q = t.numerator, t.denominator
    n = d - 1
    sx = sy = 0
    for i in range(j + 1):
        x, y = pow_surd((d - 2 * i) * q, -2 * p, d, n)
        c = comb(d, i) if i % 2 == 0 else -comb(d, i)
        sx += c * x
        sy += c * y
    den = factorial(n) * (2 * q) ** n
    value = QuadExtValue(Fraction(sy * d, den), Fraction(sx, den), d)
    return SectionValue(value, d, t)


def _eval_surd(d: int, t: QuadExtValue) -> SectionValue:
    if t.sign() < 0:
        t = -t
    if any(m != squarefree_split(d)[1] for m in t.radicands):
        raise DomainError("t must lie in ℚ(√d)")
    z = Fraction(d, 2) - QuadExtValue.sqrt(d) * t
    j = piece_index(d, t)
    acc = QuadExtValue()
    for i in range(j + 1):
        acc = acc + (z - i) ** (d - 1) * ((-1) ** i * comb(d, i))
    return SectionValue(acc * QuadExtValue(0, Fraction(1, factorial(d - 1)), d), d, t)


def diff_value(d: int, t) -> QuadExtValue:
    return eval_exact(d + 1, t).value - eval_exact(d, t).value


def diff_sign(d: int, t) -> Sign:
    """Exact sign of I_{d+1}(t) − I_d(t)."""
    return diff_value(d, t).sign()


def hypersimplex_heights(d: int) -> Breakpoints:
    _check_d(d)
    return Breakpoints(d, tuple(z_to_t(d, i) for i in range(d // 2 + 1)))


def piece_index(d: int, t: QuadExtValue | Fraction) -> int:
    """Index i of the piece used at t (the larger one on a breakpoint)."""
    if isinstance(t, Fraction) or isinstance(t, int):
        return floor_z(d, Fraction(t))
    z = Fraction(d, 2) - QuadExtValue(0, 1, d) * t
    lo = int(float(z)) - 1
    while (z - (lo + 1)).sign() >= 0:
        lo += 1
    while (z - lo).sign() < 0:
        lo -= 1
    return lo


def _breakpoints_in(d: int, lo: Fraction, hi: Fraction) -> List[QuadExtValue]:
    out = []
    for i in range(d // 2 + 1):
        b = z_to_t(d, i)
        if (b - lo).sign() > 0 and (b - hi).sign() < 0:
            out.append(b)
    return out


def _diff_poly_on(d: int, t: QuadExtValue | Fraction) -> Poly:
    """Polynomial form of I_{d+1} − I_d on the piece pair active just after t."""

    def piece(dim):
        i = piece_index(dim, t)
        if i < 0:
            return Poly([], "t")
        return section_piece(dim, min(i, dim // 2)).in_t()

    return piece(d + 1) - piece(d)


def isolate_crossings(d: int, t_range: Tuple[object, object], width=Fraction(1, 10**8)) -> List[IsolatingInterval]:
    """Isolating intervals for all t in the range where I_{d+1}(t) = I_d(t).

    The range is cut at the breakpoints of both d and d+1; on each cell the
    difference is one polynomial whose real roots are isolated exactly and
    clipped to the cell, then refined to ``width``.
    """
    _check_d(d)
    lo, hi = (Fraction(x) for x in t_range)
    if lo < 0 or hi < lo:
        raise DomainError("range must satisfy 0 ≤ lo ≤ hi")
    cuts = sorted(
        {*_breakpoints_in(d, lo, hi), *_breakpoints_in(d + 1, lo, hi)},
        key=lambda v: v.enclosure(96).lo,
    )
    cells = list(zip([QuadExtValue(lo)] + cuts, cuts + [QuadExtValue(hi)]))
    found: List[IsolatingInterval] = []
    for a, b in cells:
        # Sample point strictly inside the cell picks the active pieces.
        mid = (a.enclosure(96).mid + b.enclosure(96).mid) / 2
        D = _diff_poly_on(d, mid)
        if D.is_zero():
            continue
        ra = a.as_fraction() if a.is_rational() else a.enclosure(96).lo
        rb = b.as_fraction() if b.is_rational() else b.enclosure(96).hi
        for iv in isolate_roots(D, (ra, rb)):
            iv = _clip(D, iv, a, b)
            if iv is not None:
                if iv.width > width and D(iv.lo).sign() * D(iv.hi).sign() < 0:
                    iv = refine(iv, D, width)
                found.append(iv)
    found.sort(key=lambda iv: iv.lo)
    return _dedupe(found)


def _clip(D: Poly, iv: IsolatingInterval, a: QuadExtValue, b: QuadExtValue):
    """Shrink a root interval of D until it sits inside [a, b], or drop it."""
    lo, hi = iv.lo, iv.hi
    for _ in range(400):
        if (a - hi).sign() >= 0 or (b - lo).sign() <= 0:
            return None
        if (a - lo).sign() <= 0 and (b - hi).sign() >= 0:
            return IsolatingInterval(lo, hi, iv.multiplicity_hint)
        sl, sh = D(lo).sign(), D(hi).sign()
        if sl * sh >= 0:
            # Even-multiplicity root; fall back to halving around the midpoint.
            m = (lo + hi) / 2
            if D(m).is_zero():
                return IsolatingInterval((lo + m) / 2, (m + hi) / 2, iv.multiplicity_hint)
            return None if (a - m).sign() > 0 or (b - m).sign() < 0 else IsolatingInterval(lo, hi, iv.multiplicity_hint)
        iv2 = refine(IsolatingInterval(lo, hi), D, (hi - lo) / 4)
        lo, hi = iv2.lo, iv2.hi
    # Root coincides with a cell boundary.
    for edge in (a, b):
        if D(edge).is_zero():
            return IsolatingInterval(lo, hi, iv.multiplicity_hint)
    return None


def _dedupe(ivs: List[IsolatingInterval]) -> List[IsolatingInterval]:
    out: List[IsolatingInterval] = []
    for iv in ivs:
        if out and iv.lo < out[-1].hi:
            # Same root reached from both sides of a shared breakpoint.
            continue
        out.append(iv)
    return out
