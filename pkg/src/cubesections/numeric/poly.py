"""Univariate polynomials with coefficients in a square-root extension of ℚ."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, List, Sequence

from ..errors import ZeroPolynomial
from .interval import DEFAULT_BITS, DyadicInterval, enclose
from .quadext import QuadExtValue, _pick_prime

_ZERO = QuadExtValue()


def _q(x) -> QuadExtValue:
    return x if isinstance(x, QuadExtValue) else QuadExtValue(x)


class Poly:
    """Immutable polynomial, constant term first.

    Coefficients are ``QuadExtValue``; plain ints and Fractions are promoted.
    Trailing zero coefficients are stripped so ``degree`` is meaningful; the
    zero polynomial has no coefficients and degree -1.
    """

    __slots__ = ("coefficients", "variable")

    def __init__(self, coefficients: Iterable = (), variable: str = "t"):
        cs = [_q(c) for c in coefficients]
        while cs and cs[-1].is_zero():
            cs.pop()
        object.__setattr__(self, "coefficients", tuple(cs))
        object.__setattr__(self, "variable", variable)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def monomial(cls, k: int, coeff=1, variable: str = "t") -> "Poly":
        return cls([0] * k + [coeff], variable)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return not self.coefficients

    def is_rational(self) -> bool:
        return all(c.is_rational() for c in self.coefficients)

    def rational_coefficients(self) -> List[Fraction]:
        return [c.as_fraction() for c in self.coefficients]

    def leading(self) -> QuadExtValue:
        if self.is_zero():
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self.coefficients[-1]

    # -- evaluation -----------------------------------------------------

    def __call__(self, x) -> QuadExtValue:
        acc = _ZERO
        if isinstance(x, (int, Fraction)):
            for c in reversed(self.coefficients):
                acc = acc * x + c
            return acc
        x = _q(x)
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def eval_interval(self, x, bits: int = DEFAULT_BITS) -> DyadicInterval:
        x = enclose(x, bits)
        acc = DyadicInterval.exact(0, bits)
        for c in reversed(self.coefficients):
            acc = acc * x + c.enclosure(bits)
        return acc

    def derivative(self) -> "Poly":
        return Poly([c * k for k, c in enumerate(self.coefficients)][1:], self.variable)

    # -- ring operations ------------------------------------------------

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        return Poly([other], self.variable)

    def __add__(self, other):
        other = self._coerce(other)
        a, b = self.coefficients, other.coefficients
        n = max(len(a), len(b))
        return Poly(
            [(a[i] if i < len(a) else _ZERO) + (b[i] if i < len(b) else _ZERO) for i in range(n)],
            self.variable,
        )

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coefficients], self.variable)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            other = _q(other)
            return Poly([c * other for c in self.coefficients], self.variable)
        a, b = self.coefficients, other.coefficients
        if not a or not b:
            return Poly([], self.variable)
        out = [_ZERO] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x.is_zero():
                continue
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return Poly(out, self.variable)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = Poly([1], self.variable)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def compose(self, inner: "Poly") -> "Poly":
        """Return self(inner(x))."""
        acc = Poly([], inner.variable)
        for c in reversed(self.coefficients):
            acc = acc * inner + c
        return acc

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coefficients == other.coefficients
        return NotImplemented

    def __hash__(self):
        return hash(self.coefficients)

    # -- elimination of radicals ----------------------------------------

    def norm(self) -> "Poly":
        """Product of all conjugates: a polynomial with rational coefficients.

        Every real root of ``self`` is a root of the result.  Each prime under
        a square root is removed by  A + B√p  ↦  A² − p·B².
        """
        p = self
        while not p.is_rational():
            prime = _pick_prime({m: 1 for c in p.coefficients for m in c.terms})
            a, b = [], []
            for c in p.coefficients:
                lo, hi = {}, {}
                for m, v in c.terms.items():
                    if m % prime == 0:
                        hi[m // prime] = v
                    else:
                        lo[m] = v
                a.append(QuadExtValue._from_terms(lo))
                b.append(QuadExtValue._from_terms(hi))
            pa, pb = Poly(a, p.variable), Poly(b, p.variable)
            p = pa * pa - pb * pb * prime
        return p

    def __repr__(self) -> str:
        if self.is_zero():
            return "Poly(0)"
        parts = []
        for k, c in enumerate(self.coefficients):
            if c.is_zero():
                continue
            mon = "" if k == 0 else (self.variable if k == 1 else f"{self.variable}^{k}")
            parts.append(f"({c.pretty()}){mon}" if mon else f"({c.pretty()})")
        return "Poly(" + " + ".join(parts) + ")"


def poly_from_rationals(coeffs: Sequence, variable: str = "t") -> Poly:
    return Poly([Fraction(c) for c in coeffs], variable)
