"""Independent reference computations used only by the tests.

Nothing here imports the package's arithmetic: sympy and mpmath supply the
exact and high-precision sides.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial

import mpmath
import sympy


def sympy_section(d: int, t) -> sympy.Expr:
    """I_d(t) as a sympy expression, straight from the alternating sum."""
    t = sympy.Rational(Fraction(t).numerator, Fraction(t).denominator)
    sd = sympy.sqrt(d)
    z = sympy.Rational(d, 2) - sd * abs(t)
    if z <= 0:
        return sympy.Integer(0)
    top = int(sympy.floor(z))
    total = sum((-1) ** i * comb(d, i) * (z - i) ** (d - 1) for i in range(top + 1))
    return sympy.expand(sd / factorial(d - 1) * total)


def high_precision(expr: sympy.Expr, digits: int = 60) -> mpmath.mpf:
    with mpmath.workdps(digits):
        return mpmath.mpf(sympy.N(expr, digits))


def quadext_mp(value, digits: int = 300) -> mpmath.mpf:
    """base + Σ c·√m at `digits` decimal digits."""
    with mpmath.workdps(digits):
        out = mpmath.mpf(value.base.numerator) / value.base.denominator
        for m in value.radicands:
            c = value.coeff(m)
            out += mpmath.mpf(c.numerator) / c.denominator * mpmath.sqrt(m)
        return +out


def eulerian_explicit(n: int, k: int) -> int:
    """A(n, k) by the closed alternating sum (standard convention A(n, 0) = 1)."""
    return sum((-1) ** j * comb(n + 1, j) * (k + 1 - j) ** n for j in range(k + 1))


def mp_section_quad(d: int, t: float, digits: int = 30) -> mpmath.mpf:
    """(2√d/π)∫_0^∞ (sin u/u)^d cos(2√d t u) du with mpmath's oscillatory quadrature."""
    with mpmath.workdps(digits):
        w = 2 * mpmath.sqrt(d) * mpmath.mpf(t)
        f = lambda u: mpmath.sinc(u) ** d * mpmath.cos(w * u)
        val = mpmath.quadosc(f, [0, mpmath.inf], zeros=lambda n: n * mpmath.pi)
        return 2 * mpmath.sqrt(d) / mpmath.pi * val


def mp_poly_roots(coeffs_low_first, digits: int = 50):
    """Real roots of a polynomial with float-convertible coefficients."""
    with mpmath.workdps(digits):
        cs = [mpmath.mpf(c) for c in reversed(coeffs_low_first)]
        roots = mpmath.polyroots(cs, maxsteps=200, extraprec=200)
        return sorted(mpmath.re(r) for r in roots if abs(mpmath.im(r)) < mpmath.mpf(10) ** (-digits // 2))
