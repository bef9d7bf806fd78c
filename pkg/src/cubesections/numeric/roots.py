"""Real-root isolation and refinement.

Polynomials with radical coefficients are first reduced to their rational
norm; isolation then runs Descartes' rule of signs with bisection on the
integer primitive part.  Roots of the norm that belong to a conjugate rather
than to the original polynomial are discarded by exact sign tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Callable, List, Optional, Sequence, Tuple

from ..errors import NoSignChange, PrecisionExhausted, UndecidedRoot, ZeroPolynomial
from .interval import DyadicInterval
from .poly import Poly
from .quadext import QuadExtValue, Sign

MAX_NODES = 10**6
_MOD = (1 << 61) - 1


@dataclass(frozen=True)
class IsolatingInterval:
    """Open interval ``(lo, hi)`` holding exactly one root of some function."""

    lo: Fraction
    hi: Fraction
    multiplicity_hint: int = 1

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError("isolating interval needs lo < hi")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x) -> bool:
        if isinstance(x, DyadicInterval):
            return self.lo < x.lo and x.hi < self.hi
        return self.lo < Fraction(x) < self.hi

    def __float__(self) -> float:
        return float(self.mid)


# -- integer polynomial toolkit ----------------------------------------------

def primitive_part(coeffs: Sequence[Fraction]) -> List[int]:
    """Scale rational coefficients to coprime integers (constant term first)."""
    coeffs = [Fraction(c) for c in coeffs]
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    if not coeffs:
        return []
    den = 1
    for c in coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    g = 0
    for c in ints:
        g = gcd(g, c)
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return ints


def _derivative(p: Sequence[int]) -> List[int]:
    return [k * c for k, c in enumerate(p)][1:]


def _mod_gcd_degree(a: Sequence[int], b: Sequence[int]) -> int:
    """Degree of gcd(a, b) modulo a large prime (an upper bound for the true degree)."""

    def trim(p):
        p = [c % _MOD for c in p]
        while p and p[-1] == 0:
            p.pop()
        return p

    a, b = trim(a), trim(b)
    while b:
        inv = pow(b[-1], _MOD - 2, _MOD)
        while len(a) >= len(b):
            f = a[-1] * inv % _MOD
            shift = len(a) - len(b)
            for i, c in enumerate(b):
                a[i + shift] = (a[i + shift] - f * c) % _MOD
            a = trim(a)
            if not a:
                break
        a, b = b, a
    return len(a) - 1


def _rat_divmod(a: List[Fraction], b: List[Fraction]) -> Tuple[List[Fraction], List[Fraction]]:
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    while len(a) >= len(b) and any(a):
        f = a[-1] / b[-1]
        shift = len(a) - len(b)
        q[shift] = f
        for i, c in enumerate(b):
            a[i + shift] -= f * c
        a.pop()
        while a and not a[-1]:
            a.pop()
    return q, a


def _rat_gcd(a: Sequence[int], b: Sequence[int]) -> List[int]:
    x = [Fraction(c) for c in a]
    y = [Fraction(c) for c in b]
    while y:
        _, r = _rat_divmod(x, y)
        x, y = y, r
    return primitive_part(x)


def squarefree_part(p: Sequence[int]) -> List[int]:
    """p / gcd(p, p'), as a primitive integer polynomial."""
    dp = _derivative(p)
    if not dp or _mod_gcd_degree(p, dp) == 0:
        return list(p)
    g = _rat_gcd(p, dp)
    if len(g) <= 1:
        return list(p)
    q, r = _rat_divmod([Fraction(c) for c in p], [Fraction(c) for c in g])
    assert not r
    return primitive_part(q)


def eval_int_poly(p: Sequence[int], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _sign_int_poly(p: Sequence[int], x: Fraction) -> int:
    num, den = x.numerator, x.denominator
    acc = 0
    scale = 1
    for c in reversed(p):
        acc = acc * num + c * scale
        scale *= den
    return (acc > 0) - (acc < 0)


def _transform(p: Sequence[int], a: Fraction, b: Fraction) -> List[int]:
    """Integer coefficients of den^n · p(a + (b − a)x)."""
    den = a.denominator * b.denominator // gcd(a.denominator, b.denominator)
    an = a.numerator * (den // a.denominator)
    wn = b.numerator * (den // b.denominator) - an
    n = len(p) - 1
    q = [p[-1]]
    dpow = 1
    for k in range(n - 1, -1, -1):
        dpow *= den
        # q <- q * (an + wn x) + p[k] * den^(n-k)
        nq = [0] * (len(q) + 1)
        for i, c in enumerate(q):
            nq[i] += c * an
            nq[i + 1] += c * wn
        nq[0] += p[k] * dpow
        q = nq
    return q


def _variations_unit(q: Sequence[int]) -> int:
    """Descartes bound for roots of q in (0, 1): sign changes of (1+x)^n q(1/(1+x))."""
    r = list(reversed(q))
    n = len(r)
    # Taylor shift by 1 (Horner scheme).
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            r[j] += r[j + 1]
    count = 0
    prev = 0
    for c in r:
        if c:
            s = 1 if c > 0 else -1
            if prev and s != prev:
                count += 1
            prev = s
    return count


def _split_point(p: Sequence[int], a: Fraction, b: Fraction) -> Fraction:
    """Midpoint of (a, b), nudged off any root of p."""
    w = b - a
    for k in range(2, 64):
        for m in (a + w / 2, a + w / 2 - w / 2 ** k, a + w / 2 + w / 2 ** k):
            if _sign_int_poly(p, m) != 0:
                return m
    raise UndecidedRoot("no admissible split point")


def isolate_real_roots(p: Sequence[int], lo: Fraction, hi: Fraction) -> Tuple[List[Tuple[Fraction, Fraction]], List[Fraction]]:
    """Isolate the distinct roots of an integer polynomial on the closed interval [lo, hi].

    Returns (open intervals each holding one irrational-or-unplaced root,
    exact roots found at lo or hi).  Interval endpoints are never roots.
    """
    lo, hi = Fraction(lo), Fraction(hi)
    if not any(p):
        raise ZeroPolynomial("cannot isolate roots of the zero polynomial")
    sf = squarefree_part(primitive_part(p))
    endpoint_roots = [x for x in ((lo,) if lo == hi else (lo, hi)) if _sign_int_poly(sf, x) == 0]
    if len(sf) <= 1 or lo >= hi:
        return [], endpoint_roots
    out: List[Tuple[Fraction, Fraction]] = []
    stack = [(lo, hi)]
    nodes = 0
    while stack:
        a, b = stack.pop()
        nodes += 1
        if nodes > MAX_NODES:
            raise UndecidedRoot("subdivision limit reached during root isolation")
        v = _variations_unit(_transform(sf, a, b))
        if v == 0:
            continue
        if v == 1 and _sign_int_poly(sf, a) != 0 and _sign_int_poly(sf, b) != 0:
            out.append((a, b))
            continue
        m = _split_point(sf, a, b)
        stack.append((m, b))
        stack.append((a, m))
    out.sort()
    return out, endpoint_roots


# -- public API ---------------------------------------------------------------

def _as_poly(p) -> Poly:
    if isinstance(p, Poly):
        return p
    return Poly(p)


def _sign_of(value) -> int:
    if isinstance(value, QuadExtValue):
        return int(value.sign())
    if isinstance(value, DyadicInterval):
        s = value.sign()
        if s is None:
            raise UndecidedRoot("interval sign undecided")
        return s
    return (value > 0) - (value < 0)


def isolate_roots(p, domain: Tuple[object, object], refine_undecided: int = 200) -> List[IsolatingInterval]:
    """Isolating intervals for every distinct real root of ``p`` in [lo, hi].

    ``p`` may carry square-root coefficients.  Roots at the domain endpoints
    are reported as tiny intervals around them, clipped to the domain's
    outer neighbourhood.
    """
    poly = _as_poly(p)
    if poly.is_zero():
        raise ZeroPolynomial("cannot isolate roots of the zero polynomial")
    lo, hi = (Fraction(x) for x in domain)
    norm = poly.norm()
    ints = primitive_part(norm.rational_coefficients())
    candidates, endpoint_roots = isolate_real_roots(ints, lo, hi)
    sf = squarefree_part(ints)
    result: List[IsolatingInterval] = []
    for x in endpoint_roots:
        if poly(x).is_zero():
            result.append(_around_rational(ints, sf, x))
    for a, b in candidates:
        sa, sb = int(poly(a).sign()), int(poly(b).sign())
        if sa * sb < 0:
            result.append(IsolatingInterval(a, b, _multiplicity(ints, a, b)))
            continue
        # No sign change: either a conjugate root or an even-multiplicity root of p.
        iv = _confirm_even_root(poly, sf, a, b, refine_undecided)
        if iv is not None:
            result.append(iv)
    result.sort(key=lambda iv: iv.lo)
    return result


def _multiplicity(ints: Sequence[int], a: Fraction, b: Fraction) -> int:
    m = 1
    g = list(ints)
    while True:
        dg = _derivative(g)
        if not dg or _mod_gcd_degree(g, dg) == 0:
            return m
        g = _rat_gcd(g, dg)
        if len(g) <= 1:
            return m
        sg = squarefree_part(g)
        if _sign_int_poly(sg, a) * _sign_int_poly(sg, b) < 0 or _variations_unit(_transform(sg, a, b)) == 1:
            m += 1
        else:
            return m


def _around_rational(ints: Sequence[int], sf: Sequence[int], x: Fraction) -> IsolatingInterval:
    eps = Fraction(1, 2**20)
    while True:
        a, b = x - eps, x + eps
        if (_sign_int_poly(sf, a) and _sign_int_poly(sf, b)
                and _variations_unit(_transform(sf, a, b)) == 1):
            return IsolatingInterval(a, b, _multiplicity(ints, a, b))
        eps /= 2**8


def _confirm_even_root(poly: Poly, sf: Sequence[int], a: Fraction, b: Fraction, steps: int) -> Optional[IsolatingInterval]:
    """Decide whether the single norm root in (a, b) is a root of ``poly``.

    Bisect the norm; as the interval shrinks, an interval enclosure of
    ``poly`` excludes zero unless the root is shared.
    """
    bits = 128
    for _ in range(steps):
        enc = poly.eval_interval(DyadicInterval.hull(a, b, bits), bits)
        if enc.sign() not in (None, 0):
            return None
        m = (a + b) / 2
        s = _sign_int_poly(sf, m)
        if s == 0:
            return None if not poly(m).is_zero() else IsolatingInterval(a, b, 2)
        if s == _sign_int_poly(sf, a):
            a = m
        else:
            b = m
        if (b - a) < Fraction(1, 2 ** (bits // 2)):
            bits *= 2
    # Still touching zero after heavy refinement: report a probable double root.
    return IsolatingInterval(a, b, 2)


def refine(iv: IsolatingInterval, f, width) -> IsolatingInterval:
    """Shrink ``iv`` by exact bisection until its width is at most ``width``.

    ``f`` is a Poly or a callable taking a Fraction and returning anything
    with a decidable sign (int, Fraction, QuadExtValue, certified interval).
    """
    width = Fraction(width)
    func: Callable = f if not isinstance(f, Poly) else f.__call__
    a, b = Fraction(iv.lo), Fraction(iv.hi)
    sa, sb = _sign_of(func(a)), _sign_of(func(b))
    if sa * sb >= 0:
        raise NoSignChange(f"no sign change on ({a}, {b})")
    while b - a > width:
        m = (a + b) / 2
        sm = _sign_of(func(m))
        if sm == 0:
            h = min(width, b - a) / 4
            return IsolatingInterval(m - h, m + h, iv.multiplicity_hint)
        if sm == sa:
            a = m
        else:
            b = m
    return IsolatingInterval(a, b, iv.multiplicity_hint)


def certified_sign(g: Callable[[Fraction, int], DyadicInterval], x: Fraction,
                   start_bits: int = 128, max_bits: int = 4096) -> Optional[int]:
    """Sign of g(x) from interval evaluations, doubling precision until decided."""
    bits = start_bits
    while bits <= max_bits:
        s = g(x, bits).sign()
        if s is not None:
            return s
        bits *= 2
    return None


def certified_bisection(g: Callable[[Fraction, int], DyadicInterval], lo, hi, width,
                        start_bits: int = 128, max_bits: int = 4096) -> IsolatingInterval:
    """Bracket a sign change of a transcendental function ``g`` to the given width.

    ``g(x, bits)`` must return a certified enclosure of the function at the
    rational point ``x``.
    """
    a, b, width = Fraction(lo), Fraction(hi), Fraction(width)
    sa = certified_sign(g, a, start_bits, max_bits)
    sb = certified_sign(g, b, start_bits, max_bits)
    if sa is None or sb is None:
        raise PrecisionExhausted(f"endpoint sign undecided at {max_bits} bits")
    if sa * sb >= 0:
        raise NoSignChange(f"no certified sign change on ({a}, {b})")
    while b - a > width:
        w = b - a
        sm = None
        for m in (a + w / 2, a + w * 7 / 16, a + w * 9 / 16):
            sm = certified_sign(g, m, start_bits, max_bits)
            if sm is not None:
                break
        if sm is None:
            raise PrecisionExhausted(f"sign undecided near {float(a + w / 2)} at {max_bits} bits")
        if sm == 0:
            h = min(width, w) / 4
            return IsolatingInterval(m - h, m + h)
        if sm == sa:
            a = m
        else:
            b = m
    return IsolatingInterval(a, b)

