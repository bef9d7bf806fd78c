"""Gaussian limit, correction terms and certified dimension thresholds.

Every transcendental quantity is returned as a ``DyadicInterval``; the
polynomial parts are evaluated exactly at rational t first.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import ceil
from typing import Callable, Dict, List, Optional, Tuple, Union

from .errors import AtSingularity, DimensionTooSmall, DomainError, NoSignChange
from .numeric.interval import (
    DEFAULT_BITS,
    DyadicInterval,
    enclose,
    interval_exp,
    interval_sqrt,
)
from .numeric.poly import Poly
from .numeric.quadext import QuadExtValue, Sign
from .numeric.roots import IsolatingInterval, certified_bisection

TLike = Union[int, Fraction, DyadicInterval]

P_POLY = Poly([-3, 0, 72, 0, -144])
Q_POLY = Poly([-65, 0, -6480, 0, 96480, 0, -246528, 0, 145152])
R_POLY = Poly([2, 3, 2, 3])
QUARTIC = Poly([1, 0, -24, 0, 48])

MIN_SECOND_ORDER_D = 136
MIN_FIRST_ORDER_D = 136
Q_BOUND = 2281


@dataclass(frozen=True)
class CorrectionPolys:
    p: Poly = P_POLY
    q: Poly = Q_POLY
    r: Poly = R_POLY


@dataclass(frozen=True)
class GaussianEstimate:
    t: Fraction
    g: DyadicInterval


def _enc(t: TLike, bits: int) -> DyadicInterval:
    return enclose(t, bits)


def sqrt6_over_pi(bits: int = DEFAULT_BITS) -> DyadicInterval:
    return interval_sqrt(DyadicInterval.exact(6, bits) / DyadicInterval.pi(bits), bits)


def gaussian_interval(t: TLike, bits: int = DEFAULT_BITS) -> DyadicInterval:
    """Enclosure of G(t) = √(6/π)·e^{−6t²}."""
    x = _enc(t, bits)
    return sqrt6_over_pi(bits) * interval_exp(-(x * x) * 6, bits)


def gaussian(t, bits: int = DEFAULT_BITS) -> GaussianEstimate:
    t = Fraction(t)
    return GaussianEstimate(t, gaussian_interval(t, bits))


def _poly_at(poly: Poly, t: TLike, bits: int) -> DyadicInterval:
    if isinstance(t, (int, Fraction)):
        return DyadicInterval.exact(poly(Fraction(t)).as_fraction(), bits)
    return poly.eval_interval(t, bits)


# -- moments ---------------------------------------------------------------

@lru_cache(maxsize=None)
def t_moment_multiplier(k: int) -> Poly:
    """Integer polynomial M_k with T_k(t) = M_k(t)·T_0(t)."""
    if k < 0:
        raise DomainError("moment index must be non-negative")
    if k == 0:
        return Poly([1])
    if k == 1:
        return Poly([0, 6])
    j = k - 2
    sign = -1 if (j + 1) % 2 else 1
    return t_moment_multiplier(j) * (3 * (j + 1)) + Poly([0, 6 * sign]) * t_moment_multiplier(j + 1)


def t_moment(k: int, t, bits: int = DEFAULT_BITS) -> Tuple[Poly, DyadicInterval]:
    mult = t_moment_multiplier(k)
    return mult, _poly_at(mult, Fraction(t), bits) * gaussian_interval(Fraction(t), bits)


# -- estimates ---------------------------------------------------------------

def second_order_estimate(d: int, t, bits: int = DEFAULT_BITS) -> Tuple[DyadicInterval, DyadicInterval]:
    """(center, radius) with I_d(t) inside center ± radius for d ≥ 136."""
    if d < MIN_SECOND_ORDER_D:
        raise DimensionTooSmall(f"second-order estimate needs d ≥ {MIN_SECOND_ORDER_D}, got {d}")
    t = abs(Fraction(t))
    p, q, r = (poly(t).as_fraction() for poly in (P_POLY, Q_POLY, R_POLY))
    factor = 1 + p / (20 * d) + q / (5600 * d * d)
    center = gaussian_interval(t, bits) * DyadicInterval.exact(factor, bits)
    radius = DyadicInterval.exact(r / (3 * d ** 3), bits)
    return center, radius


def first_order_estimate(d: int, t, bits: int = DEFAULT_BITS) -> Tuple[DyadicInterval, DyadicInterval]:
    """(center, radius) with radius d^{−3/2}, valid for d ≥ 136."""
    if d < MIN_FIRST_ORDER_D:
        raise DimensionTooSmall(f"first-order estimate needs d ≥ {MIN_FIRST_ORDER_D}, got {d}")
    t = abs(Fraction(t))
    factor = 1 - Fraction(3 - 72 * t ** 2 + 144 * t ** 4) / (20 * d)
    center = gaussian_interval(t, bits) * DyadicInterval.exact(factor, bits)
    dd = DyadicInterval.exact(d, bits)
    radius = DyadicInterval.exact(1, bits) / (dd * interval_sqrt(dd, bits))
    return center, radius


def limit_difference(t, bits: int = DEFAULT_BITS) -> DyadicInterval:
    """Enclosure of lim d²(I_{d+1}(t) − I_d(t)) = (3/20)·(1−24t²+48t⁴)·G(t)."""
    return _poly_at(QUARTIC, t, bits) * gaussian_interval(t, bits) * DyadicInterval.exact(Fraction(3, 20), bits)


def quartic_sign(t) -> Sign:
    """Exact sign of 1 − 24t² + 48t⁴ at a rational or quadratic-surd t."""
    if isinstance(t, QuadExtValue):
        return QUARTIC(t).sign()
    return Sign.of(QUARTIC(Fraction(t)).as_fraction())


# -- thresholds --------------------------------------------------------------

class ThresholdKind(Enum):
    MONOTONICITY_DELTA = "MonotonicityDelta"
    EXTREMALITY_N = "ExtremalityN"


_THRESHOLD_DATA: Dict[ThresholdKind, Tuple[int, Poly]] = {
    ThresholdKind.MONOTONICITY_DELTA: (136, Poly([12, 10, 7, 10])),
    ThresholdKind.EXTREMALITY_N: (124, Poly([74, 84])),
}


@dataclass(frozen=True)
class Threshold:
    kind: ThresholdKind
    t: Fraction
    value: DyadicInterval
    ceiling: int


def threshold_interval(kind: ThresholdKind, t: TLike, bits: int = DEFAULT_BITS) -> DyadicInterval:
    """max{floor, e^{6t²}·num(t)/|quartic(t)|} over an interval or point."""
    floor_value, num = _THRESHOLD_DATA[kind]
    x = _enc(t, bits)
    den = abs(_poly_at(QUARTIC, t, bits))
    if den.sign() is None or den.sign() == 0:
        raise AtSingularity("threshold undefined: quartic vanishes or is not bounded away from 0")
    raw = interval_exp(x * x * 6, bits) * _poly_at(num, t, bits) / den
    return raw.max(DyadicInterval.exact(floor_value, bits))


def threshold(kind: ThresholdKind, t, bits: int = DEFAULT_BITS) -> Threshold:
    t = Fraction(t)
    if t < 0:
        raise DomainError("threshold needs t ≥ 0")
    if quartic_sign(t) == Sign.ZERO:
        raise AtSingularity(f"t={t} is a root of 1 − 24t² + 48t⁴")
    value = threshold_interval(kind, t, bits)
    return Threshold(kind, t, value, ceil(value.hi))


# -- transcendental roots ------------------------------------------------------

def _beta_fn(x: DyadicInterval, bits: int) -> DyadicInterval:
    x2 = x * x
    lhs = (interval_sqrt(2 - 4 * x2, bits) - 2 * x) / (1 - 4 * x2)
    return lhs - gaussian_interval(x, bits)


def _alpha2inf_fn(x: DyadicInterval, bits: int) -> DyadicInterval:
    return interval_sqrt(DyadicInterval.exact(2, bits), bits) - 2 * x - gaussian_interval(x, bits)


def _alpha3inf_fn(x: DyadicInterval, bits: int) -> DyadicInterval:
    s3 = interval_sqrt(DyadicInterval.exact(3, bits), bits)
    return s3 * Fraction(3, 4) - s3 * 3 * x * x - gaussian_interval(x, bits)


TRANSCENDENTAL_EQUATIONS: Dict[str, Tuple[Callable, Tuple[Fraction, Fraction], str]] = {
    "beta_minus": (_beta_fn, (Fraction(1, 100), Fraction(1, 20)), "(√(2−4t²)−2t)/(1−4t²) = √(6/π)e^{−6t²}"),
    "beta_plus": (_beta_fn, (Fraction(1, 10), Fraction(1, 5)), "(√(2−4t²)−2t)/(1−4t²) = √(6/π)e^{−6t²}"),
    "alpha2inf_minus": (_alpha2inf_fn, (Fraction(1, 100), Fraction(1, 20)), "√2 − 2t = √(6/π)e^{−6t²}"),
    "alpha2inf_circ": (_alpha2inf_fn, (Fraction(1, 4), Fraction(1, 3)), "√2 − 2t = √(6/π)e^{−6t²}"),
    "alpha3inf_minus": (_alpha3inf_fn, (Fraction(3, 20), Fraction(1, 4)), "3√3/4 − 3√3t² = √(6/π)e^{−6t²}"),
}


def transcendental_root(name: str, bracket: Optional[Tuple[object, object]] = None,
                        width=Fraction(1, 10**8)) -> IsolatingInterval:
    """Certified bracket of a root of one of the named transcendental equations."""
    try:
        fn, default, _ = TRANSCENDENTAL_EQUATIONS[name]
    except KeyError:
        raise DomainError(f"unknown equation {name!r}") from None
    lo, hi = (Fraction(x) for x in (bracket or default))

    def g(x: Fraction, bits: int) -> DyadicInterval:
        return fn(DyadicInterval.exact(x, bits), bits)

    return certified_bisection(g, lo, hi, width)


# -- global bound checks ---------------------------------------------------------

@dataclass(frozen=True)
class BoundCheck:
    passed: bool
    max_upper: Fraction
    witness: Optional[Tuple[Fraction, Fraction]] = None
    cells: int = 0


def _q_envelope(a: Fraction, b: Fraction, bits: int) -> DyadicInterval:
    x = DyadicInterval.hull(a, b, bits)
    return abs(Q_POLY.eval_interval(x, bits)) * interval_exp(-(x * x) * 6, bits)


def q_bound_check(step=Fraction(1, 1000), upper=Fraction(10), bound=Q_BOUND,
                  bits: int = 64, max_depth: int = 30) -> BoundCheck:
    """Verify |q(t)|·e^{−6t²} ≤ bound for all t ≥ 0.

    Interval evaluation on cells of width ``step`` over [0, upper], bisecting
    any cell whose enclosure is inconclusive; the tail t ≥ upper is handled
    by monotonic decay of t⁸e^{−6t²}.
    """
    step, upper = Fraction(step), Fraction(upper)
    stack: List[Tuple[Fraction, Fraction, int]] = []
    n = int(upper / step)
    for k in range(n - 1, -1, -1):
        stack.append((k * step, (k + 1) * step, 0))
    worst = Fraction(0)
    cells = 0
    while stack:
        a, b, depth = stack.pop()
        cells += 1
        env = _q_envelope(a, b, bits)
        if env.hi <= bound:
            worst = max(worst, env.hi)
            continue
        if env.lo > bound or depth >= max_depth:
            return BoundCheck(False, env.hi, (a, b), cells)
        m = (a + b) / 2
        stack.append((m, b, depth + 1))
        stack.append((a, m, depth + 1))
    tail = tail_q_bound(upper, bits)
    if tail.hi > bound:
        return BoundCheck(False, tail.hi, (upper, upper), cells)
    return BoundCheck(True, max(worst, tail.hi), None, cells)


def tail_q_bound(upper=Fraction(10), bits: int = 64) -> DyadicInterval:
    """Upper envelope for t ≥ upper ≥ 1: Σ|coefficients|·t⁸e^{−6t²} at t = upper."""
    upper = Fraction(upper)
    if upper < 1:
        raise DomainError("tail bound needs upper ≥ 1")
    total = sum(abs(c.as_fraction()) for c in Q_POLY.coefficients)
    x = DyadicInterval.exact(upper, bits)
    return DyadicInterval.exact(total, bits) * x ** 8 * interval_exp(-(x * x) * 6, bits)


def eulerian_bound(d: int, bits: int = DEFAULT_BITS) -> DyadicInterval:
    """Enclosure of 7·e^{12/√d}/√(πd)."""
    if d < 2:
        raise DomainError("eulerian bound needs d ≥ 2")
    dd = DyadicInterval.exact(d, bits)
    sd = interval_sqrt(dd, bits)
    return 7 * interval_exp(12 / sd, bits) / interval_sqrt(DyadicInterval.pi(bits) * dd, bits)
