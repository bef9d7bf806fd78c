"""Monotonicity of I_d(t) in d: certificates, windows, extrema and constants.

Below the dimension threshold Δ(t) every sign is computed exactly; above it
the sign of I_{d+1}(t) − I_d(t) is the sign of 1 − 24t² + 48t⁴ by the
asymptotic theorem, and certificates built that way say so (ByThreshold).
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import floor, ceil
from typing import Callable, List, Optional, Sequence, Tuple, Union

from .asymptotics import (
    QUARTIC,
    ThresholdKind,
    gaussian_interval,
    quartic_sign,
    threshold,
    threshold_interval,
    transcendental_root,
)
from .errors import (
    AtSingularity,
    DomainError,
    OutsideCoveredRange,
    PrecisionExhausted,
    StraddlesGamma,
)
from .numeric.interval import DyadicInterval, interval_sqrt
from .numeric.poly import Poly
from .numeric.quadext import QuadExtValue, Sign
from .numeric.roots import IsolatingInterval, isolate_roots, refine
from .quadrature import psi1_bracket
from .sections import diff_sign, eval_exact, isolate_crossings

DEFAULT_CAP = 450
CONSTANT_WIDTH = Fraction(1, 10**8)

_S2 = QuadExtValue.sqrt(2)
_S3 = QuadExtValue.sqrt(3)
_S5 = QuadExtValue.sqrt(5)
_S6 = QuadExtValue.sqrt(6)


# -- certificates ---------------------------------------------------------------

class Outcome(Enum):
    ALL_POSITIVE = "AllPositive"
    ALL_NEGATIVE = "AllNegative"
    SIGN_CHANGES = "SignChanges"


class Method(Enum):
    EXACT_SUM = "ExactSum"
    BY_THRESHOLD = "ByThreshold"


@dataclass(frozen=True)
class SignCertificate:
    quantity: str
    d: int
    t_range: Tuple[Fraction, Fraction]
    outcome: Outcome
    method: Method
    roots: Tuple[IsolatingInterval, ...] = ()


def _straddles_gamma(lo: Fraction, hi: Fraction) -> bool:
    if quartic_sign(lo) == Sign.ZERO or quartic_sign(hi) == Sign.ZERO:
        return True
    return bool(isolate_roots(QUARTIC, (lo, hi)))


def certify_sign(d: int, t_range: Tuple[object, object]) -> SignCertificate:
    """Certificate for the sign of I_{d+1}(t) − I_d(t) over a closed t-range."""
    lo, hi = (Fraction(x) for x in t_range)
    if d < 1 or lo < 0 or hi < lo or 4 * hi * hi > d + 1:
        raise DomainError("need d ≥ 1 and 0 ≤ lo ≤ hi ≤ √(d+1)/2")
    label = f"I_{{{d + 1}}} - I_{{{d}}}"
    if d >= 136:
        if _straddles_gamma(lo, hi):
            raise StraddlesGamma(f"range [{lo}, {hi}] contains a root of 1 − 24t² + 48t⁴")
        # Δ is convex on each side of γ±, so the endpoint values bound it.
        top = max(threshold(ThresholdKind.MONOTONICITY_DELTA, x).ceiling for x in (lo, hi))
        if top <= d:
            sign = quartic_sign(lo)
            outcome = Outcome.ALL_POSITIVE if sign > 0 else Outcome.ALL_NEGATIVE
            return SignCertificate(label, d, (lo, hi), outcome, Method.BY_THRESHOLD)
    roots = tuple(isolate_crossings(d, (lo, hi)))
    if roots:
        for iv in roots:
            if iv.multiplicity_hint == 1 and diff_sign(d, iv.lo) * diff_sign(d, iv.hi) >= 0:
                raise ArithmeticError(f"crossing interval {iv} failed its sign check")
        return SignCertificate(label, d, (lo, hi), Outcome.SIGN_CHANGES, Method.EXACT_SUM, roots)
    signs = {diff_sign(d, x) for x in (lo, (lo + hi) / 2, hi)} - {Sign.ZERO}
    if len(signs) != 1:
        raise ArithmeticError("inconsistent signs on a range without crossings")
    outcome = Outcome.ALL_POSITIVE if signs.pop() > 0 else Outcome.ALL_NEGATIVE
    return SignCertificate(label, d, (lo, hi), outcome, Method.EXACT_SUM)


# -- monotonicity windows --------------------------------------------------------------

class WindowVerdict(Enum):
    STRICTLY_INCREASING_ALL_D = "StrictlyIncreasingAllD"
    STRICTLY_DECREASING_ALL_D = "StrictlyDecreasingAllD"
    EVENTUALLY_MONOTONE = "EventuallyMonotone"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class MonotonicityWindow:
    t: Fraction
    verdict: WindowVerdict
    d0: Optional[int]
    threshold: int
    tail_sign: Sign
    exceptions: Tuple[int, ...] = ()


def _diff_signs(ds: Sequence[int], t: Fraction, workers: int) -> List[Sign]:
    if workers > 1 and len(ds) > 32:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(diff_sign, ds, [t] * len(ds), chunksize=16))
    return [diff_sign(d, t) for d in ds]


def monotonicity_window(t, cap: int = DEFAULT_CAP, workers: int = 1) -> MonotonicityWindow:
    """Is d ↦ I_d(t) monotone over all positive integers d?

    Signs are computed exactly for 1 ≤ d < ⌈Δ(t)⌉; the tail follows from the
    threshold theorem.  Beyond ``cap`` the verdict is Unknown.
    """
    t = abs(Fraction(t))
    if quartic_sign(t) == Sign.ZERO:
        raise AtSingularity(f"t={t} is a root of 1 − 24t² + 48t⁴")
    n0 = threshold(ThresholdKind.MONOTONICITY_DELTA, t).ceiling
    tail = quartic_sign(t)
    if n0 > cap:
        return MonotonicityWindow(t, WindowVerdict.UNKNOWN, None, n0, tail)
    ds = list(range(1, n0))
    signs = _diff_signs(ds, t, workers)
    bad = tuple(d for d, s in zip(ds, signs) if s != tail)
    if not bad:
        verdict = (WindowVerdict.STRICTLY_INCREASING_ALL_D if tail > 0
                   else WindowVerdict.STRICTLY_DECREASING_ALL_D)
        return MonotonicityWindow(t, verdict, 1, n0, tail)
    return MonotonicityWindow(t, WindowVerdict.EVENTUALLY_MONOTONE, bad[-1] + 1, n0, tail, bad)


# -- named constants -------------------------------------------------------------------

class ConstantMethod(Enum):
    POLY_ROOT = "PolyRoot"
    TRANSCENDENTAL = "Transcendental"
    CLOSED_FORM = "ClosedForm"


@dataclass(frozen=True)
class NamedConstant:
    name: str
    interval: IsolatingInterval
    reference_bracket: Tuple[Fraction, Fraction]
    method: ConstantMethod
    definition: str

    @property
    def inside_bracket(self) -> bool:
        lo, hi = self.reference_bracket
        return lo < self.interval.lo and self.interval.hi < hi


def _poly(*coeffs) -> Poly:
    return Poly(coeffs)


GAMMA_POLY = QUARTIC
ALPHA23_MINUS_POLY = _poly(_S3 * Fraction(3, 4) - _S2, 2, _S3 * -3)
# √2 − 2t = (√3/2)(3/2 − √3t)²  on the outer pieces
ALPHA23_PLUS_POLY = Poly([Fraction(3, 2), -_S3]) ** 2 * (_S3 / 2) - Poly([_S2, -2])
ALPHA13_POLY = _poly(_S3 * Fraction(3, 4) - 1, 0, _S3 * -3)
ALPHA34_MINUS_POLY = _poly(16 - 9 * _S3, 0, -12 * (8 - 3 * _S3), 96)
ALPHA34_CIRC_POLY = _poly(32 - 27 * _S3, 108, -12 * (16 + 3 * _S3), 192)
ALPHA34_PLUS_POLY = _poly(64 - 27 * _S3, -84, 12 * (16 - 3 * _S3), -64)
DELTA_POLY = _poly(
    575 * _S5 - 528 * _S6, 0, -120 * (25 * _S5 - 24 * _S6), 0, 240 * (25 * _S5 - 36 * _S6), 17280
)


def _closed_form_bracket(enc: DyadicInterval, poly: Poly, width: Fraction) -> IsolatingInterval:
    """Round a tight enclosure outward to a short rational interval and check
    that the defining polynomial changes sign across it."""
    scale = int(1 / width)
    lo = Fraction(floor(enc.lo * scale), scale)
    hi = Fraction(ceil(enc.hi * scale), scale)
    if lo == hi:
        lo, hi = lo - Fraction(1, scale), hi + Fraction(1, scale)
    if poly(lo).sign() * poly(hi).sign() >= 0:
        raise ArithmeticError("closed form and defining polynomial disagree")
    return IsolatingInterval(lo, hi)


def _sqrt(x: DyadicInterval) -> DyadicInterval:
    return interval_sqrt(x, x.precision_bits)


def _closed_forms(bits: int = 128):
    two, three, six = (DyadicInterval.exact(k, bits) for k in (2, 3, 6))
    s2, s3, s6 = _sqrt(two), _sqrt(three), _sqrt(six)
    r23 = _sqrt(two / three)
    return {
        "gamma_minus": _sqrt(1 - r23) / 2,
        "gamma_plus": _sqrt(1 + r23) / 2,
        "alpha23_minus": (2 - _sqrt(31 - 12 * s6)) / (6 * s3),
        "alpha23_plus": (5 + 2 * _sqrt(6 * s6 - 14)) / (6 * s3),
        "alpha13": _sqrt(9 - 4 * s3) / 6,
    }


def _poly_root(poly: Poly, domain: Tuple[Fraction, Fraction], width: Fraction) -> IsolatingInterval:
    roots = isolate_roots(poly, domain)
    if len(roots) != 1:
        raise ArithmeticError(f"expected one root in {domain}, found {len(roots)}")
    return refine(roots[0], poly, width)


_F = Fraction

# name, published bracket, method, definition
CONSTANT_TABLE = (
    ("gamma_minus", (_F("0.2141"), _F("0.2142")), ConstantMethod.CLOSED_FORM, "½√(1−√(2/3)), root of 1−24t²+48t⁴"),
    ("gamma_plus", (_F("0.6738"), _F("0.6739")), ConstantMethod.CLOSED_FORM, "½√(1+√(2/3)), root of 1−24t²+48t⁴"),
    ("alpha23_minus", (_F("0.0705012"), _F("0.0705013")), ConstantMethod.CLOSED_FORM, "(2−√(31−12√6))/(6√3)"),
    ("alpha23_plus", (_F("0.641788"), _F("0.641789")), ConstantMethod.CLOSED_FORM, "(5+2√(6√6−14))/(6√3)"),
    ("alpha34_minus", (_F("0.144137"), _F("0.144138")), ConstantMethod.POLY_ROOT, "16−9√3−12(8−3√3)t²+96t³"),
    ("alpha34_circ", (_F("0.407452"), _F("0.407453")), ConstantMethod.POLY_ROOT, "32−27√3+108t−12(16+3√3)t²+192t³"),
    ("alpha34_plus", (_F("0.697308"), _F("0.697309")), ConstantMethod.POLY_ROOT, "64−27√3−84t+12(16−3√3)t²−64t³"),
    ("alpha13", (_F("0.239895"), _F("0.239896")), ConstantMethod.CLOSED_FORM, "√(9−4√3)/6"),
    ("delta", (_F("0.222924"), _F("0.222925")), ConstantMethod.POLY_ROOT,
     "575√5−528√6−120(25√5−24√6)t²+240(25√5−36√6)t⁴+17280t⁵"),
    ("beta_minus", (_F("0.0181611"), _F("0.0181612")), ConstantMethod.TRANSCENDENTAL, "(√(2−4t²)−2t)/(1−4t²) = √(6/π)e^{−6t²}"),
    ("beta_plus", (_F("0.165625"), _F("0.165626")), ConstantMethod.TRANSCENDENTAL, "(√(2−4t²)−2t)/(1−4t²) = √(6/π)e^{−6t²}"),
    ("alpha2inf_minus", (_F("0.0173679"), _F("0.017368")), ConstantMethod.TRANSCENDENTAL, "√2−2t = √(6/π)e^{−6t²}"),
    ("alpha2inf_circ", (_F("0.290166"), _F("0.290167")), ConstantMethod.TRANSCENDENTAL, "√2−2t = √(6/π)e^{−6t²}"),
    ("alpha3inf_minus", (_F("0.192472"), _F("0.192473")), ConstantMethod.TRANSCENDENTAL, "3√3/4−3√3t² = √(6/π)e^{−6t²}"),
    ("psi1", (_F("0.9832"), _F("0.9833")), ConstantMethod.TRANSCENDENTAL, "u in (0, π) with sin u/u = e^{−1/6}"),
)

_POLY_DOMAINS = {
    "alpha34_minus": (ALPHA34_MINUS_POLY, (_F(1, 10), _F(1, 5))),
    "alpha34_circ": (ALPHA34_CIRC_POLY, (_F(2, 5), _F(9, 20))),
    "alpha34_plus": (ALPHA34_PLUS_POLY, (_F(13, 20), _F(3, 4))),
    "delta": (DELTA_POLY, (_F(1, 5), _F(1, 4))),
}

_CLOSED_POLYS = {
    "gamma_minus": GAMMA_POLY,
    "gamma_plus": GAMMA_POLY,
    "alpha23_minus": ALPHA23_MINUS_POLY,
    "alpha23_plus": ALPHA23_PLUS_POLY,
    "alpha13": ALPHA13_POLY,
}


def named_constant(name: str, width: Fraction = CONSTANT_WIDTH) -> NamedConstant:
    for entry_name, bracket, method, definition in CONSTANT_TABLE:
        if entry_name == name:
            break
    else:
        raise DomainError(f"unknown constant {name!r}")
    if method is ConstantMethod.CLOSED_FORM:
        iv = _closed_form_bracket(_closed_forms()[name], _CLOSED_POLYS[name], width)
    elif method is ConstantMethod.POLY_ROOT:
        poly, domain = _POLY_DOMAINS[name]
        iv = _poly_root(poly, domain, width)
    elif name == "psi1":
        iv = psi1_bracket(width)
    else:
        iv = transcendental_root(name, width=width)
    return NamedConstant(name, iv, bracket, method, definition)


def named_constants(width: Fraction = CONSTANT_WIDTH) -> List[NamedConstant]:
    return [named_constant(name, width) for name, *_ in CONSTANT_TABLE]


# -- sup / inf over d --------------------------------------------------------------------

COVER_LOW_END = Fraction("0.20916")
COVER_HIGH_END = Fraction("0.64607")


class ExtremumKind(Enum):
    ATTAINED_AT = "AttainedAt"
    GAUSSIAN_LIMIT = "GaussianLimit"


@dataclass(frozen=True)
class Extremum:
    kind: ExtremumKind
    d: Optional[int] = None

    def __str__(self) -> str:
        return f"AttainedAt({self.d})" if self.kind is ExtremumKind.ATTAINED_AT else "GaussianLimit"


@dataclass(frozen=True)
class SupInfReport:
    t: Fraction
    sup: Extremum
    inf: Extremum
    sup_value: Union[QuadExtValue, DyadicInterval]
    inf_value: Union[QuadExtValue, DyadicInterval]
    regime: str
    tail_verified_to: Optional[int] = None
    values: Tuple[QuadExtValue, ...] = field(default=(), repr=False)


def _above_delta(t: Fraction) -> bool:
    """Exact test t > δ."""
    poly, domain = _POLY_DOMAINS["delta"]
    iv = named_constant("delta").interval
    if t <= iv.lo:
        return False
    if t >= iv.hi:
        return True
    return poly(t).sign() == poly(iv.hi).sign()


def _compare_with_gaussian(value: QuadExtValue, t: Fraction, max_bits: int = 4096) -> int:
    """Sign of value − G(t), by interval evaluation at rising precision."""
    bits = 128
    while bits <= max_bits:
        diff = value.enclosure(bits) - gaussian_interval(t, bits)
        s = diff.sign()
        if s is not None and s != 0:
            return s
        bits *= 2
    raise PrecisionExhausted(f"cannot separate I_d(t) from the Gaussian limit at t={t}")


def _best(values: Sequence[QuadExtValue], better: Callable[[int], bool]) -> int:
    """Index of the extreme value; ties resolve to the smallest d."""
    k = 0
    for j in range(1, len(values)):
        if better(int((values[j] - values[k]).sign())):
            k = j
    return k


def sup_inf(t, verify_tail: bool = False, cap: int = DEFAULT_CAP) -> SupInfReport:
    """Which d attains sup_d I_d(t) and inf_d I_d(t), or whether it is the Gaussian limit.

    Covered t: [0, 0.20916] ∪ (δ, 0.64607].  There I_d(t) is monotone for
    d ≥ 5, so I_1..I_5 and the limit are the only candidates.
    """
    t = abs(Fraction(t))
    if t <= COVER_LOW_END:
        increasing = True
    elif t <= COVER_HIGH_END and _above_delta(t):
        increasing = False
    else:
        raise OutsideCoveredRange(f"t={t} lies outside [0, 0.20916] ∪ (δ, 0.64607]")
    values = tuple(eval_exact(d, t).value for d in range(1, 6))
    i_max = _best(values, lambda s: s > 0)
    i_min = _best(values, lambda s: s < 0)
    g = gaussian_interval(t)
    if increasing:
        # Tail I_5 < I_6 < ... ↑ G: the limit competes for the sup only.
        head_max = values[i_max]
        if _compare_with_gaussian(head_max, t) > 0:
            sup, sup_value = Extremum(ExtremumKind.ATTAINED_AT, i_max + 1), head_max
        else:
            sup, sup_value = Extremum(ExtremumKind.GAUSSIAN_LIMIT), g
        inf, inf_value = Extremum(ExtremumKind.ATTAINED_AT, i_min + 1), values[i_min]
    else:
        head_min = values[i_min]
        if _compare_with_gaussian(head_min, t) < 0:
            inf, inf_value = Extremum(ExtremumKind.ATTAINED_AT, i_min + 1), head_min
        else:
            inf, inf_value = Extremum(ExtremumKind.GAUSSIAN_LIMIT), g
        sup, sup_value = Extremum(ExtremumKind.ATTAINED_AT, i_max + 1), values[i_max]
    verified = None
    if verify_tail:
        verified = _verify_tail(t, increasing, cap)
    regime = "increasing for d ≥ 5" if increasing else "decreasing for d ≥ 5"
    return SupInfReport(t, sup, inf, sup_value, inf_value, regime, verified, values)


def _verify_tail(t: Fraction, increasing: bool, cap: int) -> Optional[int]:
    """Exactly confirm the d ≥ 5 monotonicity up to the threshold (or the cap)."""
    try:
        top = threshold(ThresholdKind.MONOTONICITY_DELTA, t).ceiling
    except AtSingularity:
        top = cap
    top = min(top, cap)
    want = Sign.POSITIVE if increasing else Sign.NEGATIVE
    for d in range(5, top):
        if diff_sign(d, t) != want:
            raise ArithmeticError(f"monotone tail fails at d={d}, t={t}")
    return top
