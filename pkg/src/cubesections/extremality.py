"""Local extremality of diagonal sections through n-faces.

The signs of the two criterion integrals r and s are read off from exact
finite sums in ℚ(√n), with z = n/2 − t√n:

    r ~ Σ (−1)^i C(n,i) [i(n−i)/(n−1) − (n/2−i)(z−i)/(n−2) + 2n(z−i)²/((n−1)(n−2))] (z−i)^{n−3}
    s ~ Σ (−1)^i C(n,i) [n/12      − (n/2−i)(z−i)/(n−2) +  n(z−i)²/((n−1)(n−2))] (z−i)^{n−3}
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import comb
from typing import List, Optional

from .asymptotics import ThresholdKind, quartic_sign, threshold
from .errors import DomainError, FaceTooSmall
from .numeric.quadext import QuadExtValue, Sign
from .sections import floor_z, pow_surd


class Verdict(Enum):
    STRICT_LOCAL_MAX = "StrictLocalMax"
    STRICT_LOCAL_MIN = "StrictLocalMin"
    NOT_EXTREMAL = "NotExtremal"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class ExtremalityVerdict:
    n: int
    d: int
    t: Fraction
    r_sign: Sign
    s_sign: Sign
    verdict: Verdict
    method: str = "ExactSum"


def _check_n(n: int) -> None:
    if n < 4:
        raise FaceTooSmall(f"the criterion needs n ≥ 4, got {n}")


def _criterion_sum(n: int, t, c0_of_i, c2: Fraction) -> QuadExtValue:
    _check_n(n)
    t = abs(Fraction(t))
    top = floor_z(n, t)
    if top < 0:
        return QuadExtValue()
    p, q = t.numerator, t.denominator
    # z − i = w_i / (2q) with w_i = (n − 2i)q − 2p√n
    sx = [Fraction(0)] * 3
    sy = [Fraction(0)] * 3
    scale = Fraction(1, 2 * q)
    for i in range(top + 1):
        sign = 1 if i % 2 == 0 else -1
        b = comb(n, i) * sign
        coeffs = (c0_of_i(i), -Fraction(n - 2 * i, 2 * (n - 2)), c2)
        for k, c in enumerate(coeffs):
            if not c:
                continue
            x, y = pow_surd((n - 2 * i) * q, -2 * p, n, n - 3 + k)
            w = b * c * scale ** (n - 3 + k)
            sx[k] += w * x
            sy[k] += w * y
    return QuadExtValue(sum(sx), sum(sy), n)


def r_sum(n: int, t) -> QuadExtValue:
    """Exact sum whose sign is the sign of the r integral."""
    return _criterion_sum(n, t, lambda i: Fraction(i * (n - i), n - 1), Fraction(2 * n, (n - 1) * (n - 2)))


def s_sum(n: int, t) -> QuadExtValue:
    """Exact sum whose sign is the sign of the s integral."""
    return _criterion_sum(n, t, lambda i: Fraction(n, 12), Fraction(n, (n - 1) * (n - 2)))


def verdict_from_signs(n: int, d: int, r: Sign, s: Sign) -> Verdict:
    if n == d:
        if r == Sign.ZERO:
            return Verdict.INCONCLUSIVE
        return Verdict.STRICT_LOCAL_MAX if r < 0 else Verdict.STRICT_LOCAL_MIN
    if r == Sign.ZERO or s == Sign.ZERO:
        return Verdict.INCONCLUSIVE
    if r != s:
        return Verdict.NOT_EXTREMAL
    return Verdict.STRICT_LOCAL_MAX if r < 0 else Verdict.STRICT_LOCAL_MIN


def classify(n: int, d: int, t) -> ExtremalityVerdict:
    """Verdict at the diagonal of an n-face of [0,1]^d, at distance t from the centre.

    The sums depend on (n, t) only; d enters through the n = d versus n < d
    case split of the criterion.
    """
    _check_n(n)
    if d < n:
        raise DomainError(f"need n ≤ d, got n={n}, d={d}")
    t = abs(Fraction(t))
    r = r_sum(n, t).sign()
    s = s_sum(n, t).sign()
    return ExtremalityVerdict(n, d, t, r, s, verdict_from_signs(n, d, r, s))


@dataclass(frozen=True)
class SweepReport:
    t: Fraction
    threshold: int
    verdicts: List[ExtremalityVerdict]


def _by_theorem(n: int, d: int, t: Fraction) -> ExtremalityVerdict:
    q = quartic_sign(t)
    r, s = Sign(-q), Sign(q)
    return ExtremalityVerdict(n, d, t, r, s, verdict_from_signs(n, d, r, s), "ByTheorem")


def sweep_classify(t, n_max: int, d: Optional[int] = None) -> SweepReport:
    """Verdicts for 4 ≤ n ≤ n_max.

    With ``d`` unset every face is the whole cube (n = d); otherwise the
    ambient dimension is fixed at ``d``.  Above the dimension threshold the
    verdicts come from the asymptotic sign lemma and are flagged ByTheorem.
    """
    t = abs(Fraction(t))
    if d is not None and d < n_max:
        raise DomainError("ambient dimension must be at least n_max")
    n0 = threshold(ThresholdKind.EXTREMALITY_N, t).ceiling
    out = []
    for n in range(4, n_max + 1):
        dim = n if d is None else d
        if n <= n0:
            out.append(classify(n, dim, t))
        else:
            out.append(_by_theorem(n, dim, t))
    return SweepReport(t, n0, out)
