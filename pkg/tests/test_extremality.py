from __future__ import annotations

from fractions import Fraction
from math import sqrt

import mpmath
import pytest

from cubesections.asymptotics import ThresholdKind, threshold
from cubesections.errors import DomainError, FaceTooSmall
from cubesections.extremality import (
    Verdict,
    classify,
    r_sum,
    s_sum,
    sweep_classify,
    verdict_from_signs,
)
from cubesections.numeric.poly import Poly
from cubesections.numeric.quadext import QuadExtValue, Sign
from cubesections.numeric.roots import isolate_roots, refine
from cubesections.quadrature import integrate_rs

F = Fraction
GAMMA_MINUS = sqrt(1 - sqrt(2 / 3)) / 2
GAMMA_PLUS = sqrt(1 + sqrt(2 / 3)) / 2


def _sign(x: float) -> Sign:
    return Sign.POSITIVE if x > 0 else Sign.NEGATIVE


# -- the sums ------------------------------------------------------------------------

def test_r_at_the_centre_of_the_five_cube():
    assert r_sum(5, 0) == QuadExtValue(F(-5, 16))
    assert s_sum(5, 0) == QuadExtValue(F(5, 32))


def test_r_positive_in_the_minimal_regime():
    assert r_sum(4, F(3, 10)).sign() == Sign.POSITIVE


def test_both_sums_vanish_at_the_tesseract_vertex():
    assert r_sum(4, 1).is_zero() and s_sum(4, 1).is_zero()
    r, s = integrate_rs(4, 4, 1.0)
    assert abs(r) < 1e-9 and abs(s) < 1e-9


def test_s_vanishes_for_n_four_at_the_centre():
    assert s_sum(4, 0) == QuadExtValue(0)


@pytest.mark.parametrize("n", [10, 20, 40])
@pytest.mark.parametrize("t", ["0.3", "0.4", "0.6"])
def test_r_and_s_have_opposite_signs_between_the_gammas(n, t):
    t = F(t)
    assert GAMMA_MINUS < t < GAMMA_PLUS
    assert r_sum(n, t).sign() == Sign.POSITIVE
    assert s_sum(n, t).sign() == Sign.NEGATIVE
    r, s = integrate_rs(n, n, float(t))
    assert r > 0 > s


def test_face_too_small():
    with pytest.raises(FaceTooSmall):
        r_sum(3, 0)
    with pytest.raises(FaceTooSmall):
        classify(3, 5, 0)
    with pytest.raises(DomainError):
        classify(6, 5, 0)


@pytest.mark.parametrize("n", range(4, 41))
@pytest.mark.parametrize("t", [0.0, 0.1, 0.3, 0.5])
def test_sum_signs_agree_with_quadrature(n, t):
    r, s = integrate_rs(n, n, t)
    if abs(r) > 1e-6:
        assert r_sum(n, F(t)).sign() == _sign(r)
    if abs(s) > 1e-6:
        assert s_sum(n, F(t)).sign() == _sign(s)


def _face_scan():
    for n in range(4, 13):
        for d in range(n + 1, n + 6):
            for t in (0.1, 0.2, 0.3, 0.45, 0.6):
                yield n, d, t


def test_proper_faces_use_face_coordinates():
    # With cos(2√d·t·u) taken literally the sums disagree with the integrals
    # for some proper faces; measuring t in face units (frequency 2√n·t) they
    # always agree.
    literal_misses, rescaled_misses = [], []
    for n, d, t in _face_scan():
        signs = (r_sum(n, F(t)).sign(), s_sum(n, F(t)).sign())
        literal = integrate_rs(n, d, t)
        rescaled = integrate_rs(n, d, t * sqrt(n / d))
        for k in range(2):
            if abs(literal[k]) > 1e-6 and _sign(literal[k]) != signs[k]:
                literal_misses.append((n, d, t, k))
            if abs(rescaled[k]) > 1e-6 and _sign(rescaled[k]) != signs[k]:
                rescaled_misses.append((n, d, t, k))
    assert rescaled_misses == []
    assert literal_misses


# -- verdicts ----------------------------------------------------------------------

def test_verdict_table():
    P, N, Z = Sign.POSITIVE, Sign.NEGATIVE, Sign.ZERO
    assert verdict_from_signs(5, 5, N, P) == Verdict.STRICT_LOCAL_MAX
    assert verdict_from_signs(5, 5, P, N) == Verdict.STRICT_LOCAL_MIN
    assert verdict_from_signs(5, 5, Z, P) == Verdict.INCONCLUSIVE
    assert verdict_from_signs(5, 7, N, N) == Verdict.STRICT_LOCAL_MAX
    assert verdict_from_signs(5, 7, P, P) == Verdict.STRICT_LOCAL_MIN
    assert verdict_from_signs(5, 7, P, N) == Verdict.NOT_EXTREMAL
    assert verdict_from_signs(5, 7, P, Z) == Verdict.INCONCLUSIVE


def test_classify_examples():
    assert classify(5, 5, 0).verdict == Verdict.STRICT_LOCAL_MAX
    assert classify(4, 4, F(3, 10)).verdict == Verdict.STRICT_LOCAL_MIN
    assert classify(5, 9, F(3, 10)).verdict == Verdict.NOT_EXTREMAL


def test_proper_face_of_the_tesseract_at_the_centre_is_inconclusive():
    v = classify(4, 6, 0)
    assert v.s_sign == Sign.ZERO and v.verdict == Verdict.INCONCLUSIVE


def _cube_root_constant():
    # (7 − ∛(17−12√2) − ∛(17+12√2))/24 is the real root of 48t³ − 42t² + 12t − 1
    p = Poly([-1, 12, -42, 48])
    (iv,) = isolate_roots(p, (0, 1))
    return refine(iv, p, F(1, 10**10))


def test_cube_root_constant():
    iv = _cube_root_constant()
    with mpmath.workdps(80):
        r2 = mpmath.sqrt(2)
        closed = (7 - mpmath.cbrt(17 - 12 * r2) - mpmath.cbrt(17 + 12 * r2)) / 24
        assert mpmath.mpf(iv.lo.numerator) / iv.lo.denominator < closed < mpmath.mpf(iv.hi.numerator) / iv.hi.denominator
    assert abs(float(iv) - 0.14385) < 1e-5


def test_tesseract_maximal_below_the_cube_root_constant():
    c = _cube_root_constant()
    for k in range(0, 40):
        t = c.lo * k / 40
        assert classify(4, 4, t).verdict == Verdict.STRICT_LOCAL_MAX
    assert classify(4, 4, c.hi).verdict != Verdict.STRICT_LOCAL_MAX


def test_tesseract_minimal_on_its_window():
    lo, hi = F("0.23593"), F("0.59495")
    for k in range(0, 41):
        assert classify(4, 4, lo + (hi - lo) * k / 40).verdict == Verdict.STRICT_LOCAL_MIN


# -- sweeps ----------------------------------------------------------------------------

def test_sweep_switches_to_the_theorem_above_threshold():
    rep = sweep_classify(F(1, 10), 130)
    assert rep.threshold == 124
    assert {v.method for v in rep.verdicts if v.n <= 124} == {"ExactSum"}
    assert {v.method for v in rep.verdicts if v.n > 124} == {"ByTheorem"}


def test_sweep_in_the_minimal_regime():
    rep = sweep_classify(F(45, 100), 60)
    assert {v.verdict for v in rep.verdicts} == {Verdict.STRICT_LOCAL_MIN}


def test_sweep_with_ambient_dimension():
    rep = sweep_classify(F(45, 100), 8, d=10)
    assert all(v.d == 10 for v in rep.verdicts)
    with pytest.raises(DomainError):
        sweep_classify(F(45, 100), 12, d=10)


@pytest.mark.parametrize("t", ["0.05", "0.1", "0.15"])
def test_explicit_sums_match_the_theorem_below_threshold(t):
    t = F(t)
    n0 = threshold(ThresholdKind.EXTREMALITY_N, t).ceiling
    rep = sweep_classify(t, n0 + 1)
    tail = rep.verdicts[-1]
    assert tail.method == "ByTheorem"
    assert all(v.verdict == tail.verdict for v in rep.verdicts if v.n >= 5)
