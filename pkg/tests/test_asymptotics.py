from __future__ import annotations

import random
from fractions import Fraction
from math import exp, pi, sqrt

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubesections.asymptotics import (
    P_POLY,
    Q_POLY,
    QUARTIC,
    R_POLY,
    ThresholdKind,
    _q_envelope,
    eulerian_bound,
    first_order_estimate,
    gaussian_interval,
    limit_difference,
    q_bound_check,
    quartic_sign,
    second_order_estimate,
    t_moment,
    t_moment_multiplier,
    tail_q_bound,
    threshold,
    threshold_interval,
    transcendental_root,
)
from cubesections.errors import AtSingularity, DimensionTooSmall
from cubesections.numeric.interval import DyadicInterval
from cubesections.numeric.poly import Poly
from cubesections.quadrature import QuadratureConfig, section_volume
from cubesections.sections import eval_exact

GAMMA_MINUS = sqrt(1 - sqrt(2 / 3)) / 2
GAMMA_PLUS = sqrt(1 + sqrt(2 / 3)) / 2


def _mp(x: Fraction) -> mpmath.mpf:
    return mpmath.mpf(x.numerator) / x.denominator


def test_correction_polynomials():
    assert P_POLY == Poly([-3, 0, 72, 0, -144])
    assert Q_POLY == Poly([-65, 0, -6480, 0, 96480, 0, -246528, 0, 145152])
    assert R_POLY == Poly([2, 3, 2, 3])


# -- moments -------------------------------------------------------------------------

def test_zeroth_moment_at_zero():
    mult, value = t_moment(0, 0)
    assert mult == Poly([1])
    with mpmath.workdps(50):
        assert _mp(value.lo) <= mpmath.sqrt(6 / mpmath.pi) <= _mp(value.hi)
    assert round(float(value), 7) == 1.3819766


def test_fourth_and_sixth_moment_multipliers():
    assert t_moment_multiplier(4) == QUARTIC * 27
    assert t_moment_multiplier(6) == Poly([5, 0, -180, 0, 720, 0, -576]) * 81
    assert t_moment_multiplier(1) == Poly([0, 6])


@settings(max_examples=20, deadline=None)
@given(st.fractions(min_value=0, max_value=2, max_denominator=50))
def test_moment_recursion_holds_pointwise(t):
    for k in range(5):
        lhs = t_moment_multiplier(k + 2)(t)
        sign = -1 if (k + 1) % 2 else 1
        rhs = t_moment_multiplier(k)(t) * (3 * (k + 1)) + t_moment_multiplier(k + 1)(t) * (6 * t * sign)
        assert lhs == rhs


# -- estimates -----------------------------------------------------------------------

def test_second_order_at_136():
    center, radius = second_order_estimate(136, 0)
    factor = 1 - Fraction(3, 2720) - Fraction(65, 5600 * 136**2)
    expected = gaussian_interval(0) * DyadicInterval.exact(factor)
    assert center.contains(expected.mid)
    assert radius.contains(Fraction(2, 3 * 136**3))


def test_second_order_needs_136():
    with pytest.raises(DimensionTooSmall):
        second_order_estimate(135, 0)
    with pytest.raises(DimensionTooSmall):
        first_order_estimate(100, 0)


def test_second_order_contains_quadrature_at_200():
    center, radius = second_order_estimate(200, 0)
    q = section_volume(200, 0, QuadratureConfig(abs_tol=1e-13))
    assert abs(q - float(center)) <= float(radius.hi)


def test_second_order_far_out_is_zero():
    center, radius = second_order_estimate(136, 10)
    assert eval_exact(136, 10).value.is_zero()
    assert abs(center).hi < radius.lo


def test_first_order_at_136():
    center, radius = first_order_estimate(136, 0)
    assert center.contains((gaussian_interval(0) * DyadicInterval.exact(1 - Fraction(3, 2720))).mid)
    assert abs(float(radius) - 136 ** -1.5) < 1e-15


def test_first_order_holds_exactly_at_1000():
    t = Fraction(3, 10)
    center, radius = first_order_estimate(1000, t)
    value = eval_exact(1000, t).enclosure()
    assert (value - center).certainly_lt(radius) and (center - value).certainly_lt(radius)


def test_first_order_past_the_vertex():
    t = Fraction(5831, 1000)  # just beyond √136/2 ≈ 5.83095
    assert eval_exact(136, t).value.is_zero()
    center, radius = first_order_estimate(136, t)
    assert abs(center).certainly_lt(radius)


# -- the limit of d²(I_{d+1} − I_d) ---------------------------------------------------

def test_limit_at_zero():
    assert abs(float(limit_difference(0)) - 3 * sqrt(6) / (20 * sqrt(pi))) < 1e-15
    assert abs(float(limit_difference(0)) - 0.207297) < 1e-6


def test_limit_at_one_half():
    # 3√6·(1 − 6 + 3)/(20√π·e^{3/2})
    expected = 3 * sqrt(6) * (1 - 6 + 3) / (20 * sqrt(pi) * exp(1.5))
    assert abs(float(limit_difference(Fraction(1, 2))) - expected) < 1e-15
    assert round(expected, 4) == -0.0925


def test_limit_vanishes_at_gamma_minus():
    lo, hi = Fraction(GAMMA_MINUS - 1e-12), Fraction(GAMMA_MINUS + 1e-12)
    assert limit_difference(lo).sign() * limit_difference(hi).sign() == -1


@pytest.mark.parametrize("k", range(0, 101))
def test_limit_sign_follows_the_quartic(k):
    t = Fraction(k, 100)
    s = limit_difference(t).sign()
    assert s == int(quartic_sign(t))
    assert (s > 0) == (t < Fraction(GAMMA_MINUS) or t > Fraction(GAMMA_PLUS))


# -- thresholds ---------------------------------------------------------------------

def test_threshold_values():
    assert threshold(ThresholdKind.MONOTONICITY_DELTA, 0).ceiling == 136
    assert threshold(ThresholdKind.EXTREMALITY_N, Fraction(1, 10)).ceiling == 124
    raw = exp(6 * 0.1**2) * (74 + 84 * 0.1) / abs(1 - 24 * 0.01 + 48 * 0.0001)
    assert abs(raw - 114.4) < 0.1


def test_threshold_near_gamma_minus():
    th = threshold(ThresholdKind.MONOTONICITY_DELTA, Fraction(21, 100))
    t = 0.21
    expected = exp(6 * t * t) * (12 + 10 * t + 7 * t * t + 10 * t**3) / abs(1 - 24 * t * t + 48 * t**4)
    assert abs(float(th.value) - expected) < 1e-9
    assert th.ceiling == 541


def test_threshold_singularity():
    around = DyadicInterval.hull(Fraction(GAMMA_MINUS) - Fraction(1, 10**6), Fraction(GAMMA_MINUS) + Fraction(1, 10**6))
    with pytest.raises(AtSingularity):
        threshold_interval(ThresholdKind.MONOTONICITY_DELTA, around)


def test_threshold_ceiling_uses_upper_end():
    for t in (Fraction(1, 7), Fraction(3, 10), Fraction(7, 10)):
        th = threshold(ThresholdKind.EXTREMALITY_N, t)
        assert th.ceiling >= th.value.hi


@pytest.mark.parametrize("window", [(0.0, GAMMA_MINUS - 1e-3), (GAMMA_MINUS + 1e-3, GAMMA_PLUS - 1e-3), (GAMMA_PLUS + 1e-3, 1.0)])
def test_monotonicity_threshold_is_midpoint_convex(window):
    rng = random.Random(20240)
    delta = lambda x: float(threshold_interval(ThresholdKind.MONOTONICITY_DELTA, Fraction(x)).hi)
    for _ in range(100):
        a, b = sorted(rng.uniform(*window) for _ in range(2))
        assert delta((a + b) / 2) <= (delta(a) + delta(b)) / 2 * (1 + 1e-12)


# -- transcendental roots and global bounds ----------------------------------------------

@pytest.mark.parametrize("name,lo,hi", [
    ("beta_minus", "0.0181611", "0.0181612"),
    ("alpha2inf_circ", "0.290166", "0.290167"),
    ("alpha3inf_minus", "0.192472", "0.192473"),
])
def test_transcendental_roots(name, lo, hi):
    iv = transcendental_root(name)
    assert Fraction(lo) < iv.lo and iv.hi < Fraction(hi)


def test_q_bound_near_zero():
    assert _q_envelope(Fraction(0), Fraction(1, 1000), 64).hi <= 66


def test_q_tail_is_negligible():
    assert tail_q_bound(10).hi < 1


def test_q_bound_full_check():
    report = q_bound_check()
    assert report.passed
    assert report.max_upper <= 2281


def test_eulerian_bound_values():
    assert abs(float(eulerian_bound(1000)) - 0.1825) < 5e-5
    big = float(eulerian_bound(10**6))
    assert abs(big - 7 * exp(0.012) / sqrt(pi * 10**6)) < 1e-15
    assert abs(big / (7 / sqrt(pi * 10**6)) - 1) < 0.02
    assert abs(float(eulerian_bound(4)) - 7 * exp(6) / sqrt(4 * pi)) < 1e-9  # 796.64
