from __future__ import annotations

from fractions import Fraction
from math import ceil, exp, factorial, pi, sqrt

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubesections.errors import DomainError
from cubesections.eulerian import (
    calibrate_offset,
    eulerian_row,
    hypersimplex_identity_check,
    normality_deviation,
    rows,
)
from cubesections.numeric.quadext import QuadExtValue
from cubesections.sections import eval_exact

from oracles import eulerian_explicit


def test_small_rows():
    assert eulerian_row(3).entries == (1, 4, 1)
    assert eulerian_row(4).entries == (1, 11, 11, 1)
    assert eulerian_row(6).total() == 720
    assert eulerian_row(4)[-1] == 0 and eulerian_row(4)[4] == 0


def test_rows_match_closed_sum():
    for row in rows(40):
        assert row.entries == tuple(eulerian_explicit(row.d, k) for k in range(row.d))


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 300))
def test_symmetry_and_factorial_sum(d):
    row = eulerian_row(d)
    assert row.is_symmetric()
    assert row.total() == factorial(d)


def test_bad_row():
    with pytest.raises(DomainError):
        eulerian_row(0)


def test_offset_is_calibrated_not_assumed():
    assert calibrate_offset() == (-1, -1)


def test_identity_examples():
    check = hypersimplex_identity_check(2, 1)
    assert check.holds and check.section == QuadExtValue.sqrt(2) == eval_exact(2, 0).value
    assert hypersimplex_identity_check(3, 1).holds
    # the centre of the tesseract is the hypersimplex at i = 2
    assert eval_exact(4, Fraction(1, 2)).value == QuadExtValue(Fraction(1, 3))
    assert hypersimplex_identity_check(4, 1).holds


@pytest.mark.parametrize("d", range(2, 21))
def test_identity_holds(d):
    assert all(hypersimplex_identity_check(d, i).holds for i in range(d // 2 + 1))


def test_identity_domain():
    with pytest.raises(DomainError):
        hypersimplex_identity_check(4, 3)


def test_normality_at_1000():
    rep = normality_deviation(1000)
    assert rep.passed
    assert abs(rep.bound - 0.1825) < 1e-4


def test_normality_at_100():
    rep = normality_deviation(100)
    assert rep.passed, f"deviation {rep.max_dev} above {rep.bound} at t={rep.witness_t}"


def test_normality_is_vacuous_at_2():
    rep = normality_deviation(2)
    assert rep.passed and rep.bound > 1000


def test_step_discontinuity_near_three_tenths():
    # the scaled volumes form a step function; its jumps near t = 0.3 keep the
    # deviation from the Gaussian at least half a jump
    d = 2000
    row = eulerian_row(d - 1)
    i = ceil(d / 2 - 0.3 * sqrt(d))
    jump = abs(sqrt(d) * float(Fraction(row[i - 1] - row[i], factorial(d - 1))))
    lower = (3.6 / sqrt(d) - 24 / d) * sqrt(3 / (2 * pi)) * exp(-0.54)
    assert jump / 2 >= lower
