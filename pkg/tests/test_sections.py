from __future__ import annotations

from fractions import Fraction
from math import comb, isqrt, pi, sqrt

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from cubesections.errors import DomainError, IndexOutOfRange
from cubesections.numeric.poly import Poly
from cubesections.numeric.quadext import QuadExtValue, Sign, squarefree_split
from cubesections.sections import (
    diff_sign,
    eval_exact,
    hypersimplex_heights,
    isolate_crossings,
    section_piece,
    z_to_t,
)

from oracles import high_precision, mp_section_quad, sympy_section

S2, S3 = QuadExtValue.sqrt(2), QuadExtValue.sqrt(3)


def isqrt_ceil(d: int) -> int:
    r = isqrt(d)
    return r if r * r == d else r + 1


def _sympy_value(v: QuadExtValue) -> sympy.Expr:
    out = sympy.Rational(v.base.numerator, v.base.denominator)
    for m in v.radicands:
        c = v.coeff(m)
        out += sympy.Rational(c.numerator, c.denominator) * sympy.sqrt(m)
    return out


# -- pieces -----------------------------------------------------------------------

def test_piece_for_the_segment():
    piece = section_piece(1, 0)
    assert piece.poly_in_z == Poly([1], "z")
    assert piece.poly_in_z.degree == 0


def test_piece_for_the_square():
    assert section_piece(2, 0).in_t() == Poly([S2, -2])


def test_central_piece_of_the_cube():
    assert section_piece(3, 1).in_t() == Poly([S3 * Fraction(3, 4), 0, S3 * -3])


def test_piece_index_out_of_range():
    with pytest.raises(IndexOutOfRange):
        section_piece(4, 3)
    with pytest.raises(DomainError):
        section_piece(0, 0)


@pytest.mark.parametrize("d", range(2, 41))
def test_adjacent_pieces_agree_at_breakpoints(d):
    for i in range(1, d // 2 + 1):
        left = section_piece(d, i - 1).poly_in_z(Fraction(i))
        right = section_piece(d, i).poly_in_z(Fraction(i))
        assert left == right


@pytest.mark.parametrize("d", range(2, 16))
def test_sum_is_symmetric_under_z_to_d_minus_z(d):
    for k in range(0, 4 * d + 1):
        z = Fraction(k, 4)
        if z > Fraction(d, 2):
            continue
        full = sum((-1) ** i * comb(d, i) * (d - z - i) ** (d - 1) for i in range(int(d - z) + 1))
        assert section_piece(d, min(int(z), d // 2)).poly_in_z(z) == full


# -- evaluation ----------------------------------------------------------------------

def test_known_values():
    assert eval_exact(2, 0).value == S2
    assert eval_exact(3, 0).value == S3 * Fraction(3, 4)
    assert eval_exact(4, 1).value.is_zero()
    assert eval_exact(2, Fraction(1, 4)).value == S2 - Fraction(1, 2)


def test_segment_convention_at_its_endpoint():
    assert eval_exact(1, Fraction(1, 2)).value == QuadExtValue(1)
    assert eval_exact(1, Fraction(1, 4)).value == QuadExtValue(1)
    assert eval_exact(1, Fraction(51, 100)).value.is_zero()


def test_even_in_t():
    assert eval_exact(7, Fraction(-3, 10)).value == eval_exact(7, Fraction(3, 10)).value


def test_beyond_the_vertex_is_zero():
    for d in (2, 5, 9):
        assert eval_exact(d, Fraction(isqrt_ceil(d) + 1, 2)).value.is_zero()


@pytest.mark.parametrize("d", [2, 3, 4, 5, 7, 10])
def test_matches_sympy_exactly(d):
    for t in ("0", "1/7", "0.3", "1/2", "0.9"):
        ours = _sympy_value(eval_exact(d, Fraction(t)).value)
        assert sympy.simplify(ours - sympy_section(d, t)) == 0


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 25), st.fractions(min_value=0, max_value=3, max_denominator=97))
def test_matches_sympy_numerically(d, t):
    ours = float(eval_exact(d, t).value)
    assert abs(ours - float(high_precision(sympy_section(d, t), 40))) < 1e-12


@pytest.mark.parametrize("d,t", [(2, "0"), (3, "0.1"), (6, "0.4"), (9, "0.75")])
def test_matches_mpmath_quadrature(d, t):
    assert abs(float(eval_exact(d, Fraction(t)).value) - float(mp_section_quad(d, float(Fraction(t))))) < 1e-10


def test_section_value_invariants():
    for d in range(1, 12):
        for k in range(0, 40):
            t = Fraction(k, 20)
            v = eval_exact(d, t).value
            assert v.sign() >= 0
            assert v.is_zero() == (4 * t * t > d or (4 * t * t == d and d > 1))
            assert set(v.radicands) <= {squarefree_split(d)[1]}


def test_central_sections_increase_from_three():
    values = [eval_exact(d, 0).value for d in range(3, 61)]
    assert all(b > a for a, b in zip(values, values[1:]))
    bound = sqrt(6 / pi)
    assert all(1 < float(v) < bound for v in values)


def test_values_at_surd_heights():
    h = hypersimplex_heights(3).heights[1]
    assert eval_exact(3, h).value == S3 * Fraction(1, 2)


# -- differences and crossings ----------------------------------------------------------

def test_diff_sign_examples():
    assert diff_sign(5, Fraction(1, 10)) == Sign.POSITIVE
    assert diff_sign(5, Fraction(1, 2)) == Sign.NEGATIVE
    assert diff_sign(3, 0) == Sign.POSITIVE


def test_square_cube_crossing():
    (iv,) = isolate_crossings(2, (0, Fraction(1, 10)))
    assert Fraction("0.0705012") < iv.lo and iv.hi < Fraction("0.0705013")


def test_cube_tesseract_crossing():
    (iv,) = isolate_crossings(3, (Fraction(2, 5), Fraction(9, 20)))
    assert Fraction("0.407452") < iv.lo and iv.hi < Fraction("0.407453")


def test_no_crossing_past_the_segment():
    assert isolate_crossings(1, (Fraction(55, 100), Fraction(6, 10))) == []
    signs = {diff_sign(1, Fraction(5500 + k, 10000)) for k in range(501)}
    assert len(signs) == 1


def test_cube_tesseract_has_four_crossings():
    floats = [round(float(iv), 4) for iv in isolate_crossings(3, (0, Fraction(9, 10)))]
    assert floats == [0.1441, 0.3116, 0.4075, 0.6973]


@pytest.mark.parametrize("d", [2, 3, 4, 6])
def test_sign_is_constant_between_crossings(d):
    hi = Fraction(isqrt_ceil(d + 1) - 1, 2) if d > 2 else Fraction(3, 4)
    ivs = isolate_crossings(d, (0, hi))
    cuts = [Fraction(0)] + [x for iv in ivs for x in (iv.lo, iv.hi)] + [hi]
    for a, b in zip(cuts[::2], cuts[1::2]):
        if b <= a:
            continue
        signs = {diff_sign(d, a + (b - a) * k / 11) for k in range(1, 11)}
        assert len(signs) == 1, (d, a, b, signs)


# -- hypersimplex heights ---------------------------------------------------------------

def test_heights():
    assert hypersimplex_heights(2).heights == (S2 / 2, QuadExtValue(0))
    assert hypersimplex_heights(4).heights == tuple(QuadExtValue(x) for x in (1, Fraction(1, 2), 0))
    assert hypersimplex_heights(3).heights == (S3 / 2, S3 / 2 - S3 / 3)


@pytest.mark.parametrize("d", range(1, 30))
def test_heights_strictly_decrease(d):
    hs = hypersimplex_heights(d).heights
    assert len(hs) == d // 2 + 1
    assert hs[0] == QuadExtValue.sqrt(d) / 2
    assert all(a > b for a, b in zip(hs, hs[1:]))
    assert z_to_t(d, 0) == hs[0]
