from fractions import Fraction

import pytest
import sympy

from igusa_locus.arith import QuadExtVal
from igusa_locus.hm_families import (
    Degenerate, HMCoeffs, base_polynomial, coeffs, curve, discriminant, on_base_curve, rational_points,
)

r2 = QuadExtVal.sqrt(2)


def sympy_disc(f):
    X = sympy.symbols("X")
    poly = sum(sympy.Rational(c.numerator, c.denominator) * X ** (5 - k) for k, c in enumerate(f))
    return Fraction(str(sympy.discriminant(poly, X)))


def test_membership():
    assert on_base_curve(6, 0, r2)
    assert not on_base_curve(6, 1, 2) and base_polynomial(6, 1, 2) == 15
    assert on_base_curve(10, 2, 0)
    with pytest.raises(ValueError):
        on_base_curve(6, 1 + r2, 1 + QuadExtVal.sqrt(3))


def test_family_ten_at_two():
    c = coeffs(10, 2, 0)
    assert (c.P, c.Q, c.R) == (20, Fraction(125, 18), 0)
    cv = curve(10, 2, 0)
    assert cv.degenerate is None
    assert [x.to_rat() for x in cv.f_coeffs] == [400, 400, Fraction(2500, 18), 20, 1, 0]
    assert discriminant(cv.f_coeffs) == sympy_disc([x.to_rat() for x in cv.f_coeffs]) != 0


@pytest.mark.parametrize("t", [Fraction(-1, 2), 0])
def test_family_ten_degenerate(t):
    assert isinstance(coeffs(10, t, 0), Degenerate)
    assert curve(10, t, 0).degenerate is not None


def test_family_six_quadratic_point():
    c = coeffs(6, 0, r2)
    assert isinstance(c, HMCoeffs)
    assert c.P == 2 * r2 and c.R == 2 * r2 and c.Q == Fraction(11, 3)
    cv = curve(6, 0, r2)
    assert cv.degenerate is None and not discriminant(cv.f_coeffs).is_zero()
    assert cv.to_dict() == {"family": 6, "t": "0", "s": "sqrt(2)",
                            "f": ["1", "2*sqrt(2)", "11/3", "2*sqrt(2)", "1", "0"], "degenerate": None}


def test_off_curve_rejected():
    with pytest.raises(ValueError):
        coeffs(6, 1, 2)
    with pytest.raises(ValueError):
        curve(7, 0, 0)


def test_rational_points():
    assert rational_points(10, 3) == [(Fraction(-1, 2), 0, True), (0, 0, True), (2, 0, False)]
    assert rational_points(6, 10) == []
    with pytest.raises(ValueError):
        rational_points(10, 0)


def test_rational_points_monotone():
    prev = set()
    for H in range(1, 16):
        pts = rational_points(10, H)
        assert prev <= set(pts)
        assert pts == sorted(pts)
        prev = set(pts)


def test_smooth_points_have_sympy_discriminant():
    for t, s, deg in rational_points(10, 20):
        cv = curve(10, t, s)
        assert deg == (cv.degenerate is not None)
        if not deg:
            f = [x.to_rat() for x in cv.f_coeffs]
            assert f[0] != 0 and sympy_disc(f) == discriminant(cv.f_coeffs).to_rat() != 0


def test_family_six_symmetry():
    for num in range(-12, 13):
        t = Fraction(num, 5)
        if 1 - 4 * t * t == 0:
            continue
        s = QuadExtVal.sqrt((t * t + 2) / (1 - 4 * t * t))
        assert on_base_curve(6, t, s) and on_base_curve(6, -t, -s)
        c1, c2 = coeffs(6, t, s), coeffs(6, -t, -s)
        if isinstance(c1, HMCoeffs):
            assert c2.P == -c1.P and c2.R == -c1.R and c2.Q == c1.Q


def test_family_six_degenerate_denominator():
    # t = 1 kills 1 - t^2 and forces s^2 = -1
    s = QuadExtVal.sqrt(-1)
    assert isinstance(coeffs(6, 1, s), Degenerate)
