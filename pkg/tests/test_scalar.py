"""Exact scalar layer: Gaussian rationals, KPoly, integer roots."""

from fractions import Fraction

import pytest

from nfc.scalar import (
    GaussianRational,
    I,
    KPoly,
    ONE,
    ZERO,
    gaussian_from_obj,
    gaussian_to_obj,
    integer_roots_ge2,
    kpoly_eval,
    make_monic,
    parse_rational,
    rational_str,
)


def kp(*coeffs):
    return KPoly(coeffs)


def schoolbook_mul(p: KPoly, q: KPoly) -> KPoly:
    """Independent reference product used as the multiplication oracle."""
    out = [ZERO] * (len(p.coeffs) + len(q.coeffs))
    for i, a in enumerate(p.coeffs):
        for j, b in enumerate(q.coeffs):
            out[i + j] = out[i + j] + a * b
    return KPoly(out)


class TestGaussianRational:
    def test_field_arithmetic(self):
        a = GaussianRational(Fraction(1, 2), Fraction(-1, 3))
        b = GaussianRational(Fraction(2, 5), Fraction(7))
        assert (a + b) - b == a
        assert (a * b) / b == a
        assert a * (ONE / a) == ONE
        assert -(-a) == a
        assert a.conjugate().conjugate() == a
        assert (a * a.conjugate()).is_real()

    def test_exactness_no_rounding(self):
        x = GaussianRational(Fraction(1, 3))
        total = ZERO
        for _ in range(3):
            total = total + x
        assert total == ONE

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            ONE / ZERO

    def test_i_squared(self):
        assert I * I == GaussianRational(-1)

    def test_serialization_round_trip(self):
        for val in (ZERO, ONE, I, GaussianRational(Fraction(-3, 7), Fraction(22, 5))):
            assert gaussian_from_obj(gaussian_to_obj(val)) == val
        assert rational_str(Fraction(-3, 7)) == "-3/7"
        assert rational_str(Fraction(5)) == "5"
        assert parse_rational("-3/7") == Fraction(-3, 7)
        assert parse_rational("12") == 12
        with pytest.raises(ValueError):
            parse_rational("1.5")


class TestKPolyArith:
    def test_difference_of_squares(self):
        km1 = kp(-1, 1)
        kp1 = kp(1, 1)
        assert km1 * kp1 == kp(-1, 0, 1)

    def test_absorbing_zero(self):
        p = kp(2, -3, 2)
        assert p * KPoly() == KPoly()
        assert p * KPoly() == KPoly([0, 0])

    def test_square_against_schoolbook_oracle(self):
        p = kp(2, -3, 2)  # 2k^2 - 3k + 2 read upward
        expected = schoolbook_mul(p, p)
        assert p * p == expected
        assert p * p == kp(4, -12, 17, -12, 4)

    def test_degree_additivity(self, make):
        for _ in range(25):
            p = KPoly([make.gaussian() for _ in range(make.rng.randint(1, 5))] + [ONE])
            q = KPoly([make.gaussian() for _ in range(make.rng.randint(1, 5))] + [ONE])
            assert (p * q).degree == p.degree + q.degree
            assert p * q == schoolbook_mul(p, q)


class TestKPolyEval:
    def test_simple(self):
        assert kpoly_eval(kp(-1, 0, 1), GaussianRational(3)) == GaussianRational(8)
        assert kpoly_eval(KPoly(), make_any := GaussianRational(Fraction(9, 7))) == ZERO
        del make_any

    def test_closed_form_product_at_two(self):
        # (2/3) k (2k+3) (k-1) (2k^2-3k+2)^2 evaluated at k = 2 is 448/3
        q = kp(2, -3, 2)
        p = kp(0, Fraction(2, 3)) * kp(3, 2) * kp(-1, 1) * q * q
        assert kpoly_eval(p, GaussianRational(2)) == GaussianRational(Fraction(448, 3))


class TestMakeMonic:
    def test_simple(self):
        monic, lc = make_monic(kp(6, 0, 3))
        assert monic == kp(2, 0, 1)
        assert lc == GaussianRational(3)

    def test_monic_input(self):
        p = kp(5, -2, 1)
        monic, lc = make_monic(p)
        assert monic == p and lc == ONE

    def test_zero_poly_rejected(self):
        with pytest.raises(ValueError, match="cannot normalize zero polynomial"):
            make_monic(KPoly())

    def test_projective_well_defined(self, make):
        p = kp(Fraction(7, 3), -2, 0, 1)
        for _ in range(20):
            a = make.rational()
            if a == 0:
                continue
            scaled, _ = make_monic(p * GaussianRational(a))
            assert scaled == make_monic(p)[0]


class TestIntegerRoots:
    def test_two_roots(self):
        p = kp(-2, 1) * kp(-5, 1) * kp(1, 0, 1)
        assert integer_roots_ge2(p) == [2, 5]

    def test_no_real_roots(self):
        assert integer_roots_ge2(kp(1, 0, 1)) == []

    def test_mm_style_poly(self):
        # -221184 (k-1) ((k-1)^2 - 16) ((k-1)^2 - 4)^2 has integer roots 3, 5 (m = 2)
        km1 = kp(-1, 1)
        sq = km1 * km1
        p = KPoly.constant(-221184) * km1 * (sq - kp(16)) * (sq - kp(4)) * (sq - kp(4))
        assert integer_roots_ge2(p) == [3, 5]

    def test_root_needs_cleared_denominators(self):
        # (1/6)k - 1 has the integer root 6, invisible in the raw numerator
        assert integer_roots_ge2(kp(-1, Fraction(1, 6))) == [6]

    def test_gaussian_coefficients_need_both_parts(self):
        # (k - 2) + i(k - 3) has no common integer root; i(k-3)(k-2) has both
        assert integer_roots_ge2(kp(-2, 1) + kp(-3, 1) * I) == []
        assert integer_roots_ge2(kp(-2, 1) * kp(-3, 1) * I) == [2, 3]

    def test_zero_poly_rejected(self):
        with pytest.raises(ValueError, match="all integers as roots"):
            integer_roots_ge2(KPoly())

    def test_union_under_products(self, make):
        for _ in range(15):
            r1 = make.rng.randint(2, 9)
            r2 = make.rng.randint(2, 9)
            p = kp(-r1, 1) * kp(make.rng.randint(1, 5), 0, 1)
            q = kp(-r2, 1)
            assert integer_roots_ge2(p * q) == sorted({r1, r2})

    def test_returned_roots_evaluate_to_zero(self, make):
        for _ in range(15):
            roots = sorted({make.rng.randint(2, 12) for _ in range(3)})
            p = KPoly([ONE])
            for r in roots:
                p = p * kp(-r, 1)
            found = integer_roots_ge2(p)
            assert found == roots
            for r in found:
                assert kpoly_eval(p, GaussianRational(r)).is_zero()
