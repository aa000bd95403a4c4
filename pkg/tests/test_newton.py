"""Newton polygons and slope classification."""

from fractions import Fraction

import pytest

from weilrank.errors import PreconditionViolation
from weilrank.exactcore import IntPoly
from weilrank.newton import (
    NewtonPolygon,
    classify_newton,
    newton_polygon,
    slope_divisibility_check,
)
from weilrank.weil import base_change, validate


def P(*coeffs):
    return IntPoly(coeffs)


def seg(*pairs):
    return tuple((Fraction(a, b), l) for (a, b), l in pairs)


class TestPolygon:
    def test_ordinary_elliptic(self):
        np_ = newton_polygon(validate(P(5, -1, 1), 5))
        assert np_.segments == seg(((0, 1), 1), ((1, 1), 1))

    def test_supersingular_elliptic(self):
        np_ = newton_polygon(validate(P(5, 0, 1), 5))
        assert np_.segments == seg(((1, 2), 2),)

    def test_prime_power_normalization(self):
        # q = 4 = 2^2: ord normalized so ord(4) = 1
        np_ = newton_polygon(validate(P(4, -4, 1), 4))
        assert np_.segments == seg(((1, 2), 2),)
        np2 = newton_polygon(validate(P(4, -1, 1), 4))
        assert np2.segments == seg(((0, 1), 1), ((1, 1), 1))

    def test_almost_ordinary_sextic(self):
        w = validate(P(729, -324, 72, -18, 8, -4, 1), 9)
        np_ = newton_polygon(w)
        assert np_.segments == seg(((0, 1), 2), ((1, 2), 2), ((1, 1), 2))

    def test_zero_coefficient_omitted(self):
        # t^2 + 5 has a zero linear coefficient; the hull skips that point
        np_ = newton_polygon(validate(P(5, 0, 1), 5))
        assert np_.total_length == 2

    def test_invariants_on_mixed_product(self):
        w = validate(P(9, 3, 1) * P(9, -1, 1) * P(9, 1, 1), 9)
        np_ = newton_polygon(w)
        assert np_.total_length == 6
        for s, l in np_.segments:
            assert np_.length(1 - s) == l
            assert (s * l).denominator == 1

    def test_validation_error_paths(self):
        with pytest.raises(PreconditionViolation):
            NewtonPolygon(segments=((Fraction(2), 1),))
        with pytest.raises(PreconditionViolation):
            NewtonPolygon(segments=((Fraction(1, 2), 0),))
        with pytest.raises(PreconditionViolation):
            NewtonPolygon(segments=((Fraction(1, 2), 2), (Fraction(0), 2)))


class TestClassify:
    def test_overlapping_labels_g1(self):
        np_ = newton_polygon(validate(P(5, -1, 1), 5))
        t = classify_newton(np_, 1)
        assert t.labels == {"ordinary", "k3_type"}
        assert t.primary == "ordinary"

    def test_supersingular(self):
        np_ = newton_polygon(validate(P(5, 0, 1), 5))
        assert classify_newton(np_, 1).primary == "supersingular"

    def test_almost_ordinary(self):
        np_ = NewtonPolygon(
            segments=((Fraction(0), 2), (Fraction(1, 2), 2), (Fraction(1), 2))
        )
        assert classify_newton(np_, 3).primary == "almost_ordinary"

    def test_k3_type(self):
        np_ = NewtonPolygon(
            segments=((Fraction(0), 1), (Fraction(1, 2), 4), (Fraction(1), 1))
        )
        t = classify_newton(np_, 3)
        assert t.labels == {"k3_type"}

    def test_other(self):
        np_ = NewtonPolygon(
            segments=((Fraction(1, 3), 3), (Fraction(2, 3), 3))
        )
        assert classify_newton(np_, 3).primary == "other"


class TestInvariantsAndDivisibility:
    def test_slope_divisibility(self):
        ss = NewtonPolygon(segments=((Fraction(1, 2), 2),))
        assert slope_divisibility_check(ss, 2)
        ao = NewtonPolygon(
            segments=((Fraction(0), 2), (Fraction(1, 2), 2), (Fraction(1), 2))
        )
        assert slope_divisibility_check(ao, 2)
        assert not slope_divisibility_check(ao, 4)

    def test_polygon_stable_under_base_change(self):
        for coeffs, q in [((5, -1, 1), 5), ((9, 3, 1), 9), ((4, -4, 1), 4)]:
            w = validate(P(*coeffs), q)
            np0 = newton_polygon(w)
            for n in (2, 3):
                assert newton_polygon(base_change(w, n)).segments == np0.segments

    def test_ordinary_iff_unit_trace_g1(self):
        for q, p in [(5, 5), (9, 3), (8, 2)]:
            for a in range(-7, 8):
                try:
                    w = validate(P(q, a, 1), q)
                except Exception:
                    continue
                labels = classify_newton(newton_polygon(w), 1).labels
                assert ("ordinary" in labels) == (a % p != 0)

    def test_slope_denominator_bound(self):
        # slopes 1/3, 2/3 hit the denominator-equals-g extreme: two slopes only
        w = validate(P(512, 0, 0, 8, 0, 0, 1), 8)
        np_ = newton_polygon(w)
        assert np_.segments == seg(((1, 3), 3), ((2, 3), 3))
        assert np_.is_integral
        for s, _ in np_.segments:
            if s not in (Fraction(1, 2),):
                assert s.denominator <= 3

    def test_formal_ghost_polygon(self):
        # t^2 + 2t + 8 over F_8 passes the root-modulus test but its polygon
        # {1/3, 2/3} with unit lengths cannot belong to an abelian variety
        w = validate(P(8, 2, 1), 8)
        np_ = newton_polygon(w)
        assert np_.segments == seg(((1, 3), 1), ((2, 3), 1))
        assert not np_.is_integral
        assert classify_newton(np_, 1).primary == "other"
