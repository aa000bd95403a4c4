"""Exact-arithmetic substrate: polynomials, factorization, resultants, Sturm."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weilrank.errors import PreconditionViolation
from weilrank.exactcore import (
    IntPoly,
    cyclotomic_order,
    cyclotomic_part_orders,
    cyclotomic_polynomial,
    discriminant,
    euler_phi,
    factor_int,
    factor_over_integers,
    is_irreducible,
    is_prime,
    poly_gcd,
    power_transform,
    prime_power,
    product_transform,
    ratio_transform,
    resultant,
    squarefree_decomposition,
    squarefree_part,
    sturm_real_root_count,
    sylvester_resultant,
)
from weilrank.exactcore.poly import squarefree_part as poly_sf


def P(*coeffs):
    return IntPoly(coeffs)


small_polys = st.lists(st.integers(-9, 9), min_size=1, max_size=5).map(IntPoly)
nonzero_polys = small_polys.filter(lambda f: not f.is_zero)


class TestIntPoly:
    def test_canonical_form(self):
        assert IntPoly([1, 2, 0, 0]).coeffs == (1, 2)
        assert IntPoly([]).degree == -1
        assert IntPoly([0, 0]).is_zero

    def test_arithmetic(self):
        f = P(1, 2)  # 1 + 2t
        g = P(-1, 1)  # t - 1
        assert f * g == P(-1, -1, 2)
        assert f + g == P(0, 3)
        assert (f - f).is_zero
        assert f**3 == f * f * f

    def test_exact_division(self):
        f = P(-1, 0, 1)
        assert f.exact_div(P(-1, 1)) == P(1, 1)
        with pytest.raises(PreconditionViolation):
            P(1, 1, 1).exact_div(P(-1, 1))

    def test_evaluate(self):
        assert P(5, -1, 1).evaluate(2) == 7
        assert P(5, -1, 1).evaluate(Fraction(1, 2)) == Fraction(19, 4)

    def test_gcd(self):
        f = P(-1, 1) * P(1, 1) * P(2, 1)
        g = P(-1, 1) * P(3, 1)
        assert poly_gcd(f, g) == P(-1, 1)
        assert poly_gcd(f, P(7)).degree == 0

    def test_squarefree_decomposition(self):
        f = P(-1, 1) ** 3 * P(1, 0, 1)
        dec = squarefree_decomposition(f)
        assert (P(1, 0, 1), 1) in dec
        assert (P(-1, 1), 3) in dec
        prod = IntPoly([1])
        for g, m in dec:
            prod = prod * g**m
        assert prod == f


class TestFactor:
    def test_cyclotomic_splitting(self):
        # t^4 - 1 -> (t-1)(t+1)(t^2+1)
        assert factor_over_integers(P(-1, 0, 0, 0, 1)) == [
            (P(-1, 1), 1),
            (P(1, 1), 1),
            (P(1, 0, 1), 1),
        ]

    def test_perfect_power(self):
        assert factor_over_integers(P(5, -1, 1) ** 3) == [(P(5, -1, 1), 3)]

    def test_ordering_deterministic(self):
        f = P(1, 0, 1) * P(-2, 1) * P(3, 1)
        fac = factor_over_integers(f)
        assert fac == sorted(fac, key=lambda t: (t[0].degree, t[0].coeffs))

    def test_non_monic(self):
        f = P(3, 5) * P(-1, 2) * P(1, 1)
        fac = factor_over_integers(f)
        prod = IntPoly([1])
        for g, m in fac:
            prod = prod * g**m
        assert prod == f.primitive_part()

    @settings(max_examples=60, deadline=None)
    @given(st.lists(st.lists(st.integers(-5, 5), min_size=2, max_size=4), min_size=1, max_size=3))
    def test_reexpansion_random_products(self, parts):
        polys = [IntPoly(c) for c in parts]
        polys = [f for f in polys if f.degree >= 1]
        if not polys:
            return
        f = IntPoly([1])
        for g in polys:
            f = f * g
        fac = factor_over_integers(f)
        prod = IntPoly([1])
        for g, m in fac:
            prod = prod * g**m
        assert prod == f.primitive_part() or prod == -f.primitive_part()
        for g, _ in fac:
            assert g.leading > 0
            assert g.content() == 1

    def test_against_sympy(self):
        sympy = pytest.importorskip("sympy")
        x = sympy.Symbol("x")
        cases = [
            P(729, -324, 72, -18, 8, -4, 1),
            P(6, 5, 1) * P(-2, 0, 1),
            P(1, 1, 1, 1, 1, 1, 1),  # Phi_7
            P(2, 3) * P(2, 3) * P(-1, 1),
        ]
        for f in cases:
            expr = sum(c * x**i for i, c in enumerate(f.coeffs))
            _, sy_factors = sympy.factor_list(expr)
            sy = sorted(
                (sympy.Poly(b, x).degree(), e) for b, e in sy_factors if sympy.Poly(b, x).degree() > 0
            )
            mine = sorted((g.degree, m) for g, m in factor_over_integers(f))
            assert mine == sy

    def test_is_irreducible(self):
        assert is_irreducible(P(5, -1, 1))
        assert not is_irreducible(P(-1, 0, 0, 0, 1))
        assert not is_irreducible(P(7))


class TestResultant:
    def test_linear_case(self):
        assert resultant(P(-2, 1), P(-3, 1)) == -1

    def test_discriminant_quadratic(self):
        # disc(t^2 + bt + c) = b^2 - 4c
        for b, c in [(3, 1), (-2, 7), (0, -5)]:
            assert discriminant(P(c, b, 1)) == b * b - 4 * c

    @settings(max_examples=80, deadline=None)
    @given(
        st.lists(st.integers(-8, 8), min_size=2, max_size=5),
        st.lists(st.integers(-8, 8), min_size=2, max_size=5),
    )
    def test_matches_sylvester_determinant(self, a, b):
        f, g = IntPoly(a), IntPoly(b)
        if f.is_zero or g.is_zero:
            return
        assert resultant(f, g) == sylvester_resultant(f, g)

    def test_zero_iff_common_factor(self):
        f = P(-1, 1) * P(1, 0, 1)
        g = P(-1, 1) * P(5, 1)
        assert resultant(f, g) == 0
        assert resultant(P(1, 0, 1), P(5, 1)) != 0

    def test_rejects_zero(self):
        with pytest.raises(PreconditionViolation):
            resultant(IntPoly([]), P(1, 1))


class TestSturm:
    def test_basic_counts(self):
        assert sturm_real_root_count(P(-2, 0, 1)) == 2
        assert sturm_real_root_count(P(1, 0, 1)) == 0

    def test_half_open_interval(self):
        f = P(0, -1, 0, 1)  # t^3 - t: roots -1, 0, 1
        assert sturm_real_root_count(f, 0, 1) == 1
        assert sturm_real_root_count(f, -1, 1) == 2  # (-1, 1] drops -1
        assert sturm_real_root_count(f, None, 0) == 2  # -1 and 0
        assert sturm_real_root_count(f, Fraction(1, 2), None) == 1

    def test_interval_endpoint_membership(self):
        f = P(-1, 1)  # root 1
        assert sturm_real_root_count(f, 0, 1) == 1
        assert sturm_real_root_count(f, 1, 2) == 0

    def test_cleared_cubic_totally_real(self):
        # the (p, l) = (5, 3) construction: 65536 x^3 - 196608 x + 15
        f = IntPoly([15, -196608, 0, 65536])
        assert sturm_real_root_count(f) == 3

    def test_nonsquarefree_endpoint_rejected(self):
        f = P(-1, 1) ** 2
        with pytest.raises(PreconditionViolation):
            sturm_real_root_count(f, 0, 1)
        # away from the repeated root, still counts distinct roots
        assert sturm_real_root_count(f, 0, 2) == 1


class TestTransforms:
    def test_power_examples(self):
        assert power_transform(P(5, -1, 1), 2) == P(25, 9, 1)
        assert power_transform(P(5, 0, 1), 2) == P(25, 10, 1)
        f = P(7, -3, 1)
        assert power_transform(f, 1) == f

    def test_power_via_power_sums(self):
        # independent oracle: Newton power sums of f give those of f^(n)
        f = P(3, -2, -1, 1)
        n = 3
        out = power_transform(f, n)
        assert _power_sums(out, 6) == [_power_sums(f, 3 * 6)[n * k - 1] for k in range(1, 7)]

    def test_power_composition(self):
        f = P(5, -1, 1)
        assert power_transform(power_transform(f, 2), 3) == power_transform(f, 6)

    def test_product_examples(self):
        assert product_transform(P(-2, 1), P(-3, 1)) == P(-6, 1)
        f = P(5, -1, 1)
        prod = product_transform(f, f)
        # alpha * conj(alpha) = 5 must be among the roots
        q, r = prod.divmod_exact(P(-5, 1))
        assert r.is_zero

    def test_ratio_examples(self):
        assert ratio_transform(P(5, 0, 1), P(5, 0, 1)) == P(1, 0, -2, 0, 1)
        # ratio alpha/conj(alpha) for t^2 - t + 5: minimal poly 5t^2 + 9t + 5,
        # not monic, so the transform output is primitive rather than monic
        r = ratio_transform(P(5, -1, 1), P(5, -1, 1))
        rest = r.exact_div(P(-1, 1) ** 2)  # strip the alpha/alpha diagonal
        assert rest == P(5, 9, 5)

    def test_ratio_rejects_root_at_zero(self):
        with pytest.raises(PreconditionViolation):
            ratio_transform(P(1, 1), P(0, 1))

    def test_power_rejects_bad_input(self):
        with pytest.raises(PreconditionViolation):
            power_transform(P(5, -1, 1), 0)
        with pytest.raises(PreconditionViolation):
            power_transform(P(1, 2), 2)


def _power_sums(f, count):
    """Newton's identities: power sums of the roots of monic f."""
    n = f.degree
    e = [Fraction((-1) ** k * c) for k, c in enumerate(reversed(f.coeffs))]
    p = []
    for k in range(1, count + 1):
        s = Fraction(0)
        for i in range(1, min(k, n) + 1):
            s += (-1) ** (i - 1) * e[i] * (p[k - i - 1] if k - i >= 1 else Fraction(k))
        p.append(s)
    return p


class TestCyclotomic:
    def test_orders(self):
        assert cyclotomic_order(P(1, 1, 1)) == 3
        assert cyclotomic_order(P(1, 0, -1, 0, 1)) == 12
        assert cyclotomic_order(P(5, -1, 1)) is None
        assert cyclotomic_order(P(-1, 1)) == 1
        assert cyclotomic_order(P(1, 1)) == 2

    def test_polynomials(self):
        assert cyclotomic_polynomial(1) == P(-1, 1)
        assert cyclotomic_polynomial(12) == P(1, 0, -1, 0, 1)
        for n in range(1, 30):
            assert cyclotomic_polynomial(n).degree == euler_phi(n)

    def test_part_orders(self):
        f = P(-1, 1) * P(1, 1) * P(1, 0, 1) * P(-3, 0, 1)
        assert cyclotomic_part_orders(f) == {1, 2, 4}
        assert cyclotomic_part_orders(P(-3, 0, 1)) == set()


class TestIntegerHelpers:
    def test_prime_power(self):
        assert prime_power(8) == (2, 3)
        assert prime_power(9) == (3, 2)
        assert prime_power(6561) == (3, 8)
        assert prime_power(6) is None
        assert prime_power(1) is None

    def test_squarefree_part(self):
        assert squarefree_part(-16) == -1
        assert squarefree_part(-19) == -19
        assert squarefree_part(18) == 2

    def test_factor_int(self):
        assert factor_int(2**10 * 3**4 * 41) == {2: 10, 3: 4, 41: 1}
        big = 10**20 + 39  # semiprime-ish stress
        fac = factor_int(big)
        prod = 1
        for p, e in fac.items():
            assert is_prime(p)
            prod *= p**e
        assert prod == big

    def test_is_prime_small(self):
        primes = {p for p in range(2, 200) if is_prime(p)}
        assert primes == {
            2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61,
            67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131, 137,
            139, 149, 151, 157, 163, 167, 173, 179, 181, 191, 193, 197, 199,
        }
