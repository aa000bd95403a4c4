"""Classification engine: sufficiency, neatness, rank, diagnostics."""

import pytest

from weilrank.classify import (
    classify,
    classify_auto,
    fourfold_diagnostic,
    sufficiency_degree,
    theorem_diagnostics,
)
from weilrank.errors import (
    DimensionTooLarge,
    NotSufficientlyLarge,
    PreconditionViolation,
)
from weilrank.exactcore import IntPoly
from weilrank.weil import base_change, validate


def P(*coeffs):
    return IntPoly(coeffs)


NON_NEAT = P(729, -324, 72, -18, 8, -4, 1)


def sextic_from_trace(hc, q):
    base = IntPoly([q, 0, 1])
    out = IntPoly()
    for k, c in enumerate(hc):
        out = out + (c * base**k).shift(3 - k)
    return out


class TestSufficiency:
    def test_examples(self):
        assert sufficiency_degree(validate(P(5, 0, 1), 5)) == 2
        assert sufficiency_degree(validate(P(5, -1, 1), 5)) == 1
        assert sufficiency_degree(validate(P(4, -4, 1), 4)) == 1

    def test_lcm_of_orders(self):
        # t^2 + 3t + 3 over F_3: beta is a primitive 6th root of unity
        w = validate(P(3, 3, 1), 3)
        n = sufficiency_degree(w)
        wn = base_change(w, n)
        from weilrank.weil import beta_torsion_orders, ratio_torsion_orders

        assert not ratio_torsion_orders(wn)
        assert not beta_torsion_orders(wn)

    def test_both_square_roots_case(self):
        w = validate(P(-5, 0, 1) ** 2, 5)
        assert sufficiency_degree(w) == 2


class TestClassifySimple:
    def test_ordinary_elliptic_neat_rank_one(self):
        rep = classify(validate(P(5, -1, 1), 5))
        assert rep.neat and rep.rank == 1 and rep.gamma_rank == 2
        assert rep.newton.primary == "ordinary"
        assert rep.simple

    def test_supersingular_rank_zero(self):
        rep = classify(validate(P(4, -4, 1), 4))
        assert rep.neat and rep.rank == 0
        assert rep.newton.primary == "supersingular"

    def test_non_neat_sextic(self):
        rep = classify(validate(NON_NEAT, 9), force_oracle=True)
        assert not rep.neat
        assert rep.rank == 2
        assert rep.condition_i and rep.condition_ii and rep.condition_iii
        assert rep.witness is not None and rep.witness.m == -1
        assert rep.oracle.rank == 2

    def test_ordinary_sextic_neat_rank_three(self):
        w = validate(sextic_from_trace([-1, -4, 0, 1], 5), 5)
        rep = classify(w, force_oracle=True)
        assert rep.neat and rep.rank == 3
        assert rep.condition_i and not rep.condition_iii
        assert rep.oracle.rank == 3

    def test_insufficient_field_rejected(self):
        with pytest.raises(NotSufficientlyLarge) as exc:
            classify(validate(P(5, 0, 1), 5))
        assert exc.value.degree_needed == 2

    def test_dimension_cap(self):
        w = validate(P(5, -1, 1) ** 4, 5)
        with pytest.raises(DimensionTooLarge):
            classify(w)

    def test_auto_extension_records_field(self):
        rep = classify_auto(validate(P(5, 0, 1), 5))
        assert rep.extension_from == (5, 2)
        assert rep.q == 25
        assert rep.rank == 0 and rep.neat

    def test_simple_repeated_factor(self):
        # (t^2 - t + 5)^3: simple threefold with e = 3, rank 1
        rep = classify(validate(P(5, -1, 1) ** 3, 5))
        assert rep.simple and rep.neat and rep.rank == 1


class TestClassifyProducts:
    def test_two_distinct_elliptics(self):
        w = validate(P(5, -1, 1) * P(5, -2, 1), 5)
        rep = classify(w)
        assert rep.neat and rep.rank == 2 and rep.rank_source == "theorem"
        assert rep.oracle is not None and rep.oracle.rank == 2

    def test_same_cm_field_collapses(self):
        # t^2 - t + 5 and t^2 + t + 5 share Q(sqrt(-19)) but differ by the
        # sign twist, which is torsion over F_5; go up once first
        w = base_change(validate(P(5, -1, 1) * P(5, 1, 1), 5), 2)
        rep = classify(w)
        assert rep.rank == 1

    def test_supersingular_factor_adds_nothing(self):
        w = base_change(validate(P(5, 0, 1) * P(5, -1, 1), 5), 2)
        rep = classify(w)
        assert rep.rank == 1 and rep.neat

    def test_three_distinct_oracle_decided(self):
        w = validate(P(5, -1, 1) * P(5, -2, 1) * P(5, -3, 1), 5)
        rep = classify(w)
        assert rep.rank == 3
        assert rep.rank_source == "oracle"
        assert any("oracle_decided" in n for n in rep.notes)

    def test_g3_products_always_neat(self):
        w = validate(P(5, -1, 1) * P(5, -2, 1) * P(5, -4, 1), 5)
        rep = classify_auto(w)
        assert rep.neat

    def test_elliptic_times_quartic(self):
        # quartic CM surface x ordinary elliptic over F_5
        quartic = P(25, -5, 6, -1, 1)  # t^4 - t^3 + 6t^2 - 5t + 25
        w = validate(quartic * P(5, -1, 1), 5)
        rep = classify_auto(w)
        assert rep.neat
        assert rep.oracle is not None and rep.rank == rep.oracle.rank


class TestRankInvariance:
    def test_rank_stable_under_base_change(self):
        for poly, q in [(P(5, -1, 1), 5), (NON_NEAT, 9), (P(4, -4, 1), 4)]:
            w = validate(poly, q)
            r0 = classify(w).rank
            for n in (2, 3):
                assert classify(base_change(w, n)).rank == r0

    def test_verdict_stable_under_extension(self):
        w = validate(NON_NEAT, 9)
        base = classify(w)
        for n in (2, 3):
            rep = classify(base_change(w, n))
            assert rep.neat == base.neat and rep.rank == base.rank


class TestDiagnostics:
    def test_inert_subfield_on_non_neat(self):
        diag = theorem_diagnostics(validate(NON_NEAT, 9))
        assert diag.contradictions == ()
        assert len(diag.inert_subfield) == 1
        chk = diag.inert_subfield[0]
        assert chk["p_splitting"] == "inert"
        assert chk["norm_is_one"] and chk["rank"] == 2 < chk["pair_count"]

    def test_slope_parity_on_ordinary_sextic(self):
        w = validate(sextic_from_trace([-1, -4, 0, 1], 5), 5)
        diag = theorem_diagnostics(w)
        assert diag.slope_parity is not None
        assert diag.slope_parity["consistent"]
        assert diag.contradictions == ()

    def test_product_collapse_reporting(self):
        # quartic with Q(i) subfield and non-torsion norm, times an elliptic
        # curve with CM by Q(i): the elliptic factor adds no rank
        quartic = P(25, 20, 11, 4, 1)
        w = validate(quartic * P(5, -2, 1), 5)
        rep = classify_auto(w)
        assert rep.rank == 2  # collapsed from 2 + 1
        diag = theorem_diagnostics(base_change(w, rep.extension_from[1]))
        assert diag.product_collapse is not None
        assert diag.product_collapse["collapsed_by_one"]
        shared = diag.product_collapse["shared_field"]
        assert shared is not None and shared["m"] == -1
        assert shared["p_splits"] == "split"
        assert diag.contradictions == ()


class TestFourfold:
    def test_requires_g4(self):
        with pytest.raises(PreconditionViolation):
            fourfold_diagnostic(validate(P(5, -1, 1), 5))

    def test_reducible_plumbing(self):
        w = validate(P(5, -1, 1) ** 2 * P(5, -2, 1) ** 2, 5)
        diag = fourfold_diagnostic(w)
        assert len(diag.decomposition) == 2
        assert diag.oracle.rank == 2
        assert not diag.rank_is_three

    def test_non_neat_threefold_times_elliptic(self):
        w3 = base_change(validate(NON_NEAT, 9), 2)  # non-neat threefold over F_81
        w = validate(w3.poly * P(81, -5, 1), 81)
        diag = fourfold_diagnostic(w)
        assert diag.oracle.rank == 3
        assert diag.rank_is_three
        assert diag.non_neat_threefold_component
        assert diag.quadratic_subfield_in_component
