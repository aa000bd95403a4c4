"""Neatness and rank classification for dimension at most three.

The decision procedure over a sufficiently large field:

  * a supersingular eigenvalue set has rank 0 and is neat;
  * dimensions 1 and 2 are always neat, with rank the number of
    eigenvalue pairs per simple component;
  * in dimension 3, the only non-neat configuration is an absolutely
    simple variety with irreducible sextic CM characteristic polynomial,
    an imaginary quadratic subfield of norm-one type, and almost-ordinary
    Newton polygon; its rank is 2, every neat simple threefold has the
    pair-count rank;
  * products combine through the unit-group collapse rules for shared
    imaginary quadratic fields; where those rules do not pin the value,
    the certified oracle decides and the report says so.

Every product rank is cross-checked against the oracle; a disagreement
raises, because it can only mean a bug on one side.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import (
    DimensionTooLarge,
    NotSufficientlyLarge,
    OracleDisagreement,
    PreconditionViolation,
    TorsionBoundExceeded,
)
from .exactcore import IntPoly, squarefree_part, sturm_real_root_count
from .newton import (
    NewtonPolygon,
    NewtonType,
    classify_newton,
    newton_polygon,
    root_valuation_segments,
)
from .relfinder import OracleRank, oracle_rank
from .subfields import (
    ConjugateFactorization,
    conjugate_factorizations,
    conjugate_split,
    norm_condition,
    norm_one_witness,
)
from .weil import (
    WeilPolynomial,
    base_change,
    beta_torsion_orders,
    eigenvalue_structure,
    ratio_torsion_orders,
    validate,
)

__all__ = [
    "ComponentReport",
    "ClassificationReport",
    "sufficiency_degree",
    "classify",
    "classify_auto",
    "theorem_diagnostics",
    "fourfold_diagnostic",
]

_TORSION_DOUBLINGS = 8


def _lcm(values) -> int:
    out = 1
    for v in values:
        out = out * v // gcd(out, v)
    return out


def sufficiency_degree(w: WeilPolynomial) -> int:
    """Minimal extension degree making the eigenvalue group torsion-free.

    Candidate: the lcm of all torsion orders among pairwise eigenvalue
    ratios and among the q^(-1) alpha^2.  The candidate is verified on the
    extended field and doubled on failure, up to a fixed budget (the paper
    gives no completeness guarantee for the candidate set, so failure to
    stabilize is surfaced, never guessed away).
    """
    orders = set(ratio_torsion_orders(w)) | set(beta_torsion_orders(w))
    n = _lcm(orders) if orders else 1
    for _ in range(_TORSION_DOUBLINGS):
        wn = base_change(w, n)
        if not ratio_torsion_orders(wn) and not beta_torsion_orders(wn):
            return n
        n *= 2
    raise TorsionBoundExceeded(
        f"torsion search did not stabilize within {_TORSION_DOUBLINGS} doublings"
    )


@dataclass(frozen=True)
class ComponentReport:
    """Per-irreducible-factor summary."""

    pmin: IntPoly
    e: int
    d: int  # eigenvalue pairs contributed
    newton_primary: str
    supersingular: bool
    cm_disc: int | None  # squarefree disc of the CM field when pmin is quadratic


@dataclass(frozen=True)
class ClassificationReport:
    g: int
    q: int
    poly: IntPoly
    sufficiency_degree: int
    simple: bool
    neat: bool
    rank: int
    newton: NewtonType
    polygon: NewtonPolygon
    condition_i: bool
    condition_ii: bool
    condition_iii: bool
    witness: ConjugateFactorization | None
    components: tuple[ComponentReport, ...]
    rank_source: str  # 'theorem' or 'oracle'
    oracle: OracleRank | None
    notes: tuple[str, ...]
    extension_from: tuple[int, int] | None = None  # (original q, degree applied)

    @property
    def gamma_rank(self) -> int:
        return self.rank + 1

    @property
    def pmin_degree(self) -> int:
        return sum(c.pmin.degree for c in self.components)


def _component_report(pmin: IntPoly, e: int, w: WeilPolynomial) -> ComponentReport:
    segments = root_valuation_segments(pmin, w.p, w.v)
    scaled = NewtonPolygon(segments=tuple((s, l * e) for s, l in segments))
    dim2 = pmin.degree * e
    ntype = classify_newton(scaled, dim2 // 2) if dim2 % 2 == 0 else None
    half = Fraction(1, 2)
    ss = set(s for s, _ in segments) == {half}
    # over a sufficiently large field supersingular components are t -+ sqrt(q)
    if pmin.degree == 1:
        ss = pmin.coeffs[0] ** 2 == w.q
    fixed = 1 if (pmin.degree == 1 and pmin.coeffs[0] ** 2 == w.q) else 0
    if pmin == IntPoly([-w.q, 0, 1]):
        fixed = 2
    d = (pmin.degree - fixed) // 2
    cm_disc = None
    if pmin.degree == 2 and fixed == 0:
        cm_disc = squarefree_part(pmin.coeffs[1] ** 2 - 4 * pmin.coeffs[0])
    return ComponentReport(
        pmin=pmin,
        e=e,
        d=d,
        newton_primary=ntype.primary if ntype else "odd",
        supersingular=ss,
        cm_disc=cm_disc,
    )


def _require_sufficient(w: WeilPolynomial):
    orders = set(ratio_torsion_orders(w)) | set(beta_torsion_orders(w))
    if orders:
        raise NotSufficientlyLarge(_lcm(orders))


def classify(
    w: WeilPolynomial,
    exponent_bound: int = 20,
    force_oracle: bool = False,
) -> ClassificationReport:
    """Neatness, rank, and condition flags over a sufficiently large field.

    The caller extends the field first (see `classify_auto`); a field with
    eigenvalue torsion is rejected so every verdict names the field it
    holds over.  Product ranks are always cross-checked against the
    certified oracle; `force_oracle` adds the check to simple inputs too.
    """
    if w.g > 3:
        raise DimensionTooLarge(
            f"dimension {w.g} > 3; use fourfold_diagnostic for g = 4"
        )
    _require_sufficient(w)
    decomp = eigenvalue_structure(w)
    polygon = newton_polygon(w)
    ntype = classify_newton(polygon, w.g)
    comps = tuple(_component_report(c.pmin, c.e, w) for c in decomp.components)
    notes: list[str] = []
    witness = None
    cond_i = cond_ii = cond_iii = False
    oracle: OracleRank | None = None
    rank_source = "theorem"

    if len(comps) == 1:
        comp = comps[0]
        simple = True
        if comp.supersingular:
            neat, rank = True, 0
        elif w.g <= 2:
            neat, rank = True, comp.d
        elif comp.pmin.degree == 6:
            cond_i = sturm_real_root_count(comp.pmin) == 0
            cond_iii = "almost_ordinary" in ntype.labels
            if cond_i:
                witness = norm_one_witness(comp.pmin, w.q)
                cond_ii = witness is not None
            neat = not (cond_i and cond_ii and cond_iii)
            rank = 3 if neat else 2
        else:
            # simple threefold with repeated factor: neat, pair-count rank
            neat, rank = True, comp.d
    else:
        simple = False
        neat = True
        rank, rank_source, combo_notes = _combined_rank(comps, w, exponent_bound)
        notes.extend(combo_notes)

    if not simple or force_oracle:
        oracle = oracle_rank(w, exponent_bound=exponent_bound)
        if rank_source == "oracle":
            rank = oracle.rank
        elif oracle.rank != rank:
            raise OracleDisagreement(
                f"classifier rank {rank} != oracle rank {oracle.rank} for {w.poly}"
            )
    report = ClassificationReport(
        g=w.g,
        q=w.q,
        poly=w.poly,
        sufficiency_degree=1,
        simple=simple,
        neat=neat,
        rank=rank,
        newton=ntype,
        polygon=polygon,
        condition_i=cond_i,
        condition_ii=cond_ii,
        condition_iii=cond_iii,
        witness=witness,
        components=comps,
        rank_source=rank_source,
        oracle=oracle,
        notes=tuple(notes),
    )
    assert 0 <= report.rank <= w.g
    assert report.gamma_rank <= report.pmin_degree // 2 + 1
    assert (report.rank == 0) == ("supersingular" in ntype.labels)
    return report


def _combined_rank(comps, w: WeilPolynomial, exponent_bound: int):
    """Rank of a product from the unit-group collapse rules.

    Returns (rank or None, source, notes); rank None with source 'oracle'
    when the shared-subfield theorems do not determine the value (the
    caller then adopts the certified oracle's value and flags it).
    """
    notes = []
    active = [c for c in comps if not c.supersingular]
    if not active:
        return 0, "theorem", notes
    quad = [c for c in active if c.pmin.degree == 2]
    quartic = [c for c in active if c.pmin.degree == 4 and c.e == 1]
    other = [c for c in active if c not in quad and c not in quartic]
    if other:
        # sextic components cannot occur in a g <= 3 product; defensive
        return None, "oracle", ["oracle_decided:unexpected_component"]
    classes: dict[int, list] = {}
    for c in quad:
        classes.setdefault(c.cm_disc, []).append(c)
    k = len(classes)
    if not quartic:
        if k == 1:
            return 1, "theorem", notes
        if k == 2:
            return 2, "theorem", notes
        notes.append("oracle_decided:three_distinct_cm_fields")
        return None, "oracle", notes
    # exactly one quartic (degrees forbid two) plus at most one quad class
    surface = quartic[0]
    if k == 0:
        return 2, "theorem", notes
    m = next(iter(classes))
    collapse = False
    cf = conjugate_split(surface.pmin, m)
    if cf is not None and not norm_condition(cf, w.q):
        # shared field with non-torsion norm: the elliptic factor adds nothing
        collapse = True
    return (2 if collapse else 3), "theorem", notes


def classify_auto(
    w: WeilPolynomial,
    exponent_bound: int = 20,
    force_oracle: bool = False,
) -> ClassificationReport:
    """Extend to a sufficiently large field first, then classify.

    The report records which field the verdict refers to: `extension_from`
    holds the original q and the degree applied.
    """
    n = sufficiency_degree(w)
    wn = base_change(w, n)
    report = classify(wn, exponent_bound=exponent_bound, force_oracle=force_oracle)
    return ClassificationReport(
        **{
            **report.__dict__,
            "sufficiency_degree": n,
            "extension_from": (w.q, n),
        }
    )


# -- theorem-level diagnostics ----------------------------------------------


@dataclass(frozen=True)
class TheoremDiagnostics:
    """Consistency findings; a contradiction entry means an implementation bug."""

    inert_subfield: tuple[dict, ...]
    slope_parity: dict | None
    product_collapse: dict | None
    contradictions: tuple[str, ...]


def theorem_diagnostics(w: WeilPolynomial, exponent_bound: int = 20) -> TheoremDiagnostics:
    """Evaluate the non-split-subfield, slope-parity, and collapse criteria.

    (a) simple with an imaginary quadratic subfield in which p does not
    split: the relative norm of q^(-1) Fr^2 must be 1 and the rank must
    drop below the pair count; (b) simple, irreducible, two slopes
    {c, 1-c} with c != 1/2 and rank = g - 1 forces g even; (c) for a pair
    of simple non-supersingular components whose product rank collapses by
    one, a shared imaginary quadratic field with p split and non-torsion
    norms must exist.  Necessary-only directions are reported as such.
    """
    from .subfields import p_splits

    _require_sufficient(w)
    decomp = eigenvalue_structure(w)
    rk = oracle_rank(w, exponent_bound=exponent_bound)
    contradictions: list[str] = []
    inert_checks: list[dict] = []
    slope_parity = None
    product_collapse = None

    if decomp.simple:
        pmin = decomp.components[0].pmin
        d = decomp.components[0].pmin.degree // 2
        if pmin.degree >= 2 and pmin.degree % 2 == 0:
            for cf in conjugate_factorizations(pmin):
                split = p_splits(cf.m, w.p)
                if split == "split":
                    continue
                norm_one = norm_condition(cf, w.q)
                rank_lt_d = rk.rank < d
                check = {
                    "m": cf.m,
                    "p_splitting": split,
                    "norm_is_one": norm_one,
                    "rank": rk.rank,
                    "pair_count": d,
                    "consistent": norm_one and (d <= 1 or rank_lt_d),
                }
                inert_checks.append(check)
                if not check["consistent"]:
                    contradictions.append(f"inert_subfield:m={cf.m}")
        polygon = newton_polygon(w)
        slopes = set(polygon.slopes)
        if (
            decomp.components[0].e == 1
            and len(slopes) == 2
            and Fraction(1, 2) not in slopes
        ):
            ok = not (rk.rank == w.g - 1 and w.g % 2 == 1)
            slope_parity = {"rank": rk.rank, "g": w.g, "consistent": ok}
            if not ok:
                contradictions.append("slope_parity")
    else:
        active = [
            c
            for c in decomp.components
            if not _component_report(c.pmin, c.e, w).supersingular
        ]
        if len(active) == 2:
            # component ranks from pair counts (both components neat: g <= 2)
            r_parts = [_component_report(c.pmin, c.e, w).d for c in active]
            collapsed = rk.rank == sum(r_parts) - 1
            shared = None
            if collapsed:
                sub0 = _imaginary_fields(active[0].pmin)
                sub1 = _imaginary_fields(active[1].pmin)
                shared_ms = sorted(set(sub0) & set(sub1), key=abs)
                for m in shared_ms:
                    from .subfields import p_splits as _ps

                    shared = {
                        "m": m,
                        "p_splits": _ps(m, w.p),
                    }
                    break
                if shared is None:
                    contradictions.append("product_collapse:no_shared_field")
            product_collapse = {
                "component_ranks": r_parts,
                "product_rank": rk.rank,
                "collapsed_by_one": collapsed,
                "shared_field": shared,
            }
    return TheoremDiagnostics(
        inert_subfield=tuple(inert_checks),
        slope_parity=slope_parity,
        product_collapse=product_collapse,
        contradictions=tuple(contradictions),
    )


def _imaginary_fields(pmin: IntPoly):
    if pmin.degree == 2:
        disc = squarefree_part(pmin.coeffs[1] ** 2 - 4 * pmin.coeffs[0])
        return [disc] if disc < 0 else []
    if pmin.degree % 2 == 0 and pmin.degree >= 4:
        return [cf.m for cf in conjugate_factorizations(pmin)]
    return []


@dataclass(frozen=True)
class FourfoldDiagnostic:
    decomposition: tuple[tuple[IntPoly, int], ...]
    newton_primary: str
    oracle: OracleRank
    rank_is_three: bool
    quadratic_subfield_in_component: bool
    non_neat_threefold_component: bool


def fourfold_diagnostic(w: WeilPolynomial, exponent_bound: int = 20) -> FourfoldDiagnostic:
    """Informational report for g = 4: decomposition, polygon, oracle rank.

    When the rank is 3, reports whether some component's CM field contains
    an imaginary quadratic subfield, and whether the variety decomposes as
    (non-neat almost-ordinary threefold) x (ordinary elliptic curve).  No
    neatness verdict is issued in dimension 4.
    """
    if w.g != 4:
        raise PreconditionViolation("fourfold diagnostic needs g = 4")
    _require_sufficient(w)
    decomp = eigenvalue_structure(w)
    polygon = newton_polygon(w)
    ntype = classify_newton(polygon, w.g)
    rk = oracle_rank(w, exponent_bound=exponent_bound)
    has_quad = False
    non_neat_threefold = False
    if rk.rank == 3:
        for c in decomp.components:
            if c.pmin.degree % 2 == 0 and c.pmin.degree >= 2:
                if _imaginary_fields(c.pmin):
                    has_quad = True
                    break
        sextics = [c for c in decomp.components if c.pmin.degree == 6 and c.e == 1]
        elliptics = [c for c in decomp.components if c.pmin.degree == 2 and c.e == 1]
        if len(sextics) == 1 and len(elliptics) == 1 and len(decomp.components) == 2:
            sub = validate(sextics[0].pmin, w.q)
            sub_report = classify(sub, exponent_bound=exponent_bound)
            non_neat_threefold = not sub_report.neat
    return FourfoldDiagnostic(
        decomposition=tuple((c.pmin, c.e) for c in decomp.components),
        newton_primary=ntype.primary,
        oracle=rk,
        rank_is_three=rk.rank == 3,
        quadratic_subfield_in_component=has_quad,
        non_neat_threefold_component=non_neat_threefold,
    )
