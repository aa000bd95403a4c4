"""Weil q-polynomials: validation, eigenvalue structure, base change.

A Weil q-polynomial is a monic integer polynomial of degree 2g whose roots
all have absolute value q^(1/2).  Validation is fully exact: the functional
equation is checked coefficient-wise, and the absolute-value condition is
reduced to real-rootedness plus a range check on an auxiliary polynomial,
both decided by Sturm counts.  The validator is the root of trust for
everything downstream.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    FunctionalEquationFails,
    NotMonic,
    NotPrimePower,
    OddDegree,
    PreconditionViolation,
    RiemannHypothesisFails,
)
from .exactcore import (
    IntPoly,
    cyclotomic_part_orders,
    factor_over_integers,
    is_perfect_square,
    power_transform,
    prime_power,
    ratio_transform,
    sturm_real_root_count,
)
from .exactcore.poly import squarefree_part as poly_squarefree_part

__all__ = [
    "WeilPolynomial",
    "EigenvalueStructure",
    "EigenvalueDecomposition",
    "validate",
    "trace_polynomial",
    "eigenvalue_structure",
    "base_change",
    "ratio_torsion_orders",
    "beta_polynomial",
    "beta_torsion_orders",
    "has_unresolved_square_roots",
]


@dataclass(frozen=True)
class WeilPolynomial:
    """A validated Weil q-polynomial.  Construct through `validate`."""

    poly: IntPoly
    q: int
    p: int
    v: int
    g: int

    def __str__(self):
        return f"{self.poly} over F_{self.q}"


def trace_polynomial(poly: IntPoly, q: int) -> IntPoly:
    """The degree-g polynomial h with P(t) = t^g h(t + q/t).

    Exists exactly when the functional equation holds; built through the
    basis D_k(x) = t^k + (q/t)^k, D_0 = 2, D_1 = x, D_k = x D_(k-1) - q D_(k-2).
    Its roots are alpha + q/alpha, the "real traces" of the root pairs.
    """
    n = poly.degree
    if n % 2:
        raise OddDegree("trace polynomial needs even degree")
    g = n // 2
    a = poly.coeffs
    d_prev = IntPoly([2])
    d_cur = IntPoly([0, 1])
    h = IntPoly([a[g]])
    for k in range(1, g + 1):
        h = h + a[g + k] * d_cur
        d_prev, d_cur = d_cur, IntPoly([0, 1]) * d_cur - q * d_prev
    return h


def _expand_trace(h: IntPoly, q: int, g: int) -> IntPoly:
    """t^g h(t + q/t) as an integer polynomial (degree 2g)."""
    out = IntPoly()
    base = IntPoly([q, 0, 1])  # t^2 + q
    for k, c in enumerate(h.coeffs):
        out = out + (c * base**k).shift(g - k)
    return out


def validate(poly: IntPoly, q: int) -> WeilPolynomial:
    """Check that (poly, q) is a Weil q-polynomial; raise naming the failure.

    Checks, in order: monic; even degree >= 2; q a prime power; functional
    equation t^(2g) P(q/t) = q^g P(t) coefficient-wise; and the exact
    absolute-value condition via the trace polynomial h — all roots of h
    real (Sturm count on the squarefree part) and inside [-2 sqrt(q),
    2 sqrt(q)] (no negative roots of prod (y - (4q - r^2))).
    """
    if poly.is_zero or not poly.is_monic:
        raise NotMonic("polynomial must be monic")
    n = poly.degree
    if n < 2 or n % 2:
        raise OddDegree(f"degree must be even and >= 2, got {n}")
    pp = prime_power(q)
    if pp is None:
        raise NotPrimePower(f"q = {q} is not a prime power")
    p, v = pp
    g = n // 2
    a = poly.coeffs
    for j in range(g):
        if a[j] != q ** (g - j) * a[n - j]:
            raise FunctionalEquationFails(j)
    h = trace_polynomial(poly, q)
    assert _expand_trace(h, q, g) == poly
    hsf = poly_squarefree_part(h)
    real_count = sturm_real_root_count(hsf)
    if real_count != hsf.degree:
        raise RiemannHypothesisFails(
            f"trace polynomial has {hsf.degree - real_count} non-real root pair(s)"
        )
    # H(y) = prod over roots r of h of (y - (4q - r^2)) = (-1)^g u(4q - y)
    # where u has roots r^2; RH needs every 4q - r^2 >= 0.
    u = power_transform(hsf, 2)
    lin = IntPoly([4 * q, -1])
    comp = IntPoly()
    for c in reversed(u.coeffs):
        comp = comp * lin + IntPoly([c])
    big_h = comp if hsf.degree % 2 == 0 else -comp
    hh = poly_squarefree_part(big_h)
    neg = sturm_real_root_count(hh, None, Fraction(0))
    if hh.evaluate(0) == 0:
        neg -= 1
    if neg != 0:
        raise RiemannHypothesisFails(
            f"{neg} root pair(s) exceed absolute value sqrt({q})"
        )
    return WeilPolynomial(poly=poly, q=q, p=p, v=v, g=g)


@dataclass(frozen=True)
class EigenvalueStructure:
    """Eigenvalue data of one irreducible factor.

    pmin: the irreducible factor; e: its multiplicity in P; r_count: number
    of distinct roots it contributes; d: number of two-element orbits of
    the pairing alpha <-> q/alpha; sqrt_root: which of +-sqrt(q) occur among
    its roots ('none' / 'plus' / 'minus' / 'both').
    """

    pmin: IntPoly
    e: int
    r_count: int
    d: int
    sqrt_root: str


@dataclass(frozen=True)
class EigenvalueDecomposition:
    components: tuple[EigenvalueStructure, ...]
    simple: bool

    @property
    def pmin(self) -> IntPoly:
        """Minimal polynomial of Frobenius: product of the distinct factors."""
        out = IntPoly([1])
        for c in self.components:
            out = out * c.pmin
        return out

    @property
    def end_rank(self) -> int:
        """rank of End(X) = sum of multiplicity^2 over distinct roots."""
        return sum(c.r_count * c.e * c.e for c in self.components)

    @property
    def sqrt_root(self) -> str:
        seen = {c.sqrt_root for c in self.components} - {"none"}
        if not seen:
            return "none"
        if seen == {"plus"}:
            return "plus"
        if seen == {"minus"}:
            return "minus"
        return "both"

    @property
    def r_count(self) -> int:
        return sum(c.r_count for c in self.components)


def _factor_structure(pmin: IntPoly, e: int, w: WeilPolynomial) -> EigenvalueStructure:
    q = w.q
    fixed = 0
    sqrt_root = "none"
    if pmin.degree == 1:
        s = -pmin.coeffs[0]
        if s * s == q:
            fixed = 1
            sqrt_root = "plus" if s > 0 else "minus"
    elif pmin == IntPoly([-q, 0, 1]):
        # irreducible t^2 - q: both square roots, irrational
        fixed = 2
        sqrt_root = "both"
    r = pmin.degree
    assert (r - fixed) % 2 == 0
    return EigenvalueStructure(
        pmin=pmin, e=e, r_count=r, d=(r - fixed) // 2, sqrt_root=sqrt_root
    )


def eigenvalue_structure(w: WeilPolynomial) -> EigenvalueDecomposition:
    """Factor P and report the pairing structure of each component.

    For simple varieties P = pmin^e with pmin irreducible; otherwise every
    irreducible factor is reported (each factor's root set is itself closed
    under alpha -> q/alpha, because q/alpha is the complex conjugate).
    """
    factors = factor_over_integers(w.poly)
    comps = tuple(_factor_structure(f, m, w) for f, m in factors)
    return EigenvalueDecomposition(components=comps, simple=len(comps) == 1)


def base_change(w: WeilPolynomial, n: int) -> WeilPolynomial:
    """The Weil polynomial over F_(q^n): roots raised to the n-th power.

    Applies the power transform factor by factor so multiplicities carry
    over, then revalidates (which must succeed: both defining conditions
    are preserved under alpha -> alpha^n).
    """
    if n <= 0:
        raise PreconditionViolation("extension degree must be positive")
    if n == 1:
        return w
    out = IntPoly([1])
    for f, m in factor_over_integers(w.poly):
        out = out * power_transform(f, n) ** m
    return validate(out, w.q**n)


def ratio_torsion_orders(w: WeilPolynomial) -> frozenset[int]:
    """Orders of roots of unity among ratios of distinct eigenvalues.

    Builds the ratio transform of the squarefree part against itself,
    strips the (t-1)^r factor contributed by the trivial ratios alpha/alpha,
    and collects the orders of the cyclotomic factors of what remains.
    Empty exactly when the base field is "clean" for pairwise ratios.
    """
    sf = poly_squarefree_part(w.poly)
    if sf.degree <= 1:
        return frozenset()
    ratios = ratio_transform(sf, sf)
    ratios = ratios.exact_div(IntPoly([-1, 1]) ** sf.degree)
    orders = {n for n in cyclotomic_part_orders(ratios) if n > 1}
    return frozenset(orders)


def beta_polynomial(w: WeilPolynomial) -> IntPoly:
    """Primitive integer polynomial whose roots are q^(-1) alpha^2.

    One root per distinct eigenvalue; torsion among these is the other
    ingredient (besides pairwise ratio torsion) of the sufficiency test.
    """
    sf = poly_squarefree_part(w.poly)
    squares = power_transform(sf, 2)
    return squares.scale_argument(w.q).primitive_part()


def beta_torsion_orders(w: WeilPolynomial) -> frozenset[int]:
    """Orders n > 1 of roots of unity among the q^(-1) alpha^2."""
    beta = beta_polynomial(w)
    return frozenset(n for n in cyclotomic_part_orders(beta) if n > 1)


def has_unresolved_square_roots(w: WeilPolynomial) -> bool:
    """True when both +sqrt(q) and -sqrt(q) occur as eigenvalues.

    Such polynomials validate but cannot be classified until a base change
    removes the -1 ratio (the field is not sufficiently large).
    """
    if is_perfect_square(w.q):
        from math import isqrt

        s = isqrt(w.q)
        return w.poly.evaluate(s) == 0 and w.poly.evaluate(-s) == 0
    # irrational square roots come paired inside a t^2 - q factor
    rem = w.poly.mod_monic(IntPoly([-w.q, 0, 1]))
    return rem.is_zero
