"""Exact root transforms and cyclotomic detection.

Each transform produces the integer polynomial whose roots are images of
the input roots (n-th powers, pairwise products, pairwise ratios), with
multiplicity.  The values of the target polynomial at integer points are
resultants of the inputs, so evaluation at enough points followed by exact
interpolation recovers the transform without ever leaving Z.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import PreconditionViolation
from .intfactor import factor_int
from .poly import (
    IntPoly,
    fractions_to_intpoly,
    lagrange_interpolate,
    resultant_monic_left,
)

__all__ = [
    "power_transform",
    "product_transform",
    "ratio_transform",
    "cyclotomic_polynomial",
    "cyclotomic_order",
    "cyclotomic_part_orders",
    "euler_phi",
]


def _interp_int_monic(degree, value_at):
    """Interpolate a monic degree-`degree` integer polynomial from values."""
    pts = [(k, value_at(k)) for k in range(degree + 1)]
    coeffs = lagrange_interpolate(pts)
    assert all(c.denominator == 1 for c in coeffs), "transform left Z[t]"
    out = IntPoly([int(c) for c in coeffs])
    assert out.is_monic and out.degree == degree
    return out


def power_transform(f: IntPoly, n: int) -> IntPoly:
    """Monic polynomial whose roots are the n-th powers of the roots of f.

    Computed as the resultant Res_x(f(x), t - x^n) evaluated at integer
    points and interpolated; multiplicities carry over.
    """
    if not f.is_monic:
        raise PreconditionViolation("power transform needs a monic polynomial")
    if n <= 0:
        raise PreconditionViolation("power must be positive")
    if n == 1 or f.degree == 0:
        return f
    d = f.degree
    # Res_x(f, k - x^n) = prod over roots alpha of (k - alpha^n)
    xn = IntPoly([0] * n + [1])

    def value(k):
        return resultant_monic_left(f, IntPoly([k]) - xn)

    return _interp_int_monic(d, value)


def product_transform(f: IntPoly, g: IntPoly) -> IntPoly:
    """Monic polynomial with root multiset {alpha * beta} over root pairs."""
    if not (f.is_monic and g.is_monic):
        raise PreconditionViolation("product transform needs monic inputs")
    if f.degree == 0 or g.degree == 0:
        return IntPoly([1])
    d, m = f.degree, g.degree
    gc = g.coeffs

    def value(k):
        # x^m g(k/x) evaluated coefficient-wise: sum_j g_j k^j x^(m-j)
        ev = [0] * (m + 1)
        kj = 1
        for j in range(m + 1):
            ev[m - j] = gc[j] * kj
            kj *= k
        return resultant_monic_left(f, IntPoly(ev))

    return _interp_int_monic(d * m, value)


def ratio_transform(f: IntPoly, g: IntPoly) -> IntPoly:
    """Primitive integer polynomial with root multiset {alpha / beta}.

    alpha runs over roots of f, beta over roots of g (g(0) != 0).  Ratios of
    algebraic integers need not be algebraic integers, so the result is the
    primitive integer polynomial proportional to prod (t - alpha/beta); its
    leading coefficient can exceed one.
    """
    if not (f.is_monic and g.is_monic):
        raise PreconditionViolation("ratio transform needs monic inputs")
    if g.coeffs[0] == 0:
        raise PreconditionViolation("ratio transform needs g(0) != 0")
    if f.degree == 0 or g.degree == 0:
        return IntPoly([1])
    d, m = f.degree, g.degree
    # prod_beta f(k*beta) = ((-1)^m g(0))^d * prod (k - alpha/beta)
    norm = ((-1) ** m * g.coeffs[0]) ** d
    values = []
    for k in range(d * m + 1):
        fk = f.scale_argument(k)
        values.append((k, Fraction(resultant_monic_left(g, fk), norm)))
    coeffs = lagrange_interpolate(values)
    return fractions_to_intpoly(coeffs)


# -- cyclotomic machinery --------------------------------------------------


def euler_phi(n: int) -> int:
    if n < 1:
        raise PreconditionViolation("phi of nonpositive integer")
    out = 1
    for p, e in factor_int(n).items():
        out *= (p - 1) * p ** (e - 1)
    return out if n > 1 else 1


_CYCLO_CACHE: dict[int, IntPoly] = {}


def cyclotomic_polynomial(n: int) -> IntPoly:
    """The n-th cyclotomic polynomial, computed by iterated exact division."""
    if n < 1:
        raise PreconditionViolation("cyclotomic index must be positive")
    cached = _CYCLO_CACHE.get(n)
    if cached is not None:
        return cached
    poly = IntPoly([-1] + [0] * (n - 1) + [1])  # t^n - 1
    for d in range(1, n):
        if n % d == 0:
            poly = poly.exact_div(cyclotomic_polynomial(d))
    _CYCLO_CACHE[n] = poly
    return poly


def cyclotomic_order(f: IntPoly):
    """n when f is the n-th cyclotomic polynomial, else None.

    Enumerate the finitely many n with phi(n) = deg f (phi(n) >= sqrt(n/2)
    bounds the search) and compare exactly.
    """
    d = f.degree
    if d < 1 or not f.is_monic:
        return None
    for n in range(1, 2 * d * d + 3):
        if euler_phi(n) == d and f == cyclotomic_polynomial(n):
            return n
    return None


_FILTER_PRIME = (1 << 61) - 1


def _divisible_mod_prime(f: IntPoly, g: IntPoly, p: int) -> bool:
    """Quick necessary test: g | f mod p (g monic, p large prime)."""
    rem = [c % p for c in f.coeffs]
    d = g.degree
    if len(rem) - 1 < d:
        return False
    for i in range(len(rem) - 1, d - 1, -1):
        c = rem[i]
        if c:
            for j, gc in enumerate(g.coeffs):
                rem[i - d + j] = (rem[i - d + j] - c * gc) % p
    return all(c % p == 0 for c in rem[:d])


def cyclotomic_part_orders(f: IntPoly) -> set[int]:
    """All n with the n-th cyclotomic polynomial dividing f.

    Candidates are the n with phi(n) <= deg f; a single large-prime modular
    division filters them before the exact division confirms.
    """
    if f.is_zero:
        raise PreconditionViolation("zero polynomial")
    d = f.degree
    if d < 1:
        return set()
    out = set()
    for n in range(1, 2 * d * d + 3):
        phi = euler_phi(n)
        if phi > d:
            continue
        cyc = cyclotomic_polynomial(n)
        if _divisible_mod_prime(f, cyc, _FILTER_PRIME) and cyc.divides(f):
            out.add(n)
    return out
