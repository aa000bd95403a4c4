"""Dense integer polynomials with exact arithmetic.

Coefficients are stored ascending (constant term first) with no trailing
zeros; the zero polynomial has an empty coefficient tuple and degree -1.
Everything here is pure integer / rational arithmetic: no floating point
enters any computation in this module.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt, lcm

from ..errors import PreconditionViolation

__all__ = [
    "IntPoly",
    "poly_gcd",
    "squarefree_part",
    "squarefree_decomposition",
    "resultant",
    "resultant_monic_left",
    "sylvester_resultant",
    "discriminant",
    "sturm_real_root_count",
    "lagrange_interpolate",
    "fractions_to_intpoly",
    "sqrt_upper",
    "sqrt_lower",
]


def _strip(coeffs):
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


class IntPoly:
    """Immutable dense polynomial over the integers."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        object.__setattr__(self, "coeffs", _strip([int(c) for c in coeffs]))

    def __setattr__(self, name, value):
        raise AttributeError("IntPoly is immutable")

    # -- basic structure -------------------------------------------------

    @property
    def degree(self):
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self):
        return not self.coeffs

    @property
    def leading(self):
        if not self.coeffs:
            raise PreconditionViolation("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    @property
    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __eq__(self, other):
        return isinstance(other, IntPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"IntPoly({list(self.coeffs)})"

    def __str__(self):
        if self.is_zero:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                mon = "t" if i == 1 else f"t^{i}"
                if c == 1:
                    parts.append(mon)
                elif c == -1:
                    parts.append(f"-{mon}")
                else:
                    parts.append(f"{c}*{mon}")
        out = parts[-1]
        for p in reversed(parts[:-1]):
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    # -- ring operations -------------------------------------------------

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPoly(out)

    def __neg__(self):
        return IntPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPoly([c * other for c in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPoly()
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise PreconditionViolation("negative polynomial power")
        result = IntPoly([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k):
        """Multiply by t^k."""
        if self.is_zero:
            return self
        return IntPoly((0,) * k + self.coeffs)

    def derivative(self):
        return IntPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def evaluate(self, x):
        """Horner evaluation; exact for int or Fraction arguments."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def reversed_coeffs(self):
        """t^deg * f(1/t); drops root multiplicity at zero."""
        return IntPoly(tuple(reversed(self.coeffs)))

    def scale_argument(self, a):
        """f(a*t) for integer a."""
        return IntPoly([c * a**i for i, c in enumerate(self.coeffs)])

    # -- content and division --------------------------------------------

    def content(self):
        """Positive gcd of coefficients; 0 for the zero polynomial."""
        g = 0
        for c in self.coeffs:
            g = _gcd_int(g, c)
            if g == 1:
                return 1
        return g

    def primitive_part(self):
        """Content removed, leading coefficient made positive."""
        if self.is_zero:
            return self
        g = self.content()
        if self.coeffs[-1] < 0:
            g = -g
        return IntPoly([c // g for c in self.coeffs])

    def divmod_exact(self, other):
        """Quotient and remainder when the division stays in Z[t].

        Requires the leading coefficient of `other` to divide exactly at
        every step (always true for monic divisors); raises otherwise.
        """
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        d = other.degree
        lc = other.leading
        if len(rem) - 1 < d:
            return IntPoly(), self
        quot = [0] * (len(rem) - d)
        for i in range(len(rem) - 1, d - 1, -1):
            if rem[i] == 0:
                continue
            q, r = divmod(rem[i], lc)
            if r != 0:
                raise PreconditionViolation("division leaves the integers")
            quot[i - d] = q
            for j, c in enumerate(other.coeffs):
                rem[i - d + j] -= q * c
        return IntPoly(quot), IntPoly(rem)

    def divides(self, other):
        """True if self divides other exactly over the rationals times Z."""
        if self.is_zero:
            return other.is_zero
        q, r = _frac_divmod(other, self)
        if not all(c == 0 for c in r):
            return False
        return all(c.denominator == 1 for c in q)

    def exact_div(self, other):
        """self / other, requiring an exact integer quotient."""
        q, r = _frac_divmod(self, other)
        if not all(c == 0 for c in r) or not all(c.denominator == 1 for c in q):
            raise PreconditionViolation("inexact polynomial division")
        return IntPoly([int(c) for c in q])

    def mod_monic(self, modulus):
        """Remainder modulo a monic polynomial; stays in Z[t]."""
        if not modulus.is_monic:
            raise PreconditionViolation("modulus must be monic")
        _, r = self.divmod_exact(modulus)
        return r


def _gcd_int(a, b):
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


def _frac_divmod(f, g):
    """Division of f by g over Q; returns (quotient, remainder) coefficient lists."""
    rem = [Fraction(c) for c in f.coeffs]
    gc = [Fraction(c) for c in g.coeffs]
    d = len(gc) - 1
    lc = gc[-1]
    if len(rem) - 1 < d:
        return [], rem
    quot = [Fraction(0)] * (len(rem) - d)
    for i in range(len(rem) - 1, d - 1, -1):
        if rem[i] == 0:
            continue
        q = rem[i] / lc
        quot[i - d] = q
        for j, c in enumerate(gc):
            rem[i - d + j] -= q * c
    return quot, [c for c in rem[:d]] if d else []


def poly_gcd(f: IntPoly, g: IntPoly) -> IntPoly:
    """Primitive gcd over Z with positive leading coefficient.

    Primitive pseudo-remainder sequence; coefficient growth is tamed by
    taking primitive parts at every step, which is plenty at the degrees
    this package handles.
    """
    if f.is_zero:
        return g.primitive_part()
    if g.is_zero:
        return f.primitive_part()
    a, b = f.primitive_part(), g.primitive_part()
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero:
        r = _pseudo_rem(a, b)
        a, b = b, r.primitive_part()
    return a.primitive_part()


def _pseudo_rem(f, g):
    """lc(g)^(deg f - deg g + 1) * f mod g, computed over Z."""
    rem = list(f.coeffs)
    d = g.degree
    lc = g.leading
    steps = len(rem) - 1 - d + 1
    if steps <= 0:
        return f
    for i in range(len(rem) - 1, d - 1, -1):
        c = rem[i]
        for j in range(len(rem)):
            rem[j] *= lc
        if c:
            for j, gc in enumerate(g.coeffs):
                rem[i - d + j] -= c * gc
        rem[i] = 0
    return IntPoly(rem[:d] if d else [])


def squarefree_part(f: IntPoly) -> IntPoly:
    """Product of the distinct irreducible factors, primitive, positive lc."""
    if f.is_zero:
        raise PreconditionViolation("zero polynomial")
    if f.degree == 0:
        return IntPoly([1])
    g = poly_gcd(f, f.derivative())
    return f.primitive_part().exact_div(g)


def squarefree_decomposition(f: IntPoly):
    """Yun decomposition: list of (squarefree factor, multiplicity).

    The product of factor^multiplicity equals f up to content and sign.
    Constant factors are dropped.
    """
    if f.is_zero:
        raise PreconditionViolation("zero polynomial")
    f = f.primitive_part()
    if f.degree == 0:
        return []
    out = []
    df = f.derivative()
    a = poly_gcd(f, df)
    b = f.exact_div(a)
    c = df.exact_div(a)
    d = c - b.derivative()
    i = 1
    while True:
        if b.degree == 0:
            break
        a = poly_gcd(b, d)
        if a.degree > 0:
            out.append((a, i))
        b = b.exact_div(a)
        d = d.exact_div(a) - b.derivative()
        i += 1
    return out


# -- resultants ----------------------------------------------------------


def resultant(f: IntPoly, g: IntPoly) -> int:
    """Resultant with the Sylvester-determinant sign convention.

    res(f, g) = lc(f)^deg(g) * prod g(alpha) over the roots alpha of f.
    """
    if f.is_zero or g.is_zero:
        raise PreconditionViolation("resultant of zero polynomial")
    r = _res_frac(f, g)
    assert r.denominator == 1
    return int(r)


def _res_frac(f, g):
    a, b = f.degree, g.degree
    if a == 0:
        return Fraction(f.coeffs[0] ** b)
    if b == 0:
        return Fraction(g.coeffs[0] ** a)
    if a < b:
        return Fraction(-1) ** (a * b) * _res_frac(g, f)
    # res(f, g) = (-1)^(ab) lc(g)^(deg f - deg r) res(g, r) for r = f mod g,
    # with the pseudo-remainder scaling divided back out.
    r = _pseudo_rem(f, g)
    lcg = g.leading
    if r.is_zero:
        return Fraction(0)
    dr = r.degree
    scale = Fraction(lcg) ** (a - dr) / Fraction(lcg) ** ((a - b + 1) * b)
    return Fraction(-1) ** (a * b) * scale * _res_frac(g, r)


def resultant_monic_left(f: IntPoly, g: IntPoly) -> int:
    """prod g(alpha) over roots of monic f, with multiplicity.

    Equals res(f, g); reduces g modulo f first so sparse high-degree g
    (powers of t) stays cheap.
    """
    if not f.is_monic:
        raise PreconditionViolation("left operand must be monic")
    if g.is_zero:
        return 0
    if f.degree == 0:
        return 1
    reduced = g.mod_monic(f)
    if reduced.is_zero:
        return 0
    if reduced.degree == 0:
        return reduced.coeffs[0] ** f.degree
    return resultant(f, reduced)


def discriminant(f: IntPoly) -> int:
    """disc(f) = (-1)^(n(n-1)/2) res(f, f') / lc(f)."""
    n = f.degree
    if n < 1:
        raise PreconditionViolation("discriminant needs degree >= 1")
    if n == 1:
        return 1
    r = resultant(f, f.derivative())
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    val, rem = divmod(sign * r, f.leading)
    assert rem == 0
    return val


def sylvester_resultant(f: IntPoly, g: IntPoly) -> int:
    """Resultant as a fraction-free (Bareiss) Sylvester determinant.

    Independent of the remainder-sequence path; kept as the cross-check
    oracle for `resultant`.
    """
    m, n = f.degree, g.degree
    if m < 0 or n < 0:
        raise PreconditionViolation("resultant of zero polynomial")
    size = m + n
    if size == 0:
        return 1
    fc = list(reversed(f.coeffs))
    gc = list(reversed(g.coeffs))
    rows = []
    for i in range(n):
        rows.append([0] * i + fc + [0] * (n - 1 - i))
    for i in range(m):
        rows.append([0] * i + gc + [0] * (m - 1 - i))
    # Bareiss elimination with exact divisions.
    prev = 1
    sign = 1
    for k in range(size - 1):
        if rows[k][k] == 0:
            pivot = next((r for r in range(k + 1, size) if rows[r][k] != 0), None)
            if pivot is None:
                return 0
            rows[k], rows[pivot] = rows[pivot], rows[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                rows[i][j] = (rows[i][j] * rows[k][k] - rows[i][k] * rows[k][j]) // prev
            rows[i][k] = 0
        prev = rows[k][k]
    return sign * rows[size - 1][size - 1]


# -- Sturm chains --------------------------------------------------------


def _primitive_keep_sign(p: IntPoly) -> IntPoly:
    """Divide out the (positive) content without touching the sign."""
    if p.is_zero:
        return p
    g = p.content()
    return IntPoly([c // g for c in p.coeffs])


def _sturm_chain(f: IntPoly):
    """Sturm sequence over Q, entries scaled by positive rationals to Z[t]."""
    chain = [_primitive_keep_sign(f)]
    d = f.derivative()
    if not d.is_zero:
        chain.append(_primitive_keep_sign(d))
        while chain[-1].degree > 0:
            a, b = chain[-2], chain[-1]
            r = _pseudo_rem(a, b)
            if r.is_zero:
                break
            # prem scales the true remainder by lc(b)^(delta+1); when that
            # factor is negative the sign must be flipped back before negating
            delta = a.degree - b.degree
            scale_negative = b.leading < 0 and (delta + 1) % 2 == 1
            nxt = r if scale_negative else -r
            chain.append(_primitive_keep_sign(nxt))
    return chain


def _sign_at(poly: IntPoly, x):
    if x == "-inf":
        if poly.is_zero:
            return 0
        lc = poly.leading
        return lc if poly.degree % 2 == 0 else -lc
    if x == "+inf":
        return 0 if poly.is_zero else poly.leading
    v = poly.evaluate(x)
    return v


def _variations(chain, x):
    signs = []
    for p in chain:
        s = _sign_at(p, x)
        s = (s > 0) - (s < 0)
        if s != 0:
            signs.append(s)
    var = 0
    for a, b in zip(signs, signs[1:]):
        if a != b:
            var += 1
    return var


def sturm_real_root_count(f: IntPoly, lo=None, hi=None) -> int:
    """Exact count of distinct real roots of f in (lo, hi].

    `lo`/`hi` may be ints, Fractions, or None for -/+ infinity.  The caller
    is expected to pass a squarefree polynomial; a repeated-root input with
    a root sitting at a finite endpoint is rejected, every other input is
    counted correctly (multiplicity collapses to one).
    """
    if f.is_zero:
        raise PreconditionViolation("zero polynomial")
    if f.degree == 0:
        return 0
    chain = _sturm_chain(f)
    if chain[-1].degree > 0:
        for endpoint in (lo, hi):
            if endpoint is not None and f.evaluate(endpoint) == 0:
                raise PreconditionViolation(
                    "non-squarefree input with a root at an endpoint"
                )
    lo_key = "-inf" if lo is None else Fraction(lo)
    hi_key = "+inf" if hi is None else Fraction(hi)
    if lo_key != "-inf" and hi_key != "+inf" and lo_key >= hi_key:
        return 0
    # dropping zero entries evaluates the variation count just above the
    # point, so V(lo+) - V(hi+) counts roots in the half-open (lo, hi]
    return _variations(chain, lo_key) - _variations(chain, hi_key)


# -- interpolation and rational square roots ------------------------------


def lagrange_interpolate(points):
    """Exact polynomial through (x, y) pairs; returns Fraction coefficients."""
    coeffs = [Fraction(0)] * len(points)
    for i, (xi, yi) in enumerate(points):
        # numerator polynomial prod_{j != i} (t - xj), built incrementally
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            denom *= xi - xj
            new = [Fraction(0)] * (len(basis) + 1)
            for k, c in enumerate(basis):
                new[k] -= c * xj
                new[k + 1] += c
            basis = new
        w = Fraction(yi) / denom
        for k, c in enumerate(basis):
            coeffs[k] += w * c
    return coeffs


def fractions_to_intpoly(coeffs) -> IntPoly:
    """Clear denominators to the primitive integer polynomial, positive lc."""
    denom = 1
    for c in coeffs:
        denom = lcm(denom, Fraction(c).denominator)
    ints = [int(Fraction(c) * denom) for c in coeffs]
    return IntPoly(ints).primitive_part()


def sqrt_upper(x: Fraction) -> Fraction:
    """A rational upper bound for sqrt(x), x >= 0."""
    if x < 0:
        raise PreconditionViolation("negative radicand")
    if x == 0:
        return Fraction(0)
    num, den = x.numerator, x.denominator
    r = isqrt(num * den)
    if r * r < num * den:
        r += 1
    return Fraction(r, den)


def sqrt_lower(x: Fraction) -> Fraction:
    """A rational lower bound for sqrt(x), x >= 0."""
    if x < 0:
        raise PreconditionViolation("negative radicand")
    num, den = x.numerator, x.denominator
    return Fraction(isqrt(num * den), den)
