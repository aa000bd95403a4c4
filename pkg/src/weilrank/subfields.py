"""Imaginary quadratic subfields of CM fields via conjugate factorizations.

A quadratic subfield Q(sqrt(m)) of E = Q[t]/(pmin) is witnessed by a
factorization pmin = G * conj(G) over Q(sqrt(m)).  Candidate m values are
the negative squarefree kernels supported on the prime divisors of
disc(pmin) (a quadratic subfield ramifies only inside the field
discriminant, which divides disc(pmin)); each candidate is screened by a
splitting-pattern sieve at auxiliary primes and then settled exactly by
factoring pmin over Q(sqrt(m)) with Trager's norm method.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NotIrreducible, NotSextic, PreconditionViolation
from .exactcore import (
    IntPoly,
    discriminant,
    factor_int,
    factor_over_integers,
    is_prime,
    legendre_symbol,
    poly_gcd,
    squarefree_part,
)
from .exactcore.factor import modular_factor_degrees
from .weil import WeilPolynomial

__all__ = [
    "QuadraticElement",
    "ConjugateFactorization",
    "quadratic_subfields",
    "conjugate_factorizations",
    "conjugate_split",
    "norm_one_witness",
    "norm_condition",
    "p_splits",
    "elliptic_cm_field",
    "cubic_resolvent_is_galois",
]


@dataclass(frozen=True)
class QuadraticElement:
    """a0 + a1 * sqrt(m) with rational parts; m squarefree, not 0 or 1."""

    a0: Fraction
    a1: Fraction
    m: int

    def __post_init__(self):
        if self.m in (0, 1) or squarefree_part(self.m) != self.m:
            raise PreconditionViolation("m must be squarefree and not 0 or 1")
        object.__setattr__(self, "a0", Fraction(self.a0))
        object.__setattr__(self, "a1", Fraction(self.a1))

    def __add__(self, other):
        return QuadraticElement(self.a0 + other.a0, self.a1 + other.a1, self.m)

    def __sub__(self, other):
        return QuadraticElement(self.a0 - other.a0, self.a1 - other.a1, self.m)

    def __neg__(self):
        return QuadraticElement(-self.a0, -self.a1, self.m)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QuadraticElement(self.a0 * other, self.a1 * other, self.m)
        return QuadraticElement(
            self.a0 * other.a0 + self.a1 * other.a1 * self.m,
            self.a0 * other.a1 + self.a1 * other.a0,
            self.m,
        )

    __rmul__ = __mul__

    def conjugate(self):
        return QuadraticElement(self.a0, -self.a1, self.m)

    def norm(self) -> Fraction:
        return self.a0 * self.a0 - self.a1 * self.a1 * self.m

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("zero element")
        return QuadraticElement(self.a0 / n, -self.a1 / n, self.m)

    @property
    def is_zero(self):
        return self.a0 == 0 and self.a1 == 0

    @property
    def is_rational(self):
        return self.a1 == 0

    def __str__(self):
        return f"{self.a0} + {self.a1}*sqrt({self.m})"


def _qe(m, a0=0, a1=0):
    return QuadraticElement(Fraction(a0), Fraction(a1), m)


# -- polynomials over Q(sqrt(m)): ascending coefficient tuples -------------


def _qstrip(cs):
    n = len(cs)
    while n and cs[n - 1].is_zero:
        n -= 1
    return list(cs[:n])


def _qmul(a, b, m):
    if not a or not b:
        return []
    out = [_qe(m)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if not ca.is_zero:
            for j, cb in enumerate(b):
                out[i + j] = out[i + j] + ca * cb
    return _qstrip(out)


def _qdivmod(a, b, m):
    a = list(a)
    db = len(b) - 1
    inv = b[-1].inverse()
    if len(a) - 1 < db:
        return [], _qstrip(a)
    q = [_qe(m)] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] * inv
        q[i - db] = c
        if not c.is_zero:
            for j, cb in enumerate(b):
                a[i - db + j] = a[i - db + j] - c * cb
    return _qstrip(q), _qstrip(a[:db])


def _qgcd(a, b, m):
    a, b = _qstrip(a), _qstrip(b)
    while b:
        _, a = _qdivmod(a, b, m)
        a, b = b, a
    if a:
        inv = a[-1].inverse()
        a = [c * inv for c in a]
    return a


def _q_from_int(f: IntPoly, m: int):
    return [_qe(m, c) for c in f.coeffs]


def _q_conj(a):
    return [c.conjugate() for c in a]


def _q_compose_shift(f, s, m):
    """f(t - s*sqrt(m)) over Q(sqrt(m)), by Horner."""
    lin = [_qe(m, 0, -s), _qe(m, 1)]  # t - s*sqrt(m)
    out = []
    for c in reversed(f):
        out = _qmul(out, lin, m)
        if not out:
            out = [c]
        else:
            out[0] = out[0] + c
    return _qstrip(out)


# -- Trager factorization over a quadratic field ----------------------------


def _trager_split(f: IntPoly, m: int):
    """The monic degree-(n/2) factor G over Q(sqrt(m)) with G*conj(G) = f.

    f must be monic, irreducible over Q, of even degree.  Returns the
    coefficient list of G, or None when f stays irreducible over Q(sqrt(m)).
    """
    n = f.degree
    h = n // 2
    fq = _q_from_int(f, m)
    for s in range(0, 4 * n * n + 5):
        shifted = _q_compose_shift(fq, s, m)
        norm_q = _qmul(shifted, _q_conj(shifted), m)
        assert all(c.is_rational for c in norm_q)
        norm = IntPoly([int(c.a0) for c in norm_q])
        if poly_gcd(norm, norm.derivative()).degree == 0:
            break
    else:  # pragma: no cover - squarefree shift always exists
        raise PreconditionViolation("no squarefree norm shift found")
    factors = factor_over_integers(norm)
    if len(factors) == 1:
        return None
    parts = []
    for fac, mult in factors:
        assert mult == 1
        g = _qgcd(shifted, _q_from_int(fac, m), m)
        if len(g) - 1 >= 1:
            parts.append(g)
    if len(parts) != 2 or any(len(g) - 1 != h for g in parts):
        return None
    # undo the shift: roots were moved by +s*sqrt(m)
    out = []
    for g in parts:
        back = _q_compose_shift_back(g, s, m)
        out.append(back)
    # deterministic representative: smaller coefficient tuple
    key = lambda g: tuple((c.a0, c.a1) for c in g)
    out.sort(key=key)
    g = out[0]
    assert _qmul(g, _q_conj(g), m) == _qstrip(fq)
    return g


def _q_compose_shift_back(g, s, m):
    """g(t + s*sqrt(m))."""
    lin = [_qe(m, 0, s), _qe(m, 1)]
    out = []
    for c in reversed(g):
        out = _qmul(out, lin, m)
        if not out:
            out = [c]
        else:
            out[0] = out[0] + c
    return _qstrip(out)


@dataclass(frozen=True)
class ConjugateFactorization:
    """Witness that pmin = G * conj(G) over Q(sqrt(m)), m negative squarefree."""

    m: int
    g: tuple[QuadraticElement, ...]

    @property
    def degree(self):
        return len(self.g) - 1

    @property
    def constant_term(self) -> QuadraticElement:
        return self.g[0]

    def conjugate_coeffs(self):
        return tuple(c.conjugate() for c in self.g)

    def expand(self) -> IntPoly:
        """G * conj(G), re-expanded; must reproduce pmin exactly."""
        prod = _qmul(list(self.g), list(self.conjugate_coeffs()), self.m)
        assert all(c.is_rational and c.a0.denominator == 1 for c in prod)
        return IntPoly([int(c.a0) for c in prod])

    def __str__(self):
        return f"G over Q(sqrt({self.m})): [{', '.join(str(c) for c in self.g)}]"


def _candidate_ms(disc: int):
    """Negative squarefree integers supported on the primes of disc."""
    primes = sorted(factor_int(disc))
    subsets = [1]
    for p in primes:
        subsets += [s * p for s in subsets]
    return sorted((-s for s in subsets), key=abs)


def _degree_patterns(f: IntPoly, count=20):
    """(prime, has-odd-degree-factor) pairs at auxiliary primes."""
    out = []
    r = 101
    disc = discriminant(f)
    while len(out) < count and r < 20000:
        if is_prime(r) and disc % r != 0 and f.leading % r != 0:
            degs = modular_factor_degrees(f, r)
            out.append((r, any(d % 2 for d in degs)))
        r += 2
    return out


def _sieve_ok(m: int, patterns) -> bool:
    """Rule out m when some prime with an odd-degree factor is inert."""
    d = m if m % 4 == 1 else 4 * m
    for r, has_odd in patterns:
        if not has_odd:
            continue
        if d % r != 0 and legendre_symbol(d % r, r) == -1:
            return False
    return True


def conjugate_factorizations(pmin: IntPoly):
    """All imaginary quadratic conjugate-factorizations of irreducible pmin.

    Works for any even degree; used at degree 6 for the sextic subfield
    test and at degrees 2..8 by the product-rank and fourfold diagnostics.
    """
    if pmin.degree < 2 or pmin.degree % 2:
        raise PreconditionViolation("even degree >= 2 required")
    if not pmin.is_monic:
        raise PreconditionViolation("monic polynomial required")
    facs = factor_over_integers(pmin)
    if len(facs) != 1 or facs[0][1] != 1:
        raise NotIrreducible("polynomial must be irreducible")
    disc = discriminant(pmin)
    patterns = _degree_patterns(pmin)
    out = []
    for m in _candidate_ms(disc):
        if not _sieve_ok(m, patterns):
            continue
        g = _trager_split(pmin, m)
        if g is not None:
            cf = ConjugateFactorization(m=m, g=tuple(g))
            assert cf.expand() == pmin
            out.append(cf)
    return tuple(out)


def quadratic_subfields(pmin: IntPoly):
    """Imaginary quadratic subfield witnesses of a sextic CM field.

    Every returned factorization re-expands exactly to pmin.  All witnesses
    are returned; uniqueness is a theorem in the non-Galois CM case but is
    never assumed here.
    """
    if pmin.degree != 6:
        raise NotSextic(f"degree {pmin.degree}, expected 6")
    return conjugate_factorizations(pmin)


def conjugate_split(pmin: IntPoly, m: int):
    """Conjugate factorization of irreducible pmin over one given Q(sqrt(m))."""
    if m >= 0 or squarefree_part(m) != m:
        raise PreconditionViolation("m must be negative squarefree")
    g = _trager_split(pmin, m)
    if g is None:
        return None
    cf = ConjugateFactorization(m=m, g=tuple(g))
    assert cf.expand() == pmin
    return cf


def norm_one_witness(pmin: IntPoly, q: int):
    """Witness with norm-one constant term, solved in closed form.

    G(0)^2 = q^3 forces G(0) = +-q^(3/2) rational, which makes the
    coefficient system for pmin = G * conj(G) triangular: the rational
    parts of the quadratic and linear coefficients follow directly, and
    the sqrt(m)-parts satisfy a1^2 m = X, a1 b1 m = Y, b1^2 m = Z with X,
    Y, Z known integers, so m is the squarefree kernel of X (or Z).  Much
    faster than the general subfield search; returns None when no
    imaginary witness with the norm condition exists.
    """
    if pmin.degree != 6:
        raise NotSextic(f"degree {pmin.degree}, expected 6")
    from .exactcore import is_perfect_square

    if not is_perfect_square(q):
        return None
    root_q = isqrt_exact(q)
    c0, c1, c2, c3, c4, c5, _ = [Fraction(c) for c in pmin.coeffs]
    if c0 != q**3:
        return None
    a0 = c5 / 2
    for s in (1, -1):
        big_c = Fraction(s * root_q**3)
        b0 = c1 / (2 * big_c)
        x = a0 * a0 + 2 * b0 - c4
        y = (2 * big_c + 2 * a0 * b0 - c3) / 2
        z = 2 * a0 * big_c + b0 * b0 - c2
        if x * z != y * y:
            continue
        if x == 0 and z == 0:
            continue  # rational G would make pmin reducible
        lead = x if x != 0 else z
        m = _rational_squarefree_kernel(lead)
        if m >= 0:
            continue
        if x != 0:
            a1 = _rational_sqrt(x / m)
            if a1 is None:
                continue
            b1 = y / (m * a1)
        else:
            a1 = Fraction(0)
            if y != 0:
                continue
            b1 = _rational_sqrt(z / m)
            if b1 is None:
                continue
        g = (
            QuadraticElement(big_c, Fraction(0), m),
            QuadraticElement(b0, b1, m),
            QuadraticElement(a0, a1, m),
            QuadraticElement(Fraction(1), Fraction(0), m),
        )
        cf = ConjugateFactorization(m=m, g=g)
        if cf.expand() == pmin:
            return cf
    return None


def isqrt_exact(n: int) -> int:
    from math import isqrt

    r = isqrt(n)
    if r * r != n:
        raise PreconditionViolation(f"{n} is not a perfect square")
    return r


def _rational_squarefree_kernel(x: Fraction) -> int:
    """Squarefree integer in the same rational square class as x."""
    return squarefree_part(x.numerator * x.denominator)


def _rational_sqrt(x: Fraction):
    """Exact square root of a nonnegative rational, or None."""
    if x < 0:
        return None
    from math import isqrt

    rn, rd = isqrt(x.numerator), isqrt(x.denominator)
    if rn * rn != x.numerator or rd * rd != x.denominator:
        return None
    return Fraction(rn, rd)


def norm_condition(cf: ConjugateFactorization, q: int) -> bool:
    """Whether Norm_(E/B)(q^(-1) Fr^2) = 1, read off the witness.

    The norm equals q^(-h) G(0)^2 for h = deg G, so the condition is
    G(0)^2 = q^h as elements of Q(sqrt(m)).
    """
    c = cf.constant_term
    h = cf.degree
    sq = c * c
    return sq.is_rational and sq.a0 == q**h


def p_splits(m: int, p: int) -> str:
    """Splitting of p in Q(sqrt(m)): 'split', 'inert', or 'ramified'."""
    if m in (0, 1) or squarefree_part(m) != m:
        raise PreconditionViolation("m must be squarefree and not 0 or 1")
    if not is_prime(p):
        raise PreconditionViolation(f"{p} is not prime")
    d = m if m % 4 == 1 else 4 * m
    if p == 2:
        if d % 2 == 0:
            return "ramified"
        return "split" if m % 8 == 1 else "inert"
    if d % p == 0:
        return "ramified"
    return "split" if legendre_symbol(d % p, p) == 1 else "inert"


def elliptic_cm_field(w: WeilPolynomial) -> int:
    """Squarefree part of a^2 - 4q for an ordinary elliptic curve t^2 - at + q."""
    if w.g != 1:
        raise PreconditionViolation("elliptic curve required")
    a = -w.poly.coeffs[1]
    if a % w.p == 0:
        raise PreconditionViolation("not ordinary: p divides the trace")
    return squarefree_part(a * a - 4 * w.q)


def cubic_resolvent_is_galois(pmin: IntPoly, q: int) -> bool:
    """Whether the totally real cubic subfield of the sextic CM field is Galois.

    The cubic is generated by alpha + q/alpha, i.e. by the trace polynomial;
    a cubic field is Galois over Q exactly when its discriminant is a
    perfect square.  Informational only; the non-neat configuration should
    always report False.
    """
    from .exactcore import is_perfect_square
    from .weil import trace_polynomial

    if pmin.degree != 6:
        raise NotSextic(f"degree {pmin.degree}, expected 6")
    h = trace_polynomial(pmin, q)
    return is_perfect_square(discriminant(h))
