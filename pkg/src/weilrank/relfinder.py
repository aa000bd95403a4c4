"""Independent certified oracle for multiplicative eigenvalue relations.

Finds candidate relations among the q^(-1) alpha^2 numerically (through
their arguments), then settles each candidate exactly: a claimed identity
prod alpha_i^(e_i) = q^M is an equality between algebraic integers, so
either it holds or the difference has absolute value at least
C^(1 - [L:Q]) where C bounds every conjugate (all conjugates of the
eigenvalues have absolute value sqrt(q)) and L is the splitting field.
Evaluating the difference in exact rational ball arithmetic finer than
that separation turns the numeric guess into a rigorous dichotomy.

Soundness lives entirely in the exact verification; the numeric stage is
only a candidate generator.  It is exhaustive over the exponent box, so
the resulting lattice is complete up to the configured height.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations, product

import mpmath
import numpy as np

from .errors import DegreeOverflow, PrecisionExhausted, PreconditionViolation
from .exactcore import IntPoly, is_perfect_square, sqrt_upper
from .exactcore.factor import _factor_mod_p, _pgcd, _pmonic, _pstrip
from .exactcore.poly import squarefree_part as poly_squarefree_part
from .weil import WeilPolynomial

__all__ = [
    "CertifiedRoot",
    "RelationCertificate",
    "RelationLattice",
    "OracleRank",
    "certified_roots",
    "verify_relation",
    "relation_lattice",
    "oracle_rank",
    "DEFAULT_EXPONENT_BOUND",
]

DEFAULT_EXPONENT_BOUND = 20
DEFAULT_PRECISION_CAP = 1 << 16
DEFAULT_DEGREE_CAP = 6**6 * 4
_BASE_PRECISION = 128


# -- exact dyadic/rational helpers ------------------------------------------


def _mpf_to_frac(x) -> Fraction:
    sign, man, exp, _ = x._mpf_
    if man == 0:
        return Fraction(0)
    v = Fraction(man) * (Fraction(2) ** exp)
    return -v if sign else v


def _abs2(re: Fraction, im: Fraction) -> Fraction:
    return re * re + im * im


def _eval_complex(f: IntPoly, re: Fraction, im: Fraction):
    ar, ai = Fraction(0), Fraction(0)
    for c in reversed(f.coeffs):
        ar, ai = ar * re - ai * im + c, ar * im + ai * re
    return ar, ai


# -- scaled-integer complex arithmetic ---------------------------------------
#
# Values are (a + b*i) / 2^k with integer a, b.  Keeping the hot paths in
# plain integers avoids Fraction's gcd normalization, which dominates the
# runtime once denominators reach thousands of bits.


def _eval_scaled(coeffs, a: int, b: int, k: int):
    """f((a + bi)/2^k) = (R + I*i)/2^(deg*k), all integer arithmetic."""
    r, i = coeffs[-1], 0
    e = 0
    for c in reversed(coeffs[:-1]):
        r, i = r * a - i * b, r * b + i * a
        e += k
        r += c << e
    return r, i, e


def _isqrt_up(n: int) -> int:
    from math import isqrt

    r = isqrt(n)
    return r if r * r == n else r + 1


def _small_dyadic(mantissa: int, neg_exp: int, keep: int = 48) -> Fraction:
    """mantissa / 2^neg_exp rounded up to about `keep` significant bits."""
    if mantissa <= 0:
        return Fraction(0)
    drop = max(mantissa.bit_length() - keep, 0)
    m = -((-mantissa) >> drop)  # ceil
    e = neg_exp - drop
    return Fraction(m, 1 << e) if e >= 0 else Fraction(m << -e)


def _radius_scaled(sf: IntPoly, a: int, b: int, k: int) -> Fraction:
    """Rigorous root-distance bound at (a + bi)/2^k: deg * |P/P'|, rounded up."""
    pr, pi, _ = _eval_scaled(sf.coeffs, a, b, k)
    dr, di, _ = _eval_scaled(sf.derivative().coeffs, a, b, k)
    dd = dr * dr + di * di
    if dd == 0:
        raise ZeroDivisionError
    # radius = n*sqrt(num/dd)/2^k <= isqrt_up(ceil(num*2^(4k)/dd))/2^(3k)
    num = (pr * pr + pi * pi) * sf.degree * sf.degree
    s = -((-(num << (4 * k))) // dd)
    return _small_dyadic(_isqrt_up(s), 3 * k)


def _round_div(x: int, d: int) -> int:
    """round(x / d) for d > 0."""
    return (2 * x + d) // (2 * d)


def _refine_scaled(sf: IntPoly, a: int, b: int, k: int, radius, target):
    """Newton-iterate the scaled center until the radius bound meets target."""
    for _ in range(100):
        if radius <= target:
            return a, b, k, radius
        k2 = max(2 * k, 64)
        a <<= k2 - k
        b <<= k2 - k
        k = k2
        pr, pi, _ = _eval_scaled(sf.coeffs, a, b, k)
        dr, di, _ = _eval_scaled(sf.derivative().coeffs, a, b, k)
        dd = dr * dr + di * di
        if dd == 0:
            raise PrecisionExhausted("derivative vanished during refinement")
        # P/P' = (pr + pi*i)(dr - di*i) / (dd * 2^k): subtract in 2^-k units
        a -= _round_div(pr * dr + pi * di, dd)
        b -= _round_div(pi * dr - pr * di, dd)
        radius = _radius_scaled(sf, a, b, k)
    raise PrecisionExhausted("Newton refinement did not reach target radius")


def _frac_to_scaled(x: Fraction, k: int) -> int:
    return round(x * (1 << k))


@dataclass(frozen=True)
class CertifiedRoot:
    """One isolating disk per distinct eigenvalue.

    The radius is rigorous: for any z, some root lies within
    deg * |P(z)/P'(z)| of z, evaluated here in exact rational arithmetic;
    pairwise disjointness then pins exactly one root per disk.
    `pair_index` points at the disk of q/alpha, `conjugate_index` at the
    complex conjugate; `index` is this disk's own position.
    """

    index: int
    re: Fraction
    im: Fraction
    radius: Fraction
    pair_index: int
    conjugate_index: int

    @property
    def is_self_paired(self) -> bool:
        """True for the fixed points of alpha -> q/alpha, i.e. +-sqrt(q)."""
        return self.pair_index == self.index

    def approx(self) -> complex:
        return complex(float(self.re), float(self.im))


def _refine_root(sf: IntPoly, root, target: Fraction, bits: int):
    """(re, im, radius) of `root` refined until radius <= target."""
    k = max(bits, 64)
    a = _frac_to_scaled(root.re, k)
    b = _frac_to_scaled(root.im, k)
    radius = _radius_scaled(sf, a, b, k)
    a, b, k, radius = _refine_scaled(sf, a, b, k, radius, target)
    return Fraction(a, 1 << k), Fraction(b, 1 << k), radius


def _disk_of_quotient(q: int, re, im, radius):
    """Exact disk containing q / D((re, im), radius); needs |center| > radius."""
    denom = _abs2(re, im) - radius * radius
    if denom <= 0:
        raise PrecisionExhausted("disk too large to invert")
    return q * re / denom, -q * im / denom, q * radius / denom


def _disks_meet(a, b) -> bool:
    (r1, i1, rad1), (r2, i2, rad2) = a, b
    s = rad1 + rad2
    return _abs2(r1 - r2, i1 - i2) <= s * s


def certified_roots(w: WeilPolynomial, target_radius=None):
    """Isolating disks for the distinct eigenvalues, with pairing.

    Precision doubles until the disks are pairwise disjoint and both the
    alpha -> q/alpha pairing and complex conjugation match each disk to
    exactly one other disk.  Ordering is by (real part, imaginary part) of
    the certified centers.
    """
    sf = poly_squarefree_part(w.poly)
    prec = _BASE_PRECISION
    while True:
        try:
            return _certify_at(w, sf, prec, target_radius)
        except (PrecisionExhausted, ZeroDivisionError):
            prec *= 2
            if prec > 1 << 14:
                raise PrecisionExhausted(
                    f"could not certify roots of {w.poly} below {prec} bits"
                )


def _certify_at(w, sf, prec, target_radius):
    mpmath.mp.prec = prec + 32
    approx = mpmath.polyroots(
        [mpmath.mpf(c) for c in reversed(sf.coeffs)], maxsteps=400, extraprec=prec
    )
    goal = Fraction(target_radius) if target_radius else Fraction(1, 1 << (prec // 2))
    centers = []
    for z in approx:
        a = _frac_to_scaled(_mpf_to_frac(mpmath.mpf(z.real)), prec)
        b = _frac_to_scaled(_mpf_to_frac(mpmath.mpf(z.imag)), prec)
        rad = _radius_scaled(sf, a, b, prec)
        a, b, k, rad = _refine_scaled(sf, a, b, prec, rad, goal)
        centers.append((Fraction(a, 1 << k), Fraction(b, 1 << k), rad))
    centers.sort(key=lambda c: (c[0], c[1]))
    n = len(centers)
    for i, j in combinations(range(n), 2):
        if _disks_meet(centers[i], centers[j]):
            raise PrecisionExhausted("isolating disks overlap")
    pair = [0] * n
    conj = [0] * n
    for i, (re, im, rad) in enumerate(centers):
        inv = _disk_of_quotient(w.q, re, im, rad)
        hits = [j for j in range(n) if _disks_meet(inv, centers[j])]
        if len(hits) != 1:
            raise PrecisionExhausted("pairing ambiguous")
        pair[i] = hits[0]
        chits = [j for j in range(n) if _disks_meet((re, -im, rad), centers[j])]
        if len(chits) != 1:
            raise PrecisionExhausted("conjugation ambiguous")
        conj[i] = chits[0]
    for i in range(n):
        if pair[pair[i]] != i or conj[conj[i]] != i:
            raise PrecisionExhausted("pairing not involutive")
    return tuple(
        CertifiedRoot(
            index=i,
            re=c[0],
            im=c[1],
            radius=c[2],
            pair_index=pair[i],
            conjugate_index=conj[i],
        )
        for i, c in enumerate(centers)
    )


# -- exact relation verification --------------------------------------------


@dataclass(frozen=True)
class RelationCertificate:
    """Replayable outcome of one exact relation check.

    `holds` says whether prod alpha_i^(e_i) = q^M.  `separation_log2` is
    the proven log2 lower bound on |difference| when nonzero; the verdict
    compared the difference against it in ball arithmetic at
    `precision_bits` bits.
    """

    holds: bool
    exponents: tuple[int, ...]
    power_of_q: int
    separation_log2: int
    conjugate_degree_bound: int
    precision_bits: int


def _iball_mul(x, y, bits):
    """Product of integer balls (a, b, r) meaning ((a + bi) +- r) / 2^bits."""
    a1, b1, r1 = x
    a2, b2, r2 = y
    m1 = _isqrt_up(a1 * a1 + b1 * b1)
    m2 = _isqrt_up(a2 * a2 + b2 * b2)
    half = 1 << (bits - 1)
    a = (a1 * a2 - b1 * b2 + half) >> bits
    b = (a1 * b2 + b1 * a2 + half) >> bits
    # propagated radius plus one ulp per rounded component, all rounded up
    r = ((m1 * r2 + m2 * r1) >> bits) + ((r1 * r2) >> bits >> bits) + 4
    return a, b, r


def _iball_pow(x, n, bits):
    result = (1 << bits, 0, 0)
    base = x
    while n:
        if n & 1:
            result = _iball_mul(result, base, bits)
        base = _iball_mul(base, base, bits)
        n >>= 1
    return result


def _degree_bound(sf: IntPoly, roots, q: int, involved=None) -> int:
    """Upper bound on [L:Q] for the splitting field of the relevant roots.

    Adjoining a root also adjoins its pair partner q/alpha, so each pair
    costs a factor (remaining root count); intersecting with the product
    of per-irreducible-factor bounds tightens products considerably.
    """
    from .exactcore import factor_over_integers

    n = sf.degree
    if involved is None:
        pairs = sum(1 for r in roots if r.pair_index > r.index)
    else:
        used = set()
        for i in involved:
            used.add(min(i, roots[i].pair_index))
        pairs = sum(1 for i in used if roots[i].pair_index != i)
    bound = 1
    remaining = n
    for _ in range(pairs):
        bound *= max(remaining, 2)
        remaining -= 2
    if any(r.is_self_paired for r in roots) and not is_perfect_square(q):
        bound *= 2
    factored = 1
    for f, _ in factor_over_integers(sf):
        d = f.degree
        if f == IntPoly([-q, 0, 1]):
            factored *= 2
            continue
        fp = d // 2
        rem = d
        for _ in range(fp):
            factored *= max(rem, 2)
            rem -= 2
    return max(min(bound, factored), 1)


def _log2_upper(x: Fraction) -> int:
    return x.numerator.bit_length() - x.denominator.bit_length() + 1


def verify_relation(
    w: WeilPolynomial,
    e,
    m_power: int,
    roots=None,
    precision_cap: int = DEFAULT_PRECISION_CAP,
    degree_cap: int = DEFAULT_DEGREE_CAP,
) -> RelationCertificate:
    """Exactly decide whether prod alpha_i^(e_i) = q^(m_power).

    `e` is indexed like `certified_roots(w)`.  Negative exponents and a
    negative power of q are moved across the equality so both sides are
    algebraic integers; the difference, if nonzero, has norm at least one,
    which yields the separation bound from |conjugate| = sqrt(q).
    """
    sf = poly_squarefree_part(w.poly)
    if roots is None:
        roots = certified_roots(w)
    e = tuple(int(x) for x in e)
    if len(e) != len(roots):
        raise PreconditionViolation("exponent vector length mismatch")
    nonzero = sum(1 for x in e if x)
    if nonzero == 0:
        return RelationCertificate(
            holds=(m_power == 0),
            exponents=e,
            power_of_q=m_power,
            separation_log2=0,
            conjugate_degree_bound=1,
            precision_bits=0,
        )
    if sf.degree**nonzero > degree_cap:
        raise DegreeOverflow(
            f"implied transform degree {sf.degree}**{nonzero} exceeds cap {degree_cap}"
        )
    q = w.q
    pos = sum(x for x in e if x > 0)
    neg = sum(-x for x in e if x < 0)
    qa = max(-m_power, 0)
    qb = max(m_power, 0)
    su = sqrt_upper(Fraction(q))
    conj_bound = su**pos * Fraction(q) ** qa + su**neg * Fraction(q) ** qb
    degree_bound = _degree_bound(sf, roots, q)
    sep_log2 = -(degree_bound - 1) * _log2_upper(conj_bound) - 2
    bits = max(_BASE_PRECISION, -sep_log2 + 64)
    while bits <= precision_cap:
        target = Fraction(1, 1 << bits)
        balls = []
        for r in roots:
            re, im, rad = _refine_root(sf, r, target, bits)
            balls.append(
                (
                    _frac_to_scaled(re, bits),
                    _frac_to_scaled(im, bits),
                    int(rad * (1 << bits)) + 2,  # +2: rounding the center
                )
            )
        side_a = (q**qa << bits, 0, 0)
        side_b = (q**qb << bits, 0, 0)
        for i, exp in enumerate(e):
            if exp > 0:
                side_a = _iball_mul(side_a, _iball_pow(balls[i], exp, bits), bits)
            elif exp < 0:
                side_b = _iball_mul(side_b, _iball_pow(balls[i], -exp, bits), bits)
        za = side_a[0] - side_b[0]
        zb = side_a[1] - side_b[1]
        zr = side_a[2] + side_b[2]
        from math import isqrt

        mag = za * za + zb * zb
        upper_scaled = _isqrt_up(mag) + zr
        lower_scaled = isqrt(mag) - zr
        # separation 2^sep_log2 in the same 2^-bits scale
        sep_scaled = 1 << (bits + sep_log2)
        if upper_scaled < sep_scaled:
            return RelationCertificate(
                holds=True,
                exponents=e,
                power_of_q=m_power,
                separation_log2=sep_log2,
                conjugate_degree_bound=degree_bound,
                precision_bits=bits,
            )
        if lower_scaled > 0:
            return RelationCertificate(
                holds=False,
                exponents=e,
                power_of_q=m_power,
                separation_log2=sep_log2,
                conjugate_degree_bound=degree_bound,
                precision_bits=bits,
            )
        bits *= 2
    raise PrecisionExhausted(f"relation check needs more than {precision_cap} bits")


# -- relation lattice --------------------------------------------------------


@dataclass(frozen=True)
class RelationLattice:
    """Verified multiplicative relations among representatives of R'_X.

    `representatives` are root indices, one per two-element orbit of
    alpha -> q/alpha (self-paired roots give the unit of R'_X and carry no
    rank).  `basis` rows live in exponent space on those representatives:
    a row v means prod (q^(-1) alpha_i^2)^(v_i) = 1, certified.  The basis
    is saturated, primitive, and in Hermite normal form; the lattice holds
    every relation with sup-norm at most `exponent_bound`.
    """

    representatives: tuple[int, ...]
    basis: tuple[tuple[int, ...], ...]
    certificates: tuple[RelationCertificate, ...]
    exponent_bound: int
    status: str

    @property
    def rank(self) -> int:
        """Rank of the group generated by R'_X (free part)."""
        return len(self.representatives) - len(self.basis)

    def contains(self, vector) -> bool:
        """Membership of an exponent vector on representatives."""
        return _lattice_contains(list(self.basis), list(vector))


def _row_hnf(rows):
    """Row Hermite normal form (positive pivots, reduced above), zero rows dropped."""
    rows = [list(r) for r in rows if any(r)]
    if not rows:
        return []
    cols = len(rows[0])
    mat = [list(r) for r in rows]
    r = 0
    for c in range(cols):
        pivot = None
        for i in range(r, len(mat)):
            if mat[i][c]:
                pivot = i
                break
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        # clear below by gcd steps
        for i in range(r + 1, len(mat)):
            while mat[i][c]:
                if abs(mat[i][c]) < abs(mat[r][c]):
                    mat[r], mat[i] = mat[i], mat[r]
                t = mat[i][c] // mat[r][c]
                for j in range(cols):
                    mat[i][j] -= t * mat[r][j]
        if mat[r][c] < 0:
            mat[r] = [-x for x in mat[r]]
        for i in range(r):
            t = mat[i][c] // mat[r][c]
            if t:
                for j in range(cols):
                    mat[i][j] -= t * mat[r][j]
        r += 1
    return [row for row in mat[:r] if any(row)]


def _kernel_basis(rows, dim):
    """Basis of the integer kernel {x : rows . x = 0} via HNF with transform."""
    if not rows:
        return [[1 if i == j else 0 for j in range(dim)] for i in range(dim)]
    # run row-HNF on the transpose-multiplied system: track U with U*M = H
    mat = [list(col) for col in zip(*[list(r) for r in rows])]  # dim x k
    u = [[1 if i == j else 0 for j in range(dim)] for i in range(dim)]
    k = len(mat[0])
    r = 0
    for c in range(k):
        pivot = None
        for i in range(r, dim):
            if mat[i][c]:
                pivot = i
                break
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        u[r], u[pivot] = u[pivot], u[r]
        for i in range(r + 1, dim):
            while mat[i][c]:
                if abs(mat[i][c]) < abs(mat[r][c]):
                    mat[r], mat[i] = mat[i], mat[r]
                    u[r], u[i] = u[i], u[r]
                t = mat[i][c] // mat[r][c]
                for j in range(k):
                    mat[i][j] -= t * mat[r][j]
                for j in range(dim):
                    u[i][j] -= t * u[r][j]
        r += 1
    return [u[i] for i in range(r, dim)]


def _saturate(rows, dim):
    """Saturation: integer vectors inside the rational span of `rows`."""
    if not rows:
        return []
    complement = _kernel_basis(rows, dim)
    return _row_hnf(_kernel_basis(complement, dim))


def _lattice_contains(basis, vector) -> bool:
    if not any(vector):
        return True
    if not basis:
        return False
    work = [list(r) for r in _row_hnf(basis)]
    v = list(vector)
    cols = len(v)
    for row in work:
        c = next(j for j in range(cols) if row[j])
        if v[c] % row[c] != 0:
            return False
        t = v[c] // row[c]
        for j in range(cols):
            v[j] -= t * row[j]
    return not any(v)


def _theta_of_root(r: CertifiedRoot) -> float:
    # argument of beta = alpha^2/q is twice the argument of alpha
    return 2.0 * math.atan2(float(r.im), float(r.re))


def _candidate_vectors(thetas, bound, tol=1e-6):
    """All e with 0 < max|e_i| <= bound whose angle sum is ~0 mod 2pi.

    Exhaustive over the box so no true relation at this height is missed;
    false positives are eliminated by exact verification downstream.
    """
    d = len(thetas)
    theta = np.array(thetas, dtype=float)
    two_pi = 2.0 * math.pi
    rng = np.arange(-bound, bound + 1)
    out = []
    if d == 1:
        for v in rng:
            if v > 0 and abs(math.remainder(v * thetas[0], two_pi)) < tol:
                out.append((int(v),))
        return out
    grids = np.meshgrid(*([rng] * (d - 1)), indexing="ij")
    tail = np.stack([g.ravel() for g in grids], axis=1)
    tail_dot = tail @ theta[1:]
    for lead in range(0, bound + 1):
        total = lead * theta[0] + tail_dot
        res = np.abs(np.remainder(total + math.pi, two_pi) - math.pi)
        hits = np.nonzero(res < tol)[0]
        for h in hits:
            vec = (lead, *map(int, tail[h]))
            if not any(vec):
                continue
            first = next(x for x in vec if x)
            if first < 0:
                continue  # canonical sign: first nonzero positive
            out.append(vec)
    out.sort(key=lambda v: (max(abs(x) for x in v), sum(abs(x) for x in v), v))
    return out


def relation_lattice(
    w: WeilPolynomial,
    exponent_bound: int = DEFAULT_EXPONENT_BOUND,
    roots=None,
    precision_cap: int = DEFAULT_PRECISION_CAP,
    degree_cap: int = DEFAULT_DEGREE_CAP,
) -> RelationLattice:
    """Certified relation lattice among the beta = q^(-1) alpha^2.

    Candidates come from an exhaustive scan of exponent vectors against
    high-precision arguments of the beta; every candidate is settled by
    `verify_relation`.  The verified lattice is saturated (a root of unity
    in the eigenvalue group must be 1 over a sufficiently large field) and
    each saturated basis vector is re-verified, so the basis is certified.
    """
    if roots is None:
        roots = certified_roots(w)
    reps = [r.index for r in roots if r.pair_index > r.index]
    d = len(reps)
    if d == 0:
        return RelationLattice(
            representatives=(),
            basis=(),
            certificates=(),
            exponent_bound=exponent_bound,
            status="complete_up_to_H",
        )
    thetas = [_theta_of_root(roots[i]) for i in reps]
    verified: list[list[int]] = []
    for cand in _candidate_vectors(thetas, exponent_bound):
        if _lattice_contains(verified, list(cand)):
            continue
        full = [0] * len(roots)
        for j, i in enumerate(reps):
            full[i] = 2 * cand[j]
        cert = verify_relation(
            w,
            full,
            sum(cand),
            roots=roots,
            precision_cap=precision_cap,
            degree_cap=degree_cap,
        )
        if cert.holds:
            verified.append(list(cand))
    basis = _saturate(verified, d)
    certs = []
    for row in basis:
        full = [0] * len(roots)
        for j, i in enumerate(reps):
            full[i] = 2 * row[j]
        cert = verify_relation(
            w,
            full,
            sum(row),
            roots=roots,
            precision_cap=precision_cap,
            degree_cap=degree_cap,
        )
        if not cert.holds:
            raise PreconditionViolation(
                "saturated relation failed verification; field not sufficiently large?"
            )
        certs.append(cert)
    return RelationLattice(
        representatives=tuple(reps),
        basis=tuple(tuple(r) for r in basis),
        certificates=tuple(certs),
        exponent_bound=exponent_bound,
        status="complete_up_to_H",
    )


# -- p-adic independence certificate ----------------------------------------


def _unit_part_mod_p(sf: IntPoly, p: int):
    """(degree-of-t-power, unit factor V) of sf mod p; V(0) != 0."""
    fp = _pstrip([c % p for c in sf.coeffs])
    w = 0
    while w < len(fp) and fp[w] == 0:
        w += 1
    return w, fp[w:]


def _valuation_rank_lower_bound(w: WeilPolynomial, roots) -> int:
    """Certified lower bound on the rank from p-adic valuations.

    Regime: slopes within {0, 1/2, 1}, squarefree unit part mod p, and no
    wild ramification (p = 2 with slope 1/2 is excluded).  The Frobenius
    orbit structure of the Hensel-lifted unit roots is read off the mod-p
    factorization of the unit part; which complex root pair sits over
    which residue orbit is unknown, so the bound minimizes the rank of the
    valuation constraints over every admissible matching.  Sound, possibly
    conservative.
    """
    from .newton import newton_polygon

    reps = [r for r in roots if r.pair_index > r.index]
    d = len(reps)
    if d == 0:
        return 0
    try:
        np_ = newton_polygon(w)
    except Exception:
        return 0
    half = Fraction(1, 2)
    if any(s not in (Fraction(0), half, Fraction(1)) for s in np_.slopes):
        return 0
    if w.p == 2 and np_.length(half):
        return 0
    sf = poly_squarefree_part(w.poly)
    _, v_part = _unit_part_mod_p(sf, w.p)
    if len(v_part) <= 1:
        return 0
    p = w.p
    dv = _pstrip([i * c % p for i, c in enumerate(v_part)][1:])
    if not dv or len(_pgcd(v_part, dv, p)) != 1:
        return 0  # unit part not squarefree mod p: out of certificate scope
    d_u = len(v_part) - 1
    d_h = d - d_u
    if d_h < 0:
        return 0
    import random

    cycle_lengths = sorted(
        len(f) - 1 for f in _factor_mod_p(_pmonic(v_part, p), p, random.Random(7))
    )
    # residue slots 0..d_u-1 partitioned into Frobenius cycles
    perm = [0] * d_u
    start = 0
    for ln in cycle_lengths:
        for i in range(ln):
            perm[start + i] = start + (i + 1) % ln
        start += ln
    order = 1
    for ln in set(cycle_lengths):
        order = order * ln // math.gcd(order, ln)
    best = None
    pair_idx = list(range(d))
    # For the true embedding there exist: a set of ordinary pairs, a
    # matching to the residue slots, and orientations eps so that the
    # valuation row is c_i = eps_i and the Frobenius acts on relation
    # vectors as the signed permutation T (tau from the slot cycles,
    # signs eps_i * eps_tau(i)).  Each relation v then satisfies
    # c . T^k v = 0 for every k, so rank{c T^k} bounds the rank from
    # below; minimizing over all admissible choices keeps it sound.
    for ordinary in combinations(pair_idx, d_u):
        for assignment in permutations(range(d_u)):
            # pair ordinary[j] sits on residue slot assignment[j]
            slot_of = {ordinary[j]: assignment[j] for j in range(d_u)}
            pair_on = {assignment[j]: ordinary[j] for j in range(d_u)}
            tau = list(range(d))
            for i in ordinary:
                tau[i] = pair_on[perm[slot_of[i]]]
            for signs in product((1, -1), repeat=d_u):
                eps = [0] * d
                for j in range(d_u):
                    eps[ordinary[j]] = signs[j]
                row = list(eps)
                rows = [row]
                for _ in range(2 * order - 1):
                    prev = rows[-1]
                    nxt = [0] * d
                    # (c T)_i = c_tau(i) * eps_i * eps_tau(i)
                    for i in range(d):
                        if eps[i]:
                            nxt[i] = prev[tau[i]] * eps[i] * eps[tau[i]]
                    rows.append(nxt)
                rank = _rank_int(rows)
                best = rank if best is None else min(best, rank)
                if best == 0:
                    return 0
    return best or 0


def _rank_int(rows):
    mat = [list(map(Fraction, r)) for r in rows if any(r)]
    if not mat:
        return 0
    cols = len(mat[0])
    rank = 0
    for c in range(cols):
        pivot = None
        for i in range(rank, len(mat)):
            if mat[i][c]:
                pivot = i
                break
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        pv = mat[rank][c]
        for i in range(len(mat)):
            if i != rank and mat[i][c]:
                f = mat[i][c] / pv
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[rank])]
        rank += 1
    return rank


@dataclass(frozen=True)
class OracleRank:
    rank: int
    confidence: str  # 'certified_relations_only' or 'certified_exact'
    lattice: RelationLattice


def oracle_rank(
    w: WeilPolynomial,
    exponent_bound: int = DEFAULT_EXPONENT_BOUND,
    roots=None,
    precision_cap: int = DEFAULT_PRECISION_CAP,
    degree_cap: int = DEFAULT_DEGREE_CAP,
) -> OracleRank:
    """Rank of the eigenvalue-relation group, proven from certificates.

    The value is an exact upper bound (every counted relation is certified)
    and conjecturally exact up to the exponent bound.  When the p-adic
    valuation certificate meets the relation count the confidence upgrades
    to 'certified_exact'.
    """
    if roots is None:
        roots = certified_roots(w)
    lat = relation_lattice(
        w,
        exponent_bound=exponent_bound,
        roots=roots,
        precision_cap=precision_cap,
        degree_cap=degree_cap,
    )
    rank = lat.rank
    if rank == 0:
        return OracleRank(rank=0, confidence="certified_exact", lattice=lat)
    lower = _valuation_rank_lower_bound(w, roots)
    confidence = "certified_exact" if lower >= rank else "certified_relations_only"
    return OracleRank(rank=rank, confidence=confidence, lattice=lat)
