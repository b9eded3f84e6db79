"""Exact counting of polynomial roots inside disks.

The unit-disk count maps |z| < 1 onto the left half-plane with the Moebius
substitution z -> (w+1)/(w-1) and then counts left-half-plane roots with a
Cauchy-index computation over an integer signed-remainder chain.  Everything
is integer-exact; a root on the boundary circle raises OnCircleOrDegenerate.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import OnCircleOrDegenerate, ZeroInput
from .polynomials import IntPolynomial, poly_gcd, require_monic, signed_pseudo_rem
from .realroots import count_real_roots_all


def _moebius_to_halfplane(p: IntPolynomial) -> IntPolynomial:
    """g(w) = (w-1)**n * p((w+1)/(w-1)); maps |z|<1 roots to Re(w)<0 roots."""
    n = p.degree
    w_plus = IntPolynomial((1, 1))
    w_minus = IntPolynomial((-1, 1))
    # precompute powers
    plus_pows = [IntPolynomial((1,))]
    minus_pows = [IntPolynomial((1,))]
    for _ in range(n):
        plus_pows.append(plus_pows[-1] * w_plus)
        minus_pows.append(minus_pows[-1] * w_minus)
    g = IntPolynomial()
    for k, c in enumerate(p.coeffs):
        if c:
            g = g + c * plus_pows[k] * minus_pows[n - k]
    return g


def _imaginary_axis_parts(g: IntPolynomial) -> tuple[IntPolynomial, IntPolynomial]:
    """U, V with g(iy) = i**n (U(y) + i V(y)) and deg U = deg g."""
    n = g.degree
    u = [0] * (n + 1)
    v = [0] * (n + 1)
    for k, c in enumerate(g.coeffs):
        e = (k - n) % 4
        if e == 0:
            u[k] = c
        elif e == 2:
            u[k] = -c
        elif e == 1:
            v[k] = c
        else:
            v[k] = -c
    return IntPolynomial(u), IntPolynomial(v)


def _chain_variations_at_inf(chain: list[IntPolynomial], positive: bool) -> int:
    count = 0
    prev = 0
    for q in chain:
        s = 1 if q.lead > 0 else -1
        if not positive and q.degree % 2 == 1:
            s = -s
        if prev and s != prev:
            count += 1
        prev = s
    return count


def cauchy_index(den: IntPolynomial, num: IntPolynomial) -> int:
    """Cauchy index of num/den over the whole real line.

    Counts -inf->+inf jumps minus +inf->-inf jumps of the rational function
    at real poles, via a signed pseudo-remainder chain.
    """
    if den.is_zero():
        raise ZeroInput("Cauchy index needs a nonzero denominator")
    if num.is_zero():
        return 0
    chain = [den.content_normalized(), num.content_normalized()]
    while True:
        r = signed_pseudo_rem(chain[-2], chain[-1])
        if r.is_zero():
            break
        chain.append((-r).content_normalized())
    return _chain_variations_at_inf(chain, positive=False) - _chain_variations_at_inf(
        chain, positive=True
    )


def left_halfplane_count(g: IntPolynomial) -> int:
    """Number of roots of g with Re < 0; raises if roots sit on the axis."""
    g, zeros_at_origin = g.strip_z_power()
    if zeros_at_origin:
        raise OnCircleOrDegenerate("root at w = 0 lies on the imaginary axis")
    n = g.degree
    if n == 0:
        return 0
    u, v = _imaginary_axis_parts(g)
    common = poly_gcd(u, v)
    if common.degree >= 1 and count_real_roots_all(common) > 0:
        raise OnCircleOrDegenerate("roots on the imaginary axis")
    index = cauchy_index(u, -v)
    if (n + index) % 2 != 0:
        raise OnCircleOrDegenerate("parity failure in half-plane count")
    return (n + index) // 2


def unit_disk_count_unchecked(p: IntPolynomial) -> int:
    """Roots of p strictly inside |z| < 1 (any leading coefficient).

    Raises OnCircleOrDegenerate when a root lies on the unit circle.
    """
    if p.is_zero():
        raise ZeroInput("cannot count roots of the zero polynomial")
    core, at_zero = p.strip_z_power()
    if core.degree == 0:
        return at_zero
    one = Fraction(1)
    if core.sign_at(one) == 0 or core.sign_at(-one) == 0:
        raise OnCircleOrDegenerate("root at z = 1 or z = -1")
    g = _moebius_to_halfplane(core)
    if g.degree != core.degree:
        raise OnCircleOrDegenerate("degree collapse in the Moebius transform")
    return at_zero + left_halfplane_count(g)


def schur_cohn_inside_count(p: IntPolynomial) -> int:
    """Exact count of roots strictly inside the unit disk for monic p.

    The caller must keep unit-circle roots away (strip cyclotomic factors
    first); a boundary root raises OnCircleOrDegenerate.
    """
    require_monic(p)
    return unit_disk_count_unchecked(p)


def disk_count(p: IntPolynomial, radius: Fraction) -> int:
    """Roots of p strictly inside |z| < radius, radius a positive rational."""
    if radius <= 0:
        raise ValueError("radius must be positive")
    scaled = p.scale_argument(radius.numerator, radius.denominator)
    return unit_disk_count_unchecked(scaled)
