"""Exact real-root counting and isolation via Sturm sequences.

All interval endpoints are rationals; every count is an exact integer.  The
chains use integer pseudo-remainders scaled by positive constants only, with
primitive-part normalization at each step to keep coefficients small.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ZeroInput
from .polynomials import IntPolynomial, signed_pseudo_rem, squarefree_part

DEFAULT_WIDTH = Fraction(1, 2**64)


@dataclass(frozen=True)
class IsolatingInterval:
    """Open-ish rational interval certified to contain exactly one real root."""

    low: Fraction
    high: Fraction
    multiplicity_one: bool = True

    @property
    def width(self) -> Fraction:
        return self.high - self.low

    @property
    def midpoint(self) -> Fraction:
        return (self.low + self.high) / 2

    def as_float(self) -> float:
        return float(self.midpoint)

    def __contains__(self, x: Fraction) -> bool:
        return self.low < x < self.high


def sturm_chain(p: IntPolynomial) -> list[IntPolynomial]:
    """Sturm sequence of p: p, p', then negated remainders, primitive-normalized."""
    if p.is_zero():
        raise ZeroInput("Sturm chain of the zero polynomial")
    chain = [p.content_normalized()]
    d = p.derivative()
    if d.is_zero():
        return chain
    chain.append(d.content_normalized())
    while True:
        r = signed_pseudo_rem(chain[-2], chain[-1])
        if r.is_zero():
            break
        chain.append((-r).content_normalized())
    return chain


def _variations(signs: list[int]) -> int:
    count = 0
    prev = 0
    for s in signs:
        if s == 0:
            continue
        if prev and s != prev:
            count += 1
        prev = s
    return count


def _variations_at(chain: list[IntPolynomial], x: Fraction) -> int:
    return _variations([q.sign_at(x) for q in chain])


def _variations_at_inf(chain: list[IntPolynomial], positive: bool) -> int:
    signs = []
    for q in chain:
        s = 1 if q.lead > 0 else -1
        if not positive and q.degree % 2 == 1:
            s = -s
        signs.append(s)
    return _variations(signs)


def cauchy_root_bound(p: IntPolynomial) -> Fraction:
    """1 + max |c_i / lead|: all complex roots lie strictly inside this radius."""
    if p.is_zero():
        raise ZeroInput("root bound of the zero polynomial")
    lead = abs(p.lead)
    m = max((abs(c) for c in p.coeffs[:-1]), default=0)
    return 1 + Fraction(m, lead)


def _deflate_rational_root(p: IntPolynomial, x: Fraction) -> IntPolynomial:
    factor = IntPolynomial((-x.numerator, x.denominator))
    q, r = p.divmod_exact(factor)
    if not r.is_zero():
        raise ValueError(f"{x} is not a root")
    return q


def count_real_roots(
    p: IntPolynomial,
    low: Fraction,
    high: Fraction,
    include_low: bool = False,
    include_high: bool = True,
) -> int:
    """Exact number of distinct real roots of p in the requested interval.

    Works on the squarefree part, so multiplicities collapse to one.
    """
    if p.is_zero():
        raise ZeroInput("cannot count roots of the zero polynomial")
    if low > high:
        raise ValueError("low > high")
    sf = squarefree_part(p)
    count = 0
    low = Fraction(low)
    high = Fraction(high)
    if low == high:
        return 1 if (include_low or include_high) and sf.sign_at(low) == 0 else 0
    if sf.sign_at(low) == 0:
        if include_low:
            count += 1
        sf = _deflate_rational_root(sf, low)
    if not sf.is_zero() and sf.sign_at(high) == 0:
        if include_high:
            count += 1
        sf = _deflate_rational_root(sf, high)
    if sf.degree < 1:
        return count
    chain = sturm_chain(sf)
    return count + _variations_at(chain, low) - _variations_at(chain, high)


def count_real_roots_above(p: IntPolynomial, x: Fraction) -> int:
    """Distinct real roots in (x, +infinity)."""
    sf = squarefree_part(p)
    if sf.sign_at(Fraction(x)) == 0:
        sf = _deflate_rational_root(sf, Fraction(x))
    if sf.degree < 1:
        return 0
    chain = sturm_chain(sf)
    return _variations_at(chain, Fraction(x)) - _variations_at_inf(chain, positive=True)


def count_real_roots_all(p: IntPolynomial) -> int:
    sf = squarefree_part(p)
    if sf.degree < 1:
        return 0
    chain = sturm_chain(sf)
    return _variations_at_inf(chain, positive=False) - _variations_at_inf(chain, positive=True)


def isolate_real_roots(
    p: IntPolynomial,
    low: Fraction | None = None,
    high: Fraction | None = None,
    width: Fraction = DEFAULT_WIDTH,
) -> list[IsolatingInterval]:
    """Disjoint isolating intervals, refined to at most the requested width.

    Covers the open interval (low, high); defaults to a Cauchy bound covering
    every real root.
    """
    sf = squarefree_part(p)
    if sf.degree < 1:
        return []
    bound = cauchy_root_bound(sf)
    lo = Fraction(low) if low is not None else -bound
    hi = Fraction(high) if high is not None else bound
    chain = sturm_chain(sf)

    # ensure endpoints are not roots (nudge outward by small dyadics)
    step = Fraction(1, 2**20)
    while sf.sign_at(lo) == 0:
        lo -= step
    while sf.sign_at(hi) == 0:
        hi += step

    out: list[IsolatingInterval] = []

    def recurse(a: Fraction, b: Fraction, va: int, vb: int) -> None:
        n = va - vb
        if n == 0:
            return
        if n == 1 and b - a <= width:
            out.append(IsolatingInterval(a, b))
            return
        mid = (a + b) / 2
        if sf.sign_at(mid) == 0:
            # exact rational root at mid; carve a tiny certified interval
            eps = min(width / 2, (b - a) / 8)
            lo_m, hi_m = mid - eps, mid + eps
            while sf.sign_at(lo_m) == 0:
                lo_m = (a + lo_m) / 2
            while sf.sign_at(hi_m) == 0:
                hi_m = (hi_m + b) / 2
            v1, v2 = _variations_at(chain, lo_m), _variations_at(chain, hi_m)
            out.append(IsolatingInterval(lo_m, hi_m))
            recurse(a, lo_m, va, v1)
            recurse(hi_m, b, v2, vb)
            return
        vm = _variations_at(chain, mid)
        recurse(a, mid, va, vm)
        recurse(mid, b, vm, vb)

    recurse(lo, hi, _variations_at(chain, lo), _variations_at(chain, hi))
    out.sort(key=lambda iv: iv.low)
    return [refine_interval(sf, iv, width) for iv in out]


def refine_interval(
    p: IntPolynomial, interval: IsolatingInterval, width: Fraction
) -> IsolatingInterval:
    """Bisect a sign-changing isolating interval down to the requested width."""
    a, b = interval.low, interval.high
    sa = p.sign_at(a)
    sb = p.sign_at(b)
    if sa == 0 or sb == 0 or sa == sb:
        # fall back to Sturm-count bisection (root may sit at an endpoint of
        # the original carve-out); widen symmetric hair to regain signs
        chain = sturm_chain(p)
        while b - a > width:
            mid = (a + b) / 2
            if p.sign_at(mid) == 0:
                eps = min(width / 2, (b - a) / 8)
                return IsolatingInterval(mid - eps, mid + eps)
            if _variations_at(chain, a) - _variations_at(chain, mid) == 1:
                b = mid
            else:
                a = mid
        return IsolatingInterval(a, b)
    while b - a > width:
        mid = (a + b) / 2
        sm = p.sign_at(mid)
        if sm == 0:
            eps = min(width / 2, (b - a) / 8)
            lo_m, hi_m = mid - eps, mid + eps
            if p.sign_at(lo_m) == sa:
                return IsolatingInterval(lo_m, hi_m)
            a, b = mid - eps, mid + eps
            continue
        if sm == sa:
            a = mid
        else:
            b = mid
    return IsolatingInterval(a, b)


def largest_real_root_interval(
    p: IntPolynomial,
    min_value: Fraction | None = None,
    width: Fraction = DEFAULT_WIDTH,
) -> IsolatingInterval | None:
    """Isolate the largest real root (optionally only if > min_value)."""
    sf = squarefree_part(p)
    if sf.degree < 1:
        return None
    bound = cauchy_root_bound(sf)
    lo = Fraction(min_value) if min_value is not None else -bound
    chain = sturm_chain(sf)
    hi = bound
    while sf.sign_at(hi) == 0:
        hi += Fraction(1)
    while sf.sign_at(lo) == 0:
        lo -= Fraction(1, 2**20)
    v_hi = _variations_at(chain, hi)
    if _variations_at(chain, lo) - v_hi == 0:
        return None
    # binary descent: shrink (a, hi] to contain exactly the top root
    a, b = lo, hi
    while _variations_at(chain, a) - v_hi > 1:
        mid = (a + b) / 2
        while sf.sign_at(mid) == 0:
            mid += min(Fraction(1, 2**30), (b - mid) / 4)
        if _variations_at(chain, mid) - v_hi >= 1:
            a = mid
        else:
            b = mid
    iv = IsolatingInterval(a, b)
    return refine_interval(sf, iv, width)


def quadratic_surd_cmp(a: int, b: int, c: int, d: int, x: Fraction) -> int:
    """Exact sign of (a + b*sqrt(c))/d - x for integers a, b, c >= 0, d > 0."""
    if c < 0 or d <= 0:
        raise ValueError("need c >= 0 and d > 0")
    lhs = Fraction(a) - Fraction(d) * Fraction(x)  # compare lhs vs -b*sqrt(c)
    if b == 0:
        return (lhs > 0) - (lhs < 0)
    if b > 0:
        # lhs + b*sqrt(c) wanted positive iff lhs > -b*sqrt(c)
        if lhs >= 0:
            return 1 if (lhs > 0 or c > 0) else 0
        return (lhs * lhs < b * b * c) - (lhs * lhs > b * b * c)
    # b < 0: lhs - |b|*sqrt(c)
    if lhs <= 0:
        return -1 if (lhs < 0 or c > 0) else 0
    return (lhs * lhs > b * b * c) - (lhs * lhs < b * b * c)


def contains_surd(interval: IsolatingInterval, a: int, b: int, c: int, d: int) -> bool:
    """Exact test that (a + b*sqrt(c))/d lies strictly inside the interval."""
    return (
        quadratic_surd_cmp(a, b, c, d, interval.low) > 0
        and quadratic_surd_cmp(a, b, c, d, interval.high) < 0
    )
