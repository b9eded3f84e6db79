"""Dense univariate polynomials over arbitrary-precision integers.

Coefficients are stored ascending (index = degree) with trailing zeros
trimmed, so the zero polynomial has an empty coefficient tuple.  Everything
here is exact; no floats enter any arithmetic path.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import InvalidBlock, NotMonic, ZeroInput


def _trim(coeffs: Sequence[int]) -> tuple[int, ...]:
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


class IntPolynomial:
    """Immutable dense polynomial with integer coefficients."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[int] = ()):
        self._c = _trim(tuple(int(c) for c in coeffs))

    # -- basic inspection ------------------------------------------------

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self._c

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self._c) - 1

    def is_zero(self) -> bool:
        return not self._c

    @property
    def lead(self) -> int:
        if not self._c:
            raise ZeroInput("zero polynomial has no leading coefficient")
        return self._c[-1]

    def is_monic(self) -> bool:
        return bool(self._c) and self._c[-1] == 1

    def coefficient(self, i: int) -> int:
        return self._c[i] if 0 <= i < len(self._c) else 0

    # -- equality / hashing / repr ----------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, IntPolynomial):
            return self._c == other._c
        if isinstance(other, int):
            return self._c == _trim((other,))
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._c)

    def __repr__(self) -> str:
        return f"IntPolynomial({list(self._c)})"

    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for i, c in enumerate(self._c):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
                continue
            var = "z" if i == 1 else f"z^{i}"
            mag = "" if abs(c) == 1 else f"{abs(c)}*"
            term = f"{mag}{var}"
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(f"+ {term}" if c > 0 else f"- {term}")
        return " ".join(parts)

    # -- ring operations ---------------------------------------------------

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(tuple(-c for c in self._c))

    def __add__(self, other) -> "IntPolynomial":
        other = _coerce(other)
        a, b = self._c, other._c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPolynomial(out)

    __radd__ = __add__

    def __sub__(self, other) -> "IntPolynomial":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "IntPolynomial":
        return _coerce(other) + (-self)

    def __mul__(self, other) -> "IntPolynomial":
        other = _coerce(other)
        a, b = self._c, other._c
        if not a or not b:
            return IntPolynomial()
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "IntPolynomial":
        if n < 0:
            raise ValueError("negative power")
        result = IntPolynomial((1,))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shifted(self, k: int) -> "IntPolynomial":
        """Multiply by z**k."""
        if self.is_zero():
            return self
        return IntPolynomial((0,) * k + self._c)

    # -- evaluation ---------------------------------------------------------

    def __call__(self, x):
        """Exact Horner evaluation at an int or Fraction."""
        acc = 0
        for c in reversed(self._c):
            acc = acc * x + c
        return acc

    def eval_scaled(self, num: int, den: int) -> int:
        """Return p(num/den) * den**deg(p) as an exact integer.

        The sign equals sign(p(num/den)) whenever den > 0.
        """
        if not self._c:
            return 0
        acc = self._c[-1]
        dpow = 1
        for c in reversed(self._c[:-1]):
            dpow *= den
            acc = acc * num + c * dpow
        return acc

    def sign_at(self, x: Fraction) -> int:
        v = self.eval_scaled(x.numerator, x.denominator)
        return (v > 0) - (v < 0)

    # -- calculus / transforms ----------------------------------------------

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(tuple(i * c for i, c in enumerate(self._c) if i))

    def reciprocal(self) -> "IntPolynomial":
        """Coefficient reversal  z**deg * p(1/z)."""
        if not self._c:
            raise ZeroInput("reciprocal of the zero polynomial")
        return IntPolynomial(tuple(reversed(self._c)))

    def is_palindromic(self) -> bool:
        return bool(self._c) and self._c == tuple(reversed(self._c))

    def is_antipalindromic(self) -> bool:
        return bool(self._c) and self._c == tuple(-c for c in reversed(self._c))

    def scale_argument(self, num: int, den: int) -> "IntPolynomial":
        """Return den**deg * p(num/den * z), an integer polynomial."""
        d = self.degree
        out = []
        for i, c in enumerate(self._c):
            out.append(c * num**i * den ** (d - i))
        return IntPolynomial(out)

    def negate_argument(self) -> "IntPolynomial":
        return IntPolynomial(tuple(-c if i & 1 else c for i, c in enumerate(self._c)))

    def trailing_zero_power(self) -> int:
        """Largest k with z**k dividing p (0 for p(0) != 0; 0 for zero poly)."""
        for i, c in enumerate(self._c):
            if c != 0:
                return i
        return 0

    def strip_z_power(self) -> tuple["IntPolynomial", int]:
        k = self.trailing_zero_power()
        if k == 0:
            return self, 0
        return IntPolynomial(self._c[k:]), k

    # -- content / primitive part -------------------------------------------

    def content(self) -> int:
        """Positive gcd of the coefficients (0 for the zero polynomial)."""
        from math import gcd

        g = 0
        for c in self._c:
            g = gcd(g, c)
        return g

    def primitive_part(self) -> "IntPolynomial":
        """Divide out the content; normalize the leading coefficient positive."""
        if not self._c:
            return self
        g = self.content()
        if self._c[-1] < 0:
            g = -g
        return IntPolynomial(tuple(c // g for c in self._c))

    def content_normalized(self) -> "IntPolynomial":
        """Divide out the content only; the sign of every value is preserved."""
        if not self._c:
            return self
        g = self.content()
        return IntPolynomial(tuple(c // g for c in self._c))

    # -- division -------------------------------------------------------------

    def divmod_exact(self, divisor: "IntPolynomial") -> tuple["IntPolynomial", "IntPolynomial"]:
        """Quotient and remainder over the rationals, demanding both integral.

        Raises ValueError if the rational quotient or remainder is not an
        integer polynomial.
        """
        q, r = _frac_divmod(self._c, divisor._c)
        return _as_int_poly(q), _as_int_poly(r)

    def exact_div(self, divisor: "IntPolynomial") -> "IntPolynomial":
        """Exact quotient; raises ValueError when divisor does not divide."""
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if divisor.is_monic():
            q, r = _monic_divmod(self._c, divisor._c)
            if any(r):
                raise ValueError("division is not exact")
            return IntPolynomial(q)
        q, r = self.divmod_exact(divisor)
        if not r.is_zero():
            raise ValueError("division is not exact")
        return q

    def divides(self, other: "IntPolynomial") -> bool:
        try:
            other.exact_div(self)
            return True
        except (ValueError, ZeroDivisionError):
            return False


def _coerce(x) -> IntPolynomial:
    if isinstance(x, IntPolynomial):
        return x
    if isinstance(x, int):
        return IntPolynomial((x,))
    raise TypeError(f"cannot coerce {type(x)!r} to IntPolynomial")


def _monic_divmod(num: Sequence[int], den: Sequence[int]) -> tuple[list[int], list[int]]:
    """Synthetic division by a monic divisor, all-integer."""
    dn = len(den) - 1
    rem = list(num)
    if len(rem) <= dn:
        return [0], rem
    quot = [0] * (len(rem) - dn)
    for i in range(len(rem) - 1, dn - 1, -1):
        c = rem[i]
        if c == 0:
            continue
        quot[i - dn] = c
        for j in range(dn + 1):
            rem[i - dn + j] -= c * den[j]
    return quot, rem[:dn]


def _frac_divmod(num: Sequence[int], den: Sequence[int]) -> tuple[list[Fraction], list[Fraction]]:
    if not any(den):
        raise ZeroDivisionError("polynomial division by zero")
    dn = len(_trim(den)) - 1
    den = _trim(den)
    rem = [Fraction(c) for c in num]
    if len(rem) <= dn:
        return [Fraction(0)], rem
    quot = [Fraction(0)] * (len(rem) - dn)
    lead = Fraction(den[-1])
    for i in range(len(rem) - 1, dn - 1, -1):
        c = rem[i] / lead
        if c == 0:
            continue
        quot[i - dn] = c
        for j in range(dn + 1):
            rem[i - dn + j] -= c * den[j]
    return quot, rem[:dn]


def _as_int_poly(fracs: Sequence[Fraction]) -> IntPolynomial:
    out = []
    for f in fracs:
        if f.denominator != 1:
            raise ValueError("result has non-integer coefficients")
        out.append(f.numerator)
    return IntPolynomial(out)


ZERO = IntPolynomial()
ONE = IntPolynomial((1,))
Z = IntPolynomial((0, 1))


# -- pseudo-remainder chains and gcd -------------------------------------------


def signed_pseudo_rem(f: IntPolynomial, g: IntPolynomial) -> IntPolynomial:
    """Remainder of f by g scaled by a *positive* constant.

    Same real-line sign behaviour as the true remainder, but all-integer.
    """
    if g.is_zero():
        raise ZeroDivisionError("pseudo-remainder by zero")
    delta = f.degree - g.degree
    if delta < 0:
        return f
    lc = g.lead
    scale = abs(lc) ** (delta + 1)
    rem = [c * scale for c in f.coeffs]
    den = g.coeffs
    dn = len(den) - 1
    for i in range(len(rem) - 1, dn - 1, -1):
        c = rem[i]
        if c == 0:
            continue
        # exact by the pseudo-division invariant
        q, check = divmod(c, den[-1])
        if check:
            # fall back: multiply the rest up (cannot happen with the
            # abs-scaling above, kept as a guard)
            raise ArithmeticError("pseudo-division invariant violated")
        rem[i] = 0
        for j in range(dn):
            rem[i - dn + j] -= q * den[j]
    return IntPolynomial(rem[:dn])


def poly_gcd(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    """Primitive gcd over the integers, leading coefficient positive."""
    if a.is_zero():
        return b.primitive_part()
    if b.is_zero():
        return a.primitive_part()
    f, g = a.primitive_part(), b.primitive_part()
    if f.degree < g.degree:
        f, g = g, f
    while not g.is_zero():
        r = signed_pseudo_rem(f, g).primitive_part()
        f, g = g, r
    return f.primitive_part()


def squarefree_part(p: IntPolynomial) -> IntPolynomial:
    """p / gcd(p, p'), primitive, leading coefficient positive."""
    if p.is_zero():
        raise ZeroInput("squarefree part of the zero polynomial")
    g = poly_gcd(p, p.derivative())
    if g.degree <= 0:
        return p.primitive_part()
    return p.exact_div(g).primitive_part()


# -- the block calculus ----------------------------------------------------------


def block(m: int) -> IntPolynomial:
    """1 + z + ... + z**(m-1); block(1) == 1."""
    if m < 1:
        raise InvalidBlock(f"block size must be >= 1, got {m}")
    return IntPolynomial((1,) * m)


def block_product(ms: Iterable[int]) -> IntPolynomial:
    """Product of blocks; the empty product is 1."""
    result = ONE
    for m in ms:
        result = result * block(m)
    return result


def block_value(ms: Iterable[int], x: Fraction) -> Fraction:
    """Exact value of the block product at x without expanding it."""
    acc = Fraction(1)
    for m in ms:
        if x == 1:
            acc *= m
        else:
            acc *= (x**m - 1) / (x - 1)
    return acc


# -- cyclotomic polynomials -------------------------------------------------------


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> IntPolynomial:
    """The n-th cyclotomic polynomial by iterated exact division of z**n - 1."""
    if n < 1:
        raise InvalidBlock(f"cyclotomic index must be >= 1, got {n}")
    if n == 1:
        return IntPolynomial((-1, 1))
    num = IntPolynomial((-1,) + (0,) * (n - 1) + (1,))
    for d in range(1, n):
        if n % d == 0:
            num = num.exact_div(cyclotomic(d))
    return num


def totient(n: int) -> int:
    result = n
    p = 2
    m = n
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def cyclotomic_candidates(max_degree: int, index_bound: int | None = None) -> list[int]:
    """Indices n with deg(cyclotomic(n)) <= max_degree.

    totient(n) >= sqrt(n/2) caps the scan at n <= 2*max_degree**2.
    """
    if index_bound is None:
        index_bound = 2 * max_degree * max_degree + 1
    return [n for n in range(1, index_bound + 1) if totient(n) <= max_degree]


def strip_cyclotomic_factors(
    p: IntPolynomial, index_bound: int | None = None
) -> tuple[IntPolynomial, list[tuple[int, int]]]:
    """Divide out every cyclotomic factor (with multiplicity).

    Returns (stripped, [(n, multiplicity), ...]) with
    stripped * prod(cyclotomic(n)**mult) == p exactly.
    """
    if p.is_zero():
        raise ZeroInput("cannot strip factors of the zero polynomial")
    stripped = p
    factors: list[tuple[int, int]] = []
    for n in cyclotomic_candidates(p.degree, index_bound):
        phi = cyclotomic(n)
        if phi.degree > stripped.degree:
            continue
        mult = 0
        while stripped.degree >= phi.degree:
            q, r = _monic_divmod(stripped.coeffs, phi.coeffs)
            if any(r):
                break
            stripped = IntPolynomial(q)
            mult += 1
        if mult:
            factors.append((n, mult))
    return stripped, factors


# -- resultants ---------------------------------------------------------------------


def resultant(p: IntPolynomial, q: IntPolynomial) -> int:
    """Resultant via fraction-free Bareiss elimination on the Sylvester matrix."""
    if p.is_zero() or q.is_zero():
        return 0
    n, m = p.degree, q.degree
    if n == 0:
        return p.coeffs[0] ** m
    if m == 0:
        return q.coeffs[0] ** n
    size = n + m
    rows: list[list[int]] = []
    pc = list(reversed(p.coeffs))
    qc = list(reversed(q.coeffs))
    for i in range(m):
        rows.append([0] * i + pc + [0] * (size - n - 1 - i))
    for i in range(n):
        rows.append([0] * i + qc + [0] * (size - m - 1 - i))
    # Bareiss
    sign = 1
    prev = 1
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


def interpolate_integer_values(points: Sequence[int], values: Sequence[int]) -> list[Fraction]:
    """Lagrange interpolation; returns coefficients (ascending) as Fractions."""
    k = len(points)
    coeffs = [Fraction(0)] * k
    for i, (xi, yi) in enumerate(zip(points, values)):
        # basis polynomial prod_{j != i} (z - xj) / (xi - xj)
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, xj in enumerate(points):
            if j == i:
                continue
            new = [Fraction(0)] * (len(basis) + 1)
            for t, c in enumerate(basis):
                new[t] -= c * xj
                new[t + 1] += c
            basis = new
            denom *= xi - xj
        w = Fraction(yi) / denom
        for t, c in enumerate(basis):
            coeffs[t] += w * c
    return coeffs


def require_monic(p: IntPolynomial) -> None:
    if p.is_zero() or not p.is_monic():
        raise NotMonic(f"expected a monic polynomial, got {p!r}")
