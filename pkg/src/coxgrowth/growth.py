"""Growth series of dimension-<=2 Coxeter systems.

Everything flows through the inverse form 1/f(1/z) = P(z)/Q(z).  For a system
of dimension at most 2 the finite parabolic subgroups have rank <= 2, so
Steinberg's alternating sum collapses to

    1 - N/[2] + sum_i E_i/[2, k_i]

over the distinct edge labels k_i with multiplicities E_i (Solomon factors:
[2] for a single generator, [2, k] for a dihedral pair).  The canonical
numerator and block denominator are kept unreduced alongside the reduced pair;
the reduction divides out shared cyclotomic factors only, which is exact and
complete because the block denominator is a product of cyclotomics.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .diagram import CoxeterSystem, classify_sphericity, dimension_at_most_two, euler_characteristic
from .errors import (
    ClassificationAnomaly,
    DimensionTooHigh,
    Edgeless,
    NotApplicable,
    SeriesAnomaly,
    WrongChi,
)
from .polynomials import (
    IntPolynomial,
    block,
    block_product,
    block_value,
    cyclotomic,
    strip_cyclotomic_factors,
)
from .realroots import (
    DEFAULT_WIDTH,
    IsolatingInterval,
    count_real_roots_above,
    largest_real_root_interval,
)

CHI_ZERO = "chi_zero"
CHI_ONE = "chi_one"
CHI_TWO_PLUS = "chi_two_plus"
EDGELESS_OR_OTHER = "edgeless_or_other"


@dataclass(frozen=True)
class GrowthSeries:
    """Inverse growth function 1/f(1/z) in reduced and canonical form."""

    system: CoxeterSystem
    chi: int
    chi_case: str
    label_counts: tuple[tuple[int, int], ...]  # (label, edge count), ascending
    canonical_numerator: IntPolynomial
    canonical_denominator_blocks: tuple[int, ...]
    canonical_denominator: IntPolynomial
    numerator: IntPolynomial  # reduced, monic
    denominator: IntPolynomial  # reduced, monic
    reduced_by: tuple[tuple[int, int], ...]  # cyclotomic (index, multiplicity)

    @property
    def rank(self) -> int:
        return self.system.rank


def _require_growth_hypotheses(system: CoxeterSystem) -> None:
    ok, witness = dimension_at_most_two(system)
    if not ok:
        raise DimensionTooHigh(
            f"generators {witness} span a finite rank-3 parabolic subgroup"
        )
    verdict = classify_sphericity(system, advisory=False).verdict
    if verdict != "other":
        raise NotApplicable(f"system is {verdict}; growth rate machinery needs neither")


def _canonical_parts(
    rank: int, label_counts: dict[int, int]
) -> tuple[IntPolynomial, tuple[int, ...], IntPolynomial]:
    labels = sorted(label_counts)
    den_blocks = (2, *labels)
    den = block_product(den_blocks)
    num = block_product(den_blocks) - rank * block_product(labels)
    for k in labels:
        others = [m for m in labels if m != k]
        num = num + label_counts[k] * block_product(others)
    return num, den_blocks, den


def _cyclotomic_factor_multiset(blocks: tuple[int, ...]) -> dict[int, int]:
    out: dict[int, int] = {}
    for m in blocks:
        for d in range(2, m + 1):
            if m % d == 0:
                out[d] = out.get(d, 0) + 1
    return out


def _reduce_by_denominator_cyclotomics(
    num: IntPolynomial, den_blocks: tuple[int, ...], den: IntPolynomial
) -> tuple[IntPolynomial, IntPolynomial, tuple[tuple[int, int], ...]]:
    removed: list[tuple[int, int]] = []
    for d, avail in sorted(_cyclotomic_factor_multiset(den_blocks).items()):
        phi = cyclotomic(d)
        used = 0
        while used < avail:
            try:
                num = num.exact_div(phi)
            except ValueError:
                break
            den = den.exact_div(phi)
            used += 1
        if used:
            removed.append((d, used))
    return num, den, tuple(removed)


def growth_series(system: CoxeterSystem) -> GrowthSeries:
    """Inverse growth function via Steinberg's alternating sum.

    Requires dimension <= 2 and a non-spherical, non-affine system.
    """
    _require_growth_hypotheses(system)
    counts = system.label_multiset()
    chi = euler_characteristic(system)
    num, den_blocks, den = _canonical_parts(system.rank, counts)

    red_num, red_den, removed = _reduce_by_denominator_cyclotomics(num, den_blocks, den)
    if not red_num.is_monic() or not red_den.is_monic():
        raise ClassificationAnomaly("reduced inverse form is not monic")
    # exact cross-multiplication check of the reduction
    if red_num * den != num * red_den:
        raise ClassificationAnomaly("reduction changed the rational function")

    if not counts:
        case = EDGELESS_OR_OTHER
    elif chi == 0:
        case = CHI_ZERO
    elif chi == 1:
        case = CHI_ONE
    elif chi >= 2:
        case = CHI_TWO_PLUS
    else:
        case = EDGELESS_OR_OTHER

    return GrowthSeries(
        system=system,
        chi=chi,
        chi_case=case,
        label_counts=tuple(sorted(counts.items())),
        canonical_numerator=num,
        canonical_denominator_blocks=den_blocks,
        canonical_denominator=den,
        numerator=red_num,
        denominator=red_den,
        reduced_by=removed,
    )


def canonical_numerator_value(
    rank: int, label_counts: dict[int, int], x: Fraction
) -> Fraction:
    """Exact value of the canonical numerator at x without expanding blocks.

    Lets callers probe signs of huge-degree numerators (labels in the
    thousands) in O(number of labels) big-integer work.
    """
    labels = sorted(label_counts)
    total = block_value((2, *labels), x) - rank * block_value(labels, x)
    for k in labels:
        others = [m for m in labels if m != k]
        total += label_counts[k] * block_value(others, x)
    return total


def chi_zero_numerator(system: CoxeterSystem) -> IntPolynomial:
    """Canonical numerator over [2, k_1, ..., k_r] for chi = 0 systems."""
    gs = growth_series(system)
    if gs.chi != 0:
        raise WrongChi(f"Euler characteristic is {gs.chi}, not 0")
    return gs.canonical_numerator


def chi_positive_numerator(system: CoxeterSystem) -> IntPolynomial:
    """The distinguished chi >= 1 numerator P with 1/f(1/z) = z^s P / [2, k_1..k_r].

    For chi = 1 the canonical numerator factors as z * P with
    P = [K] - sum_i E_i [k_1, .., k_i - 1, .., k_r]; for chi >= 2 it is P itself:
    P = [2, K] - sum_i E_i z [.., k_i - 1, ..] - chi [K].  Both identities are
    asserted against the Steinberg sum, along with P(0) and P(1) facts.
    """
    gs = growth_series(system)
    chi = gs.chi
    if chi < 1:
        raise WrongChi(f"Euler characteristic is {chi}, not >= 1")
    if not gs.label_counts:
        raise Edgeless("edgeless system; the inverse form is (z - (N-1))/[2]")
    labels = [k for k, _ in gs.label_counts]
    counts = dict(gs.label_counts)
    e_total = sum(counts.values())

    if chi == 1:
        p = block_product(labels)
        for k in labels:
            # [k_1, .., k_i - 1, .., k_r]: one block shrunk by 1
            others = [m for m in labels if m != k]
            p = p - counts[k] * block_product(others + [k - 1])
        if p.shifted(1) != gs.canonical_numerator:
            raise ClassificationAnomaly("chi=1 numerator identity failed")
        expected_p0 = 1 - e_total
    else:
        p = block_product([2, *labels])
        for k in labels:
            others = [m for m in labels if m != k]
            p = p - counts[k] * block_product(others + [k - 1]).shifted(1)
        p = p - chi * block_product(labels)
        if p != gs.canonical_numerator:
            raise ClassificationAnomaly("chi>=2 numerator identity failed")
        expected_p0 = 1 - chi

    if p.coefficient(0) != expected_p0:
        raise ClassificationAnomaly(f"P(0) = {p.coefficient(0)} != {expected_p0}")
    if system.rank >= 3 and p(1) >= 0:
        raise ClassificationAnomaly(f"P(1) = {p(1)} should be negative")
    return p


@dataclass(frozen=True)
class GrowthRate:
    """Certified largest real root of the reduced numerator."""

    interval: IsolatingInterval
    value: float
    minimal_polynomial_candidate: IntPolynomial
    cyclotomic_factors: tuple[tuple[int, int], ...]
    z_power: int
    squarefree_collapsed: bool
    notes: tuple[str, ...]

    @property
    def reciprocal_value(self) -> float:
        return 1.0 / self.value


def growth_rate(gs: GrowthSeries, width: Fraction = DEFAULT_WIDTH) -> GrowthRate:
    """Isolate tau >= 1 on the reduced numerator; radius of convergence 1/tau.

    Certifies via Sturm counts that no real root lies above the returned
    interval, then strips cyclotomic factors and powers of z to expose the
    factor carrying tau.
    """
    p = gs.numerator
    interval = largest_real_root_interval(p, min_value=Fraction(0), width=width)
    if interval is None or interval.high <= 0:
        raise ClassificationAnomaly("numerator has no positive real root")
    if count_real_roots_above(p, interval.high) != 0:
        raise ClassificationAnomaly("failed to certify the largest real root")
    if interval.low < 1 and p.sign_at(Fraction(1)) == 0:
        raise ClassificationAnomaly("tau = 1: system appears to have polynomial growth")

    from .polynomials import squarefree_part

    core, z_pow = p.strip_z_power()
    sf = squarefree_part(core)
    collapsed = sf != core.primitive_part()
    stripped, cyclo = strip_cyclotomic_factors(sf)
    if stripped.degree < 1:
        raise ClassificationAnomaly("stripping removed the factor carrying tau")
    lo_sign = stripped.sign_at(interval.low)
    hi_sign = stripped.sign_at(interval.high)
    if lo_sign * hi_sign >= 0:
        raise ClassificationAnomaly("stripped factor does not change sign across tau")

    value = float(interval.midpoint)
    notes = (
        "growth rate = largest real root of the numerator (>= 1); "
        f"its reciprocal {1.0 / value:.12f} is the radius of convergence, "
        "not the growth rate",
    )
    if interval.low < 1:
        raise ClassificationAnomaly(f"tau interval {interval} dips below 1")
    return GrowthRate(
        interval=interval,
        value=value,
        minimal_polynomial_candidate=stripped,
        cyclotomic_factors=cyclo,
        z_power=z_pow,
        squarefree_collapsed=collapsed,
        notes=notes,
    )


def series_coefficients(gs: GrowthSeries, count: int) -> list[int]:
    """First `count` word-count coefficients of the growth series f(z).

    With 1/f(1/z) = P/Q in lowest terms and deg P = deg Q, f(z) equals
    reverse(Q)/reverse(P); the coefficients satisfy the integer linear
    recurrence driven by reverse(P).  Every coefficient must come out a
    nonnegative integer or SeriesAnomaly is raised.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    p, q = gs.numerator, gs.denominator
    if p.degree != q.degree:
        raise SeriesAnomaly("reduced inverse form must have equal degrees")
    pr = tuple(reversed(p.coeffs))
    qr = tuple(reversed(q.coeffs))
    if pr[0] != 1:
        raise SeriesAnomaly("reversed numerator is not monic at degree 0")
    out: list[int] = []
    for n in range(count):
        acc = qr[n] if n < len(qr) else 0
        for i in range(1, min(n, len(pr) - 1) + 1):
            acc -= pr[i] * out[n - i]
        if acc < 0:
            raise SeriesAnomaly(f"negative word count a_{n} = {acc}")
        out.append(acc)
    return out
