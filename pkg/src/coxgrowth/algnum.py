"""Certified classification of monic integer polynomials: Salem / Pisot / Perron.

Salem structure is decided through the substitution w = z + 1/z, which turns a
reciprocal polynomial of degree 2d into a degree-d polynomial whose real roots
in (-2, 2) correspond to unit-circle root pairs and whose roots beyond 2 come
from real pairs (t, 1/t).  Pisot uses Sturm counts plus the exact unit-disk
count.  Perron runs a floating inclusion-disk ladder (residual a-posteriori
bounds) with an exact disk-counting fallback that always terminates thanks to
two exact modulus-tie detectors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    BadIsolation,
    ClassificationAnomaly,
    NotSquarefree,
    OnCircleOrDegenerate,
)
from .diskcount import disk_count, schur_cohn_inside_count
from .polynomials import (
    IntPolynomial,
    interpolate_integer_values,
    poly_gcd,
    require_monic,
    resultant,
    squarefree_part,
    strip_cyclotomic_factors,
)
from .realroots import (
    IsolatingInterval,
    cauchy_root_bound,
    count_real_roots,
    count_real_roots_above,
    largest_real_root_interval,
    refine_interval,
)

SALEM = "salem"
QUADRATIC_SALEM = "quadratic_salem"
NOT_SALEM = "not_salem"
PISOT = "pisot"
INTEGER_PISOT = "integer_pisot"
NOT_PISOT = "not_pisot"
PERRON = "perron"
NOT_PERRON = "not_perron"
INDETERMINATE = "indeterminate"

PRECISION_LADDER = (64, 128, 256, 512)


@dataclass(frozen=True)
class Classification:
    verdict: str
    polynomial: IntPolynomial
    certificate: dict = field(default_factory=dict)
    notes: tuple[str, ...] = ()


def _require_squarefree(p: IntPolynomial) -> None:
    if squarefree_part(p) != p.primitive_part():
        raise NotSquarefree(f"{p} has repeated factors")


# -- Salem ---------------------------------------------------------------------


def w_substitution(p: IntPolynomial) -> IntPolynomial:
    """For reciprocal p of even degree 2d, the q with q(z + 1/z) = p(z)/z^d."""
    if not p.is_palindromic() or p.degree % 2 != 0:
        raise ValueError("w-substitution needs a reciprocal polynomial of even degree")
    d = p.degree // 2
    c = p.coeffs
    q = IntPolynomial((c[d],))
    r_prev = IntPolynomial((2,))  # z^0 + z^0
    r_cur = IntPolynomial((0, 1))  # z + 1/z
    for j in range(1, d + 1):
        q = q + c[d + j] * r_cur
        r_prev, r_cur = r_cur, IntPolynomial((0, 1)) * r_cur - r_prev
    return q


def classify_salem(p: IntPolynomial) -> Classification:
    """Salem verdict for a monic squarefree cyclotomic-stripped polynomial.

    Salem structure: reciprocal, exactly one real root pair (t, 1/t) with
    t > 1, everything else on the unit circle; certified by Sturm counts of
    the w-image having one root in (2, inf) and d-1 roots in (-2, 2).  Degree
    2 reciprocal with t > 1 is reported as the quadratic variant.
    """
    require_monic(p)
    _require_squarefree(p)
    if p.degree < 1:
        raise ClassificationAnomaly("constant polynomial")
    if not p.is_palindromic():
        return Classification(NOT_SALEM, p, {"reason": "not reciprocal"})
    if p.degree % 2 != 0:
        return Classification(NOT_SALEM, p, {"reason": "odd-degree reciprocal (has root -1)"})
    if p.sign_at(Fraction(1)) == 0 or p.sign_at(Fraction(-1)) == 0:
        return Classification(NOT_SALEM, p, {"reason": "root at z = 1 or z = -1"})
    d = p.degree // 2
    q = w_substitution(p)
    bound = cauchy_root_bound(q) + 1
    above = count_real_roots(q, Fraction(2), bound, include_high=False)
    middle = count_real_roots(q, Fraction(-2), Fraction(2), include_high=False)
    cert = {
        "w_polynomial": list(q.coeffs),
        "roots_above_2": above,
        "roots_in_minus2_2": middle,
        "half_degree": d,
    }
    if above == 1 and middle == d - 1:
        tau_iv = largest_real_root_interval(p, min_value=Fraction(1))
        cert["tau_interval"] = _interval_payload(tau_iv)
        verdict = QUADRATIC_SALEM if p.degree == 2 else SALEM
        notes = ()
        if p.degree == 2:
            notes = (
                "degree-2 reciprocal pair (t, 1/t); the strict definition asks degree >= 4",
            )
        return Classification(verdict, p, cert, notes)
    return Classification(NOT_SALEM, p, cert)


# -- Pisot ----------------------------------------------------------------------


def classify_pisot(p: IntPolynomial) -> Classification:
    """Pisot verdict: one real root > 1, every other root strictly inside |z| < 1."""
    require_monic(p)
    _require_squarefree(p)
    if p.degree < 1:
        raise ClassificationAnomaly("constant polynomial")
    if p.degree == 1:
        root = -p.coefficient(0)
        if root >= 2:
            return Classification(
                INTEGER_PISOT, p, {"root": root, "inside_count": 0}
            )
        return Classification(NOT_PISOT, p, {"reason": f"root {root} is not > 1"})
    bound = cauchy_root_bound(p) + 1
    above_one = count_real_roots(p, Fraction(1), bound, include_high=False)
    try:
        inside = schur_cohn_inside_count(p)
    except OnCircleOrDegenerate as exc:
        return Classification(
            NOT_PISOT,
            p,
            {"reason": "root on the unit circle", "detail": str(exc)},
        )
    cert = {"roots_above_1": above_one, "inside_count": inside, "degree": p.degree}
    if above_one == 1 and inside == p.degree - 1:
        tau_iv = largest_real_root_interval(p, min_value=Fraction(1))
        cert["tau_interval"] = _interval_payload(tau_iv)
        return Classification(PISOT, p, cert)
    return Classification(NOT_PISOT, p, cert)


# -- Perron ------------------------------------------------------------------------


def _interval_payload(iv: IsolatingInterval | None) -> dict:
    if iv is None:
        return {}
    return {
        "low": f"{iv.low.numerator}/{iv.low.denominator}",
        "high": f"{iv.high.numerator}/{iv.high.denominator}",
        "float": iv.as_float(),
    }


def _mpf_to_fraction(x) -> Fraction:
    from mpmath import mpf

    m = mpf(x)
    sign, mantissa, exponent, _ = m._mpf_
    num = -int(mantissa) if sign else int(mantissa)
    if exponent >= 0:
        return Fraction(num * (1 << exponent))
    return Fraction(num, 1 << (-exponent))


def _float_disk_certificate(
    p: IntPolynomial, tau_iv: IsolatingInterval, precision: int
) -> dict | None:
    """Inclusion disks around floating roots; None when certification fails.

    Disk radius n * |p(center)| / prod |center - other| around each approximate
    root covers all true roots (centers taken together), so showing every
    non-dominant disk below tau_iv.low certifies a positive modulus gap.
    """
    from mpmath import mp, mpf, polyroots

    n = p.degree
    with mp.workprec(precision):
        try:
            roots = polyroots([mpf(c) for c in reversed(p.coeffs)], maxsteps=200, extraprec=precision)
        except Exception:
            return None
        tau_mid = mpf(tau_iv.midpoint.numerator) / mpf(tau_iv.midpoint.denominator)
        # residual-based radii, inflated to absorb evaluation roundoff
        radii = []
        for i, r in enumerate(roots):
            sep = mpf(1)
            for j, s in enumerate(roots):
                if i != j:
                    sep *= abs(r - s)
            if sep == 0:
                return None
            residual = abs(_eval_mp(p, r, precision * 2))
            radii.append(n * residual / sep * (1 + mpf(2) ** (10 - precision)))
        # dominant root: closest to the isolating interval midpoint
        idx = min(range(len(roots)), key=lambda i: abs(roots[i] - tau_mid))
        if abs(roots[idx].imag) > mpf(2) ** (-precision // 4):
            return None
        tau_low = Fraction(tau_iv.low)
        rad = [_mpf_to_fraction(x) for x in radii]
        centers = [(_mpf_to_fraction(r.real), _mpf_to_fraction(r.imag)) for r in roots]
        moduli = []
        for i in range(len(roots)):
            if i == idx:
                continue
            re, im = centers[i]
            mod_upper = _fraction_sqrt_upper(re * re + im * im) + rad[i]
            moduli.append(mod_upper)
            if mod_upper >= tau_low:
                return None
            # the dominant disk must be disjoint from this one, otherwise the
            # union component could hide a second root above tau_low
            dre = re - centers[idx][0]
            dim = im - centers[idx][1]
            dist_sq = dre * dre + dim * dim
            dist_lower = (
                dist_sq / _fraction_sqrt_upper(dist_sq) if dist_sq > 0 else Fraction(0)
            )
            if dist_lower <= rad[i] + rad[idx]:
                return None
        return {
            "method": "inclusion-disks",
            "precision_bits": precision,
            "dominant": float(roots[idx].real),
            "max_other_modulus_bound": float(max(moduli)) if moduli else 0.0,
            "gap_lower_bound": float(tau_low - max(moduli)) if moduli else float(tau_low),
        }


def _eval_mp(p: IntPolynomial, z, precision: int):
    from mpmath import mp

    with mp.workprec(precision):
        acc = 0
        for c in reversed(p.coeffs):
            acc = acc * z + c
        return acc


def _fraction_sqrt_upper(x: Fraction) -> Fraction:
    """A rational upper bound for sqrt(x): Newton's mean is >= sqrt for any g > 0."""
    if x == 0:
        return Fraction(0)
    import math

    fx = float(x)
    guess = Fraction(math.sqrt(fx)) if 0 < fx < math.inf else x + 1
    if guess <= 0:
        guess = x + 1
    for _ in range(2):
        guess = (guess + x / guess) / 2
    return guess


def _minus_tau_is_root(p: IntPolynomial, tau_iv: IsolatingInterval) -> bool:
    g = poly_gcd(p, p.negate_argument())
    if g.degree < 1:
        return False
    return count_real_roots(g, tau_iv.low, tau_iv.high, include_high=True) >= 1


def _pair_product_polynomial(p: IntPolynomial) -> IntPolynomial:
    """Monic polynomial of degree n**2 whose roots are all products z_i * z_j."""
    n = p.degree
    deg = n * n
    points = list(range(deg + 1))
    values = []
    for x0 in points:
        qx = IntPolynomial(tuple(c * x0**k for k, c in enumerate(p.coeffs))[::-1])
        values.append(resultant(p, qx))
    coeffs = interpolate_integer_values(points, values)
    out = []
    for c in coeffs:
        if c.denominator != 1:
            raise ClassificationAnomaly("pair-product interpolation non-integral")
        out.append(c.numerator)
    return IntPolynomial(out)


def _square_roots_polynomial(p: IntPolynomial) -> IntPolynomial:
    """Polynomial (up to sign) whose roots are the squares of p's roots."""
    u = p * p.negate_argument()
    even = u.coeffs[::2]
    q = IntPolynomial(even)
    if q.lead < 0:
        q = -q
    return q


def _has_modulus_tie(p: IntPolynomial, tau_iv: IsolatingInterval) -> tuple[bool, dict]:
    """Exact detection of any other root with modulus exactly tau.

    Counts the multiplicity of tau**2 among all pairwise root products; the
    diagonal pair (tau, tau) contributes one, anything further means a tie
    (-tau, or a conjugate pair of modulus tau, or a worse violation).
    """
    sq = squarefree_part(_square_roots_polynomial(p))
    iv = tau_iv
    lo2, hi2 = iv.low * iv.low, iv.high * iv.high
    while count_real_roots(sq, lo2, hi2, include_high=True) != 1:
        iv = refine_interval(p, iv, iv.width / 4)
        lo2, hi2 = iv.low * iv.low, iv.high * iv.high
    s = _pair_product_polynomial(p)
    multiplicity = 0
    current = s
    while not current.is_zero():
        g = poly_gcd(current, sq)
        if g.degree < 1 or count_real_roots(g, lo2, hi2, include_high=True) == 0:
            break
        multiplicity += 1
        current = current.derivative()
    if multiplicity < 1:
        raise ClassificationAnomaly("tau**2 not found among pairwise products")
    return multiplicity >= 2, {"pair_product_multiplicity": multiplicity}


def classify_perron(
    p: IntPolynomial,
    tau_interval: IsolatingInterval,
    precision_ladder: tuple[int, ...] = PRECISION_LADDER,
    max_refinements: int = 60,
) -> Classification:
    """Perron verdict: the isolated real root dominates every other in modulus.

    Floating inclusion disks certify the common case; otherwise exact disk
    counts around radii taken from the refined isolating interval decide, with
    gcd and pairwise-product detectors handling exact modulus ties.
    """
    require_monic(p)
    _require_squarefree(p)
    n = p.degree
    # the interval must isolate a root of p
    if p.sign_at(tau_interval.low) * p.sign_at(tau_interval.high) >= 0:
        raise BadIsolation("interval endpoints do not bracket a sign change")
    if count_real_roots(p, tau_interval.low, tau_interval.high, include_high=True) != 1:
        raise BadIsolation("interval does not isolate exactly one root")
    if tau_interval.low < 1:
        tau_hi_only = count_real_roots(p, Fraction(1), tau_interval.high)
        if tau_hi_only != 1:
            return Classification(NOT_PERRON, p, {"reason": "dominant root not > 1"})

    if n == 1:
        root = -p.coefficient(0)
        if root >= 2:
            return Classification(PERRON, p, {"root": root, "method": "integer"})
        return Classification(NOT_PERRON, p, {"reason": f"root {root} is not > 1"})

    iv = tau_interval
    for precision in precision_ladder:
        cert = _float_disk_certificate(p, iv, precision)
        if cert is not None:
            cert["tau_interval"] = _interval_payload(iv)
            return Classification(PERRON, p, cert)

    # exact pathway
    if _minus_tau_is_root(p, iv):
        return Classification(
            NOT_PERRON, p, {"reason": "-tau is also a root", "method": "gcd-detector"}
        )
    tie, tie_cert = _has_modulus_tie(p, iv)
    if tie:
        return Classification(
            NOT_PERRON,
            p,
            {"reason": "another root shares modulus tau", **tie_cert, "method": "pair-product"},
        )

    for _ in range(max_refinements):
        rho = iv.low
        try:
            inside = disk_count(p, rho)
        except OnCircleOrDegenerate:
            iv = refine_interval(p, iv, iv.width / 3)
            continue
        if inside == n - 1:
            return Classification(
                PERRON,
                p,
                {
                    "method": "exact-disk-count",
                    "radius": f"{rho.numerator}/{rho.denominator}",
                    "inside": inside,
                    "tau_interval": _interval_payload(iv),
                },
            )
        try:
            inside_hi = disk_count(p, iv.high)
        except OnCircleOrDegenerate:
            iv = refine_interval(p, iv, iv.width / 3)
            continue
        if n - inside_hi >= 1:
            return Classification(
                NOT_PERRON,
                p,
                {
                    "method": "exact-disk-count",
                    "reason": "another root at modulus >= tau_high",
                    "outside": n - inside_hi,
                },
            )
        iv = refine_interval(p, iv, iv.width / 4)
    return Classification(INDETERMINATE, p, {"reason": "refinement budget exhausted"})


# -- combined dispatch for growth numerators ----------------------------------------


@dataclass(frozen=True)
class GrowthClassification:
    chi: int
    primary_verdict: str
    stripped: IntPolynomial
    cyclotomic_factors: tuple[tuple[int, int], ...]
    z_power: int
    salem: Classification | None
    pisot: Classification | None
    perron: Classification | None
    tau_interval: IsolatingInterval
    tau: float
    notes: tuple[str, ...] = ()


def classify_growth_series(gs, precision_ladder: tuple[int, ...] = PRECISION_LADDER):
    """Strip the reduced numerator, then classify per the Euler characteristic.

    chi = 0 dispatches to the Salem classifier, chi >= 1 to Pisot, and the
    Perron classifier always runs as the weakest claim; the Salem/Pisot =>
    Perron implication is asserted.
    """
    from .growth import growth_rate

    gr = growth_rate(gs)
    f = gr.minimal_polynomial_candidate
    chi = gs.chi
    tau_iv = gr.interval
    # re-anchor the interval on the stripped factor for the sub-classifiers
    f_iv = largest_real_root_interval(f, min_value=Fraction(1))
    if f_iv is None:
        raise ClassificationAnomaly("stripped factor lost its dominant root")

    salem = classify_salem(f) if chi == 0 else None
    pisot = classify_pisot(f) if chi >= 1 else None
    perron = classify_perron(f, f_iv, precision_ladder)

    if salem is not None and salem.verdict in (SALEM, QUADRATIC_SALEM):
        primary = salem.verdict
        if perron.verdict != PERRON:
            raise ClassificationAnomaly("Salem verdict without Perron verdict")
    elif pisot is not None and pisot.verdict in (PISOT, INTEGER_PISOT):
        primary = pisot.verdict
        if perron.verdict != PERRON:
            raise ClassificationAnomaly("Pisot verdict without Perron verdict")
    else:
        primary = perron.verdict

    notes = gr.notes
    if gr.squarefree_collapsed:
        notes = notes + ("repeated factors collapsed before classification",)
    # factor inventory relative to the canonical numerator: factors cancelled
    # against the block denominator plus factors stripped afterwards
    merged: dict[int, int] = {}
    for idx, mult in tuple(gs.reduced_by) + tuple(gr.cyclotomic_factors):
        merged[idx] = merged.get(idx, 0) + mult
    return GrowthClassification(
        chi=chi,
        primary_verdict=primary,
        stripped=f,
        cyclotomic_factors=tuple(sorted(merged.items())),
        z_power=gr.z_power,
        salem=salem,
        pisot=pisot,
        perron=perron,
        tau_interval=tau_iv,
        tau=gr.value,
        notes=notes,
    )


def classification_to_json_dict(c: Classification) -> dict:
    return {
        "verdict": c.verdict,
        "polynomial": list(c.polynomial.coeffs),
        "certificate": _jsonable(c.certificate),
        "notes": list(c.notes),
    }


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, IntPolynomial):
        return list(obj.coeffs)
    if isinstance(obj, float):
        return float(f"{obj:.17g}")
    return obj


def growth_classification_to_json_dict(gc: GrowthClassification) -> dict:
    out = {
        "chi": gc.chi,
        "verdict": gc.primary_verdict,
        "stripped_factor": list(gc.stripped.coeffs),
        "cyclotomic_factors": [list(t) for t in gc.cyclotomic_factors],
        "z_power": gc.z_power,
        "tau": float(f"{gc.tau:.17g}"),
        "tau_interval": _jsonable(_interval_payload(gc.tau_interval)),
        "notes": list(gc.notes),
    }
    for name in ("salem", "pisot", "perron"):
        sub = getattr(gc, name)
        if sub is not None:
            out[name] = classification_to_json_dict(sub)
    return out
