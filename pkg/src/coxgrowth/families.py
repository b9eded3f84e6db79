"""Uniform-label graph families with Perron-certified growth rates.

Wheels, windmills, friendship graphs and triangulated bouquets, all edges
carrying one label k >= 3.  The hypothesis checker verifies the two sufficient
conditions exactly: the embedded dominating four-cycle, and the edge ratio
a = E/(N-1) lying in (1, (1+phi)^2/3] decided by integer arithmetic after one
squaring.  The margin report evaluates the dominance bound quantities in
high-precision floats; those are diagnostics, the Perron verdict itself always
comes from the certified classifier.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .algnum import GrowthClassification, classify_growth_series
from .diagram import (
    CoxeterSystem,
    build_system,
    classify_sphericity,
    contains_dominating_four_cycle,
    dimension_at_most_two,
    euler_characteristic,
)
from .errors import BadFamily, MixedLabels, ScanTooLarge
from .growth import growth_series


@dataclass(frozen=True)
class FamilySpec:
    kind: str  # 'wheel' | 'windmill' | 'friendship' | 'triangulated_bouquet'
    params: tuple[int, ...]
    label: int

    def __post_init__(self):
        if self.label < 3:
            raise BadFamily(f"edge label must be >= 3, got {self.label}")
        kind, params = self.kind, self.params
        if kind == "wheel":
            (n,) = params
            if n < 6:
                raise BadFamily("wheel needs N >= 6")
        elif kind == "windmill":
            q, l = params
            if q < 3 or l < 2:
                raise BadFamily("windmill needs q >= 3 and l >= 2")
        elif kind == "friendship":
            (l,) = params
            if l < 3:
                raise BadFamily("friendship needs l >= 3")
        elif kind == "triangulated_bouquet":
            c, l = params
            if c < 3 or l < 1:
                raise BadFamily("triangulated bouquet needs cycle length >= 3 and l >= 1")
        else:
            raise BadFamily(f"unknown family kind {kind!r}")


def wheel(n: int, label: int = 3) -> FamilySpec:
    return FamilySpec("wheel", (n,), label)


def windmill(q: int, l: int, label: int = 3) -> FamilySpec:
    return FamilySpec("windmill", (q, l), label)


def friendship(l: int, label: int = 3) -> FamilySpec:
    return FamilySpec("friendship", (l,), label)


def triangulated_bouquet(c: int, l: int, label: int = 3) -> FamilySpec:
    return FamilySpec("triangulated_bouquet", (c, l), label)


def generate_family(spec: FamilySpec) -> CoxeterSystem:
    """Build the underlying graph and put spec.label on every edge.

    Wheel(N): an (N-1)-cycle plus a universal hub.  Windmill(q, l): l copies
    of the complete graph K_q sharing one vertex.  Friendship(l) =
    Windmill(3, l).  TriangulatedBouquet(c, l): a universal hub plus l petals
    of c-1 vertices, each petal carrying a (c-1)-cycle and one chord, which
    realises the family's edge count E = (2c-1)/(c-1) * (N-1) exactly; that
    count forces more than a full fan triangulation, so petals with fewer
    than 4 outer vertices (c <= 4) admit no simple realisation and are
    rejected.
    """
    k = spec.label
    kind, params = spec.kind, spec.params
    edges: list[tuple[int, int, int]] = []
    if kind == "wheel":
        (n,) = params
        rim = n - 1
        for i in range(1, rim):
            edges.append((i, i + 1, k))
        edges.append((1, rim, k))
        hub = n
        for i in range(1, rim + 1):
            edges.append((i, hub, k))
        return build_system(n, edges)
    if kind in ("windmill", "friendship"):
        if kind == "friendship":
            (l,) = params
            q = 3
        else:
            q, l = params
        hub = 1
        rank = 1 + l * (q - 1)
        nxt = 2
        for _ in range(l):
            blade = [hub] + list(range(nxt, nxt + q - 1))
            nxt += q - 1
            for a, b in combinations(blade, 2):
                edges.append((a, b, k))
        return build_system(rank, edges)
    # triangulated bouquet
    c, l = params
    if c <= 4:
        raise BadFamily(
            "triangulated bouquet with cycle length <= 4 has no simple graph "
            "realisation at edge count (2c-1)(N-1)/(c-1)"
        )
    hub = 1
    rank = 1 + l * (c - 1)
    nxt = 2
    for _ in range(l):
        petal = list(range(nxt, nxt + c - 1))
        nxt += c - 1
        for v in petal:
            edges.append((hub, v, k))
        for a, b in zip(petal, petal[1:]):
            edges.append((a, b, k))
        edges.append((petal[0], petal[-1], k))
        edges.append((petal[0], petal[2], k))  # the extra chord
    return build_system(rank, edges)


def edge_ratio(system: CoxeterSystem) -> Fraction:
    """a = E/(N-1), exact."""
    return Fraction(system.edge_count(), system.rank - 1)


def ratio_within_bound(a: Fraction) -> bool:
    """Exact test of 1 < a <= (1 + phi)**2 / 3 = (2 + 3*phi)/3.

    Equivalent to 6a - 7 <= 3*sqrt(5): negative left side passes outright,
    otherwise compare squares in integers.
    """
    if a <= 1:
        return False
    lhs = 6 * a - 7
    if lhs <= 0:
        return True
    return lhs * lhs <= 45


GOLDEN_RATIO = (1 + math.sqrt(5)) / 2
RATIO_BOUND_FLOAT = (1 + GOLDEN_RATIO) ** 2 / 3
R_STAR_FLOAT = (3 - math.sqrt(5)) / 2


@dataclass(frozen=True)
class DominanceMarginReport:
    """Float diagnostics of the circle bound underlying the Perron argument."""

    n: int
    k: int
    a: Fraction
    a_within_bound: bool
    alpha_k: float
    beta_k: float
    lambda_kn: float
    lambda_a: float
    alpha_monotone_witness: float
    alpha_limit: float
    lambda_threshold: float
    min_circle_margin: float
    circle_samples: int
    small_n_branch: bool
    hypothesis_verdicts: dict


def dominance_margin_report(
    n: int, k: int, a: Fraction, samples: int = 10_000, precision_bits: int = 128
) -> DominanceMarginReport:
    """Evaluate the dominance-margin quantities on the circle |z| = r*.

    r* = (3 - sqrt(5))/2.  The numerator splits as h_N + R with
    h_N = 1 + (2-N)(z + z**2); the report samples |h_N| - |R| at equally
    spaced angles and records the closed-form bound quantities

        alpha_k  = 1 + 2 r* - (1 - r***k)/(1 - r*) - (a-1) r***k
        beta_k   = -3 - 4 r* + 2 (1 - r***k)/(1 - r*) + (a-1) r***k
        Lambda   = N alpha_k + beta_k
        lambda_a = (3 - a + (a-1) r*) / (2 - a + (a-1) r*)

    together with lim alpha_k = (7 - 3 sqrt(5))/2 and the N-threshold
    (11 + sqrt(45))/2 for positivity of the limiting Lambda.
    """
    from mpmath import mp, mpf, sqrt as mpsqrt, cos as mpcos, sin as mpsin, fabs

    if n < 3 or k < 3 or a <= 1:
        raise BadFamily("need N >= 3, k >= 3 and a > 1")
    with mp.workprec(precision_bits):
        r = (3 - mpsqrt(5)) / 2
        af = mpf(a.numerator) / mpf(a.denominator)
        geo = (1 - r**k) / (1 - r)
        alpha = 1 + 2 * r - geo - (af - 1) * r**k
        beta = -3 - 4 * r + 2 * geo + (af - 1) * r**k
        lam = n * alpha + beta
        lam_a = (3 - af + (af - 1) * r) / (2 - af + (af - 1) * r)
        witness = r**k * (2 - af + (af - 1) * r)
        alpha_next = 1 + 2 * r - (1 - r ** (k + 1)) / (1 - r) - (af - 1) * r ** (k + 1)
        assert fabs((alpha - alpha_next) - witness) < mpf(2) ** (20 - precision_bits)
        alpha_limit = 1 + 2 * r - 1 / (1 - r)
        lam_threshold = (3 + 4 * r - 2 / (1 - r)) / (1 + 2 * r - 1 / (1 - r))

        coeff = af * (n - 1) - (n - 1)  # (a-1)(N-1), an integer for our inputs
        min_margin = mpf("inf")
        two_pi = 2 * mp.pi
        for t in range(samples):
            theta = two_pi * t / samples
            z = r * mpcos(theta) + 1j * r * mpsin(theta)
            h = 1 + (2 - n) * (z + z * z)
            rem = (2 - n) * sum(z**j for j in range(3, k)) + coeff * z**k
            margin = abs(h) - abs(rem)
            if margin < min_margin:
                min_margin = margin

        verdicts = {
            "a_in_range": ratio_within_bound(a),
            "alpha_positive": bool(alpha > 0),
            "lambda_positive": bool(lam > 0),
            "circle_margin_positive": bool(min_margin > 0),
        }
        return DominanceMarginReport(
            n=n,
            k=k,
            a=a,
            a_within_bound=ratio_within_bound(a),
            alpha_k=float(alpha),
            beta_k=float(beta),
            lambda_kn=float(lam),
            lambda_a=float(lam_a),
            alpha_monotone_witness=float(witness),
            alpha_limit=float(alpha_limit),
            lambda_threshold=float(lam_threshold),
            min_circle_margin=float(min_margin),
            circle_samples=samples,
            small_n_branch=n <= 8,
            hypothesis_verdicts=verdicts,
        )


@dataclass(frozen=True)
class UniformFamilyReport:
    system: CoxeterSystem
    label: int
    a: Fraction
    contains_four_cycle: bool
    four_cycle_witness: dict | None
    a_within_bound: bool
    hypotheses_pass: bool
    classification: GrowthClassification


def uniform_system_report(
    system: CoxeterSystem, precision_ladder=None
) -> UniformFamilyReport:
    """Check the two sufficiency hypotheses exactly, then classify anyway.

    Rejects mixed labels.  A failed hypothesis does not stop classification;
    the hypotheses are sufficient, not necessary.
    """
    labels = {k for k in system.label_multiset()}
    if len(labels) != 1:
        raise MixedLabels(f"expected one label on every edge, got {sorted(labels)}")
    (k,) = labels
    if k < 3:
        raise MixedLabels("uniform label must be >= 3")
    a = edge_ratio(system)
    has_cycle, witness = contains_dominating_four_cycle(system)
    within = ratio_within_bound(a)
    kwargs = {} if precision_ladder is None else {"precision_ladder": precision_ladder}
    classification = classify_growth_series(growth_series(system), **kwargs)
    return UniformFamilyReport(
        system=system,
        label=k,
        a=a,
        contains_four_cycle=has_cycle,
        four_cycle_witness=witness,
        a_within_bound=within,
        hypotheses_pass=has_cycle and within,
        classification=classification,
    )


# -- exhaustive small scans -------------------------------------------------------


def _nonisomorphic_graphs(rank: int):
    """All graphs on `rank` vertices up to isomorphism (atlas-backed, rank <= 7)."""
    import networkx as nx

    if rank > 7:
        raise ScanTooLarge("exhaustive enumeration is atlas-backed and capped at rank 7")
    for g in nx.graph_atlas_g():
        if g.number_of_nodes() == rank:
            yield g


def _labelings_up_to_automorphism(graph, max_label: int):
    """Assign labels 2..max_label to the edges, deduplicated by graph symmetry."""
    import networkx as nx
    from itertools import product

    edges = sorted(tuple(sorted(e)) for e in graph.edges())
    if not edges:
        yield ()
        return
    matcher = nx.algorithms.isomorphism.GraphMatcher(graph, graph)
    autos = [
        {int(k): int(v) for k, v in iso.items()}
        for iso in matcher.isomorphisms_iter()
    ]
    edge_index = {e: i for i, e in enumerate(edges)}
    # permutations of the edge list induced by vertex automorphisms
    perms = []
    for phi in autos:
        perm = tuple(
            edge_index[tuple(sorted((phi[a], phi[b])))] for a, b in edges
        )
        perms.append(perm)
    perms = sorted(set(perms))
    seen = set()
    for labels in product(range(2, max_label + 1), repeat=len(edges)):
        canon = min(tuple(labels[i] for i in perm) for perm in perms)
        if canon in seen:
            continue
        seen.add(canon)
        yield tuple(zip(edges, canon))


def scan_systems(
    max_rank: int = 4,
    max_label: int = 4,
    chi_min: int | None = None,
    chi_max: int | None = None,
    rank_min: int = 3,
    require_connected: bool = False,
):
    """Enumerate systems up to isomorphism and classify each one.

    Yields (system, GrowthClassification) for every dimension-<=2,
    non-spherical, non-affine system within the bounds whose Euler
    characteristic lies in [chi_min, chi_max].  Classification is cached on
    the label multiset, which the growth series only depends on.
    """
    if max_rank > 7:
        raise ScanTooLarge("refusing exhaustive scans beyond rank 7")
    if max_label > 9:
        raise ScanTooLarge("refusing label bounds beyond 9")
    cache: dict[tuple, GrowthClassification] = {}
    for rank in range(rank_min, max_rank + 1):
        for graph in _nonisomorphic_graphs(rank):
            chi = rank - graph.number_of_edges()
            if chi_min is not None and chi < chi_min:
                continue
            if chi_max is not None and chi > chi_max:
                continue
            if require_connected and graph.number_of_edges() and not _connected(graph):
                continue
            for labelled in _labelings_up_to_automorphism(graph, max_label):
                edges = [(a + 1, b + 1, k) for (a, b), k in labelled]
                system = build_system(rank, edges)
                ok, _ = dimension_at_most_two(system)
                if not ok:
                    continue
                if classify_sphericity(system, advisory=False).verdict != "other":
                    continue
                key = (rank, tuple(sorted(system.label_multiset().items())))
                if key not in cache:
                    cache[key] = classify_growth_series(growth_series(system))
                yield system, cache[key]


def _connected(graph) -> bool:
    import networkx as nx

    return nx.is_connected(graph)
