"""Coxeter systems as labelled matrices and their presentation diagrams.

A system of rank N is a symmetric N x N matrix of orders: 1 on the diagonal,
integers >= 2 or infinity off it.  Infinity is represented by math.inf, never
by an in-band integer; the ordering treats it as maximal.  Vertex indices are
1-based throughout the public interface, matching generator subscripts.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping

from .errors import BadIndex, BadInjection, DuplicateEdge, InvalidLabel

INF = math.inf

Label = float | int  # an int >= 2, or INF


@dataclass(frozen=True)
class CoxeterSystem:
    """Rank and the upper-triangular labels, stored row-major.

    ``labels[idx]`` holds k(i, j) for 1 <= i < j <= rank in lexicographic
    order.  Immutable and hashable, safe to share.
    """

    rank: int
    labels: tuple[Label, ...]

    def __post_init__(self):
        expected = self.rank * (self.rank - 1) // 2
        if len(self.labels) != expected:
            raise BadIndex(f"expected {expected} labels for rank {self.rank}")
        for k in self.labels:
            if k is not INF and (not isinstance(k, int) or k < 2):
                raise InvalidLabel(f"off-diagonal label must be >= 2 or infinity, got {k!r}")

    def _idx(self, i: int, j: int) -> int:
        if not (1 <= i <= self.rank and 1 <= j <= self.rank) or i == j:
            raise BadIndex(f"bad vertex pair ({i}, {j}) for rank {self.rank}")
        if i > j:
            i, j = j, i
        return (i - 1) * (2 * self.rank - i) // 2 + (j - i - 1)

    def label(self, i: int, j: int) -> Label:
        """Order of s_i s_j; 1 when i == j."""
        if i == j:
            if not 1 <= i <= self.rank:
                raise BadIndex(f"vertex {i} out of range")
            return 1
        return self.labels[self._idx(i, j)]

    def with_label(self, i: int, j: int, k: Label) -> "CoxeterSystem":
        if k is not INF and (not isinstance(k, int) or k < 2):
            raise InvalidLabel(f"label must be >= 2 or infinity, got {k!r}")
        out = list(self.labels)
        out[self._idx(i, j)] = k
        return CoxeterSystem(self.rank, tuple(out))

    # -- presentation diagram --------------------------------------------

    def finite_edges(self) -> list[tuple[int, int, int]]:
        """Edges (i, j, k) of the presentation diagram: exactly finite pairs."""
        out = []
        for i in range(1, self.rank + 1):
            for j in range(i + 1, self.rank + 1):
                k = self.label(i, j)
                if k is not INF:
                    out.append((i, j, int(k)))
        return out

    def edge_count(self) -> int:
        return sum(1 for k in self.labels if k is not INF)

    def label_multiset(self) -> dict[int, int]:
        """Map finite label -> number of presentation-diagram edges carrying it."""
        counts: dict[int, int] = {}
        for k in self.labels:
            if k is not INF:
                counts[int(k)] = counts.get(int(k), 0) + 1
        return dict(sorted(counts.items()))

    def neighbors(self, i: int) -> list[int]:
        return [j for j in range(1, self.rank + 1) if j != i and self.label(i, j) is not INF]

    def cosine_matrix(self) -> list[list[float]]:
        """Float matrix -cos(pi / k); advisory only, never an exact authority."""
        m = [[1.0] * self.rank for _ in range(self.rank)]
        for i in range(1, self.rank + 1):
            for j in range(1, self.rank + 1):
                if i == j:
                    continue
                k = self.label(i, j)
                m[i - 1][j - 1] = -1.0 if k is INF else -math.cos(math.pi / k)
        return m


def build_system(rank: int, edges: Iterable[tuple[int, int, int]]) -> CoxeterSystem:
    """System whose finite labels are exactly the given (i, j, k) triples.

    Unspecified pairs get infinity.  1 <= i < j <= rank, integer k >= 2.
    """
    if rank < 1:
        raise BadIndex(f"rank must be positive, got {rank}")
    store: dict[tuple[int, int], int] = {}
    for i, j, k in edges:
        if not (1 <= i <= rank and 1 <= j <= rank) or i == j:
            raise BadIndex(f"edge ({i}, {j}) out of range for rank {rank}")
        if i > j:
            i, j = j, i
        if (i, j) in store:
            raise DuplicateEdge(f"pair ({i}, {j}) listed twice")
        if not isinstance(k, int) or k < 2:
            raise InvalidLabel(f"edge label must be an integer >= 2, got {k!r}")
        store[(i, j)] = k
    labels: list[Label] = []
    for i in range(1, rank + 1):
        for j in range(i + 1, rank + 1):
            labels.append(store.get((i, j), INF))
    return CoxeterSystem(rank, tuple(labels))


def edgeless_system(rank: int) -> CoxeterSystem:
    return build_system(rank, [])


FOUR_CYCLE_3 = build_system(4, [(1, 2, 3), (2, 3, 3), (3, 4, 3), (1, 4, 3)])
"""The 4-cycle with every edge labelled 3 and both diagonals infinite."""


# -- graph invariants -------------------------------------------------------------


def euler_characteristic(system: CoxeterSystem) -> int:
    """Vertices minus edges of the presentation diagram."""
    return system.rank - system.edge_count()


def _components(system: CoxeterSystem) -> list[list[int]]:
    seen: set[int] = set()
    comps = []
    for start in range(1, system.rank + 1):
        if start in seen:
            continue
        stack = [start]
        comp = []
        seen.add(start)
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in system.neighbors(v):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


@dataclass(frozen=True)
class DiagramInvariants:
    euler_characteristic: int
    connected: bool
    is_tree: bool
    label_multiset: Mapping[int, int]
    components: tuple[tuple[int, ...], ...]


def connectivity_report(system: CoxeterSystem) -> DiagramInvariants:
    comps = _components(system)
    chi = euler_characteristic(system)
    connected = len(comps) == 1
    return DiagramInvariants(
        euler_characteristic=chi,
        connected=connected,
        is_tree=connected and chi == 1,
        label_multiset=system.label_multiset(),
        components=tuple(tuple(c) for c in comps),
    )


def dimension_at_most_two(system: CoxeterSystem) -> tuple[bool, tuple[int, int, int] | None]:
    """No 3-subset may generate a finite rank-3 parabolic subgroup.

    A rank-3 parabolic is finite exactly when all three pairs are finite and
    1/k12 + 1/k13 + 1/k23 > 1, so it suffices to test the triangles of the
    presentation diagram with one exact rational inequality each.  Returns
    (True, None) or (False, offending triple).
    """
    for a, b, c in combinations(range(1, system.rank + 1), 3):
        kab, kac, kbc = system.label(a, b), system.label(a, c), system.label(b, c)
        if kab is INF or kac is INF or kbc is INF:
            continue
        if Fraction(1, int(kab)) + Fraction(1, int(kac)) + Fraction(1, int(kbc)) > 1:
            return False, (a, b, c)
    return True, None


# -- spherical / affine classification ----------------------------------------------
#
# Components of the Coxeter diagram (edge iff k >= 3, including infinity) are
# matched against the full irreducible spherical and affine catalogues by an
# exact structural decision procedure over the labelled shapes.  The float
# cosine-matrix definiteness is only an advisory cross-check.


def _coxeter_components(system: CoxeterSystem) -> list[list[int]]:
    adj: dict[int, list[int]] = {v: [] for v in range(1, system.rank + 1)}
    for i in range(1, system.rank + 1):
        for j in range(i + 1, system.rank + 1):
            k = system.label(i, j)
            if k is INF or k >= 3:
                adj[i].append(j)
                adj[j].append(i)
    seen: set[int] = set()
    comps = []
    for start in adj:
        if start in seen:
            continue
        stack, comp = [start], []
        seen.add(start)
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def _classify_component(system: CoxeterSystem, comp: list[int]) -> str:
    """'spherical' | 'affine' | 'other' for one Coxeter-diagram component."""
    n = len(comp)
    if n == 1:
        return "spherical"  # A1
    if n == 2:
        k = system.label(comp[0], comp[1])
        return "affine" if k is INF else "spherical"  # I2(k) / affine A1

    edges: list[tuple[int, int, Label]] = []
    deg = {v: 0 for v in comp}
    for a, b in combinations(comp, 2):
        k = system.label(a, b)
        if k is INF or k >= 3:
            edges.append((a, b, k))
            deg[a] += 1
            deg[b] += 1
    if any(k is INF for _, _, k in edges):
        return "other"  # no infinite labels occur at rank >= 3
    e = len(edges)
    degs = sorted(deg.values())

    if e == n:  # exactly one cycle
        if degs == [2] * n and all(k == 3 for _, _, k in edges):
            return "affine"  # affine A_{n-1}: an all-3 cycle
        return "other"
    if e != n - 1:
        return "other"  # not a tree and not unicyclic

    # tree shapes
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in comp}
    for a, b, k in edges:
        adj[a].append((b, int(k)))
        adj[b].append((a, int(k)))

    if degs[-1] >= 4:
        # only the rank-5 affine D-type star qualifies
        if n == 5 and degs == [1, 1, 1, 1, 4] and all(k == 3 for _, _, k in edges):
            return "affine"
        return "other"

    branch_nodes = [v for v in comp if deg[v] == 3]

    if not branch_nodes:
        # pure path; canonical label word read end to end
        ends = [v for v in comp if deg[v] == 1]
        seq = _path_labels(adj, ends[0])
        word = min(tuple(seq), tuple(reversed(seq)))
        return _classify_path_word(word)

    if len(branch_nodes) == 1:
        center = branch_nodes[0]
        branches = []
        for start, k in adj[center]:
            labels = [k]
            prev, cur = center, start
            while deg[cur] == 2:
                nxt = [(w, kk) for w, kk in adj[cur] if w != prev][0]
                labels.append(nxt[1])
                prev, cur = cur, nxt[0]
            branches.append(labels)
        branches.sort(key=lambda b: (len(b), b))
        lengths = tuple(len(b) for b in branches)
        all_three = all(k == 3 for b in branches for k in b)
        if all_three:
            if lengths[:2] == (1, 1):
                return "spherical" if n >= 4 else "other"  # D_n
            if lengths == (1, 2, 2):
                return "spherical"  # E6
            if lengths == (1, 2, 3):
                return "spherical"  # E7
            if lengths == (1, 2, 4):
                return "spherical"  # E8
            if lengths == (2, 2, 2):
                return "affine"  # affine E6
            if lengths == (1, 3, 3):
                return "affine"  # affine E7
            if lengths == (1, 2, 5):
                return "affine"  # affine E8
            return "other"
        # affine B_n: two single-edge branches labelled 3, one path whose far
        # end carries the only 4
        if lengths[:2] == (1, 1) and branches[0] == [3] and branches[1] == [3]:
            long = branches[2]
            if long[-1] == 4 and all(k == 3 for k in long[:-1]):
                return "affine"
        return "other"

    if len(branch_nodes) == 2:
        # affine D_n: forks at both ends of an all-3 caterpillar
        if all(k == 3 for _, _, k in edges):
            leaf_branches = 0
            for v in branch_nodes:
                leaves = [w for w, _ in adj[v] if deg[w] == 1]
                if len(leaves) == 2:
                    leaf_branches += 1
            inner_ok = all(deg[v] in (2, 3) for v in comp if deg[v] > 1)
            if leaf_branches == 2 and inner_ok:
                return "affine"
        return "other"

    return "other"


def _path_labels(adj, start) -> list[int]:
    seq = []
    prev, cur = None, start
    while True:
        nxts = [(w, k) for w, k in adj[cur] if w != prev]
        if not nxts:
            return seq
        w, k = nxts[0]
        seq.append(int(k))
        prev, cur = cur, w


def _classify_path_word(word: tuple[int, ...]) -> str:
    n = len(word) + 1
    if all(k == 3 for k in word):
        return "spherical"  # A_n
    if word.count(4) == 1 and word[-1] == 4 and all(k == 3 for k in word[:-1]):
        return "spherical"  # B_n (canonical form puts the 4 last)
    if word == (3, 4, 3):
        return "spherical"  # F4
    if word in ((3, 5), (3, 3, 5)):
        return "spherical"  # H3, H4
    if word == (4, 4):
        return "affine"  # affine C2
    if n >= 4 and word[0] == 4 and word[-1] == 4 and all(k == 3 for k in word[1:-1]):
        return "affine"  # affine C_n
    if word in ((3, 6), (3, 3, 4, 3)):
        return "affine"  # affine G2, affine F4
    return "other"


@dataclass(frozen=True)
class SphericityReport:
    verdict: str  # 'spherical' | 'affine' | 'other'
    components: tuple[tuple[tuple[int, ...], str], ...]
    advisory_warnings: tuple[str, ...] = ()


def classify_sphericity(system: CoxeterSystem, advisory: bool = True) -> SphericityReport:
    """Exact global verdict from the irreducible-component catalogue.

    Spherical iff every component is; affine iff all components are spherical
    or affine with at least one affine; other otherwise.  The float cosine
    eigenvalue check can only append warnings.
    """
    comps = _coxeter_components(system)
    results = tuple((tuple(c), _classify_component(system, c)) for c in comps)
    kinds = [kind for _, kind in results]
    if all(k == "spherical" for k in kinds):
        verdict = "spherical"
    elif all(k in ("spherical", "affine") for k in kinds):
        verdict = "affine"
    else:
        verdict = "other"

    warnings: tuple[str, ...] = ()
    if advisory:
        warnings = _cosine_advisory(system, verdict)
    return SphericityReport(verdict=verdict, components=results, advisory_warnings=warnings)


def _cosine_advisory(system: CoxeterSystem, verdict: str) -> tuple[str, ...]:
    try:
        import numpy as np
    except ImportError:  # advisory only
        return ()
    eigs = np.linalg.eigvalsh(np.array(system.cosine_matrix()))
    tol = 1e-9 * max(1.0, float(abs(eigs).max()))
    if verdict == "spherical":
        float_ok = bool(eigs.min() > tol)
    elif verdict == "affine":
        float_ok = bool(eigs.min() > -tol) and bool(abs(eigs.min()) <= tol)
    else:
        float_ok = bool(eigs.min() < tol)
    if not float_ok:
        return (
            f"float cosine-matrix definiteness disagrees with exact verdict "
            f"{verdict!r} (min eigenvalue {eigs.min():.3e}); exact verdict kept",
        )
    return ()


# -- partial order and the critical four-cycle ---------------------------------------


def partial_order_leq(
    a: CoxeterSystem, b: CoxeterSystem, injection: Mapping[int, int]
) -> bool:
    """Label-wise domination k_a(s, t) <= k_b(inj s, inj t), infinity maximal."""
    image = list(injection.values())
    if len(injection) != a.rank or len(set(image)) != len(image):
        raise BadInjection("injection must map every generator of a injectively")
    for s in range(1, a.rank + 1):
        if s not in injection or not 1 <= injection[s] <= b.rank:
            raise BadInjection(f"generator {s} not mapped into the target system")
    for s in range(1, a.rank + 1):
        for t in range(s + 1, a.rank + 1):
            ka = a.label(s, t)
            kb = b.label(injection[s], injection[t])
            if ka is INF:
                if kb is not INF:
                    return False
            elif kb is not INF and kb < ka:
                return False
    return True


def contains_dominating_four_cycle(
    system: CoxeterSystem,
) -> tuple[bool, dict[int, int] | None]:
    """Search for an embedding of the all-3 four-cycle under the partial order.

    Concretely: four generators arranged in a cycle with all four cycle labels
    >= 3 (infinity allowed) and both diagonals infinite.  Brute force over
    4-subsets and the three cycle pairings; returns the witness injection.
    """
    if system.rank < 4:
        return False, None

    def at_least_3(k: Label) -> bool:
        return k is INF or k >= 3

    for quad in combinations(range(1, system.rank + 1), 4):
        a, b, c, d = quad
        # three ways to split a 4-set into a cycle: diagonals (ab|cd), (ac|bd), (ad|bc)
        for cyc in ((a, b, c, d), (a, b, d, c), (a, c, b, d)):
            p, q, r, s = cyc
            cycle_ok = (
                at_least_3(system.label(p, q))
                and at_least_3(system.label(q, r))
                and at_least_3(system.label(r, s))
                and at_least_3(system.label(s, p))
            )
            if cycle_ok and system.label(p, r) is INF and system.label(q, s) is INF:
                witness = {1: p, 2: q, 3: r, 4: s}
                assert partial_order_leq(FOUR_CYCLE_3, system, witness)
                return True, witness
    return False, None


# -- JSON interchange -----------------------------------------------------------------


def system_to_json_dict(system: CoxeterSystem) -> dict:
    return {
        "rank": system.rank,
        "edges": [[i, j, k] for i, j, k in system.finite_edges()],
    }


def system_to_json(system: CoxeterSystem, indent: int | None = None) -> str:
    return json.dumps(system_to_json_dict(system), indent=indent)


def system_from_json_dict(data: dict) -> CoxeterSystem:
    if not isinstance(data, dict) or "rank" not in data:
        raise InvalidLabel("diagram JSON must be an object with 'rank' and 'edges'")
    rank = data["rank"]
    if not isinstance(rank, int) or rank < 1:
        raise BadIndex(f"rank must be a positive integer, got {rank!r}")
    edges = data.get("edges", [])
    triples = []
    for item in edges:
        if not (isinstance(item, (list, tuple)) and len(item) == 3):
            raise InvalidLabel(f"edge entries must be [i, j, k], got {item!r}")
        i, j, k = item
        if k == 0:
            raise InvalidLabel("label 0 is rejected; omit the pair to mean infinity")
        triples.append((i, j, k))
    return build_system(rank, triples)


def system_from_json(text: str) -> CoxeterSystem:
    return system_from_json_dict(json.loads(text))
