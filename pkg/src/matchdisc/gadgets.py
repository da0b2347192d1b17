"""Triple and pair typing, good-gadget search and structure recovery.

A common neighbour T of u and v is typed by the colors of Tu and Tv.  The
gadget search assigns every candidate T a difference vector
e_{color in matching 1} - e_{color in matching 2}; a choice of pairwise
disjoint T's is a good gadget exactly when the summed difference (plus any
fixed edges) is nonzero.  The search backtracks in lexicographic order and
prunes branches whose remaining slots can only reproduce a zero total.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Iterable, Sequence, Union

from .errors import (
    InconsistentTypes,
    MissingColor,
    NonConstantVector,
    NotCommonNeighbor,
    NotDivisible,
    NotMultipartite,
    SameVertex,
    UntypedPair,
)
from .hypergraph import ColoredHypergraph, Edge
from .matchings import profile_census
from .numerics import binomial

S = "S"
TripleType = Union[str, tuple[int, int]]


def classify_triple(H: ColoredHypergraph, u: int, T: Iterable[int], v: int) -> TripleType:
    T = tuple(sorted(T))
    if u == v:
        raise SameVertex(f"u == v == {u}")
    if u in T or v in T:
        raise NotCommonNeighbor(f"{T} contains u or v")
    cu = H.color_of(T + (u,))
    cv = H.color_of(T + (v,))
    if cu is None or cv is None:
        raise NotCommonNeighbor(f"{T} is not a common neighbour of {u} and {v}")
    return S if cu == cv else (cu, cv)


def auto_threshold(H: ColoredHypergraph) -> int:
    """k^2 C(n-2, k-2), the witness count required for a pair type."""
    return H.k**2 * binomial(H.n - 2, H.k - 2)


def _resolve_threshold(H: ColoredHypergraph, threshold) -> int:
    if threshold is None or threshold == "auto" or threshold == "AUTO":
        return auto_threshold(H)
    return int(threshold)


def _type_sort_key(t: TripleType):
    return (0, 0, 0) if t == S else (1,) + tuple(t)


@dataclass(frozen=True)
class PairTypeReport:
    u: int
    v: int
    threshold: int
    qualifying: dict
    types: frozenset

    def to_dict(self) -> dict:
        def name(t):
            return "S" if t == S else f"C{t[0]}C{t[1]}"

        return {
            "u": self.u,
            "v": self.v,
            "threshold": self.threshold,
            "counts": {name(t): c for t, c in sorted(self.qualifying.items(), key=lambda x: _type_sort_key(x[0]))},
            "types": sorted(name(t) for t in self.types),
        }


def pair_types(H: ColoredHypergraph, u: int, v: int, threshold=None) -> PairTypeReport:
    """Count co-neighbours of (u, v) by triple type; keep types meeting the threshold."""
    thr = _resolve_threshold(H, threshold)
    counts: dict = {}
    lu, lv = H.link(u), H.link(v)
    for T in H.co_neighborhood(u, v):
        cu, cv = lu[T], lv[T]
        t = S if cu == cv else (cu, cv)
        counts[t] = counts.get(t, 0) + 1
    types = frozenset(t for t, c in counts.items() if c >= thr)
    return PairTypeReport(u, v, thr, counts, types)


def degree_hypothesis(H: ColoredHypergraph) -> bool:
    """delta(H) > C(n-1,k-1)/2 + (k^2+1)/2 C(n-2,k-2), the degree hypothesis of structure recovery."""
    n, k = H.n, H.k
    return 2 * H.min_degree() > binomial(n - 1, k - 1) + (k * k + 1) * binomial(n - 2, k - 2)


# ---------------------------------------------------------------------------
# gadget search


class SearchStatus(enum.Enum):
    BUDGET_EXHAUSTED = "budget_exhausted"


BUDGET_EXHAUSTED = SearchStatus.BUDGET_EXHAUSTED


class _OutOfBudget(Exception):
    pass


@dataclass(frozen=True)
class Gadget:
    kind: int
    vertices: tuple[int, ...]
    matching1: tuple[Edge, ...]
    matching2: tuple[Edge, ...]
    profile1: tuple[int, ...]
    profile2: tuple[int, ...]
    anchors: tuple = ()

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "vertices": list(self.vertices),
            "matchings": [[list(e) for e in self.matching1], [list(e) for e in self.matching2]],
            "profiles": [list(self.profile1), list(self.profile2)],
        }

    def induced(self, H: ColoredHypergraph) -> ColoredHypergraph:
        return H.induced(self.vertices)[0]


def _verify_gadget(H: ColoredHypergraph, g: Gadget) -> None:
    """Check the defining properties directly against H."""
    expected = {1: 2 * H.k, 2: 3 * H.k}.get(g.kind)
    if expected is not None and len(g.vertices) != expected:
        raise AssertionError(f"gadget has {len(g.vertices)} vertices")
    verts = set(g.vertices)
    for m, prof in ((g.matching1, g.profile1), (g.matching2, g.profile2)):
        covered: list[int] = []
        counts = [0] * H.r
        for e in m:
            c = H.color_of(e)
            if c is None:
                raise AssertionError(f"{e} is not an edge")
            counts[c - 1] += 1
            covered.extend(e)
        if sorted(covered) != sorted(verts) or len(covered) != len(verts):
            raise AssertionError("matching is not perfect on the gadget vertices")
        if tuple(counts) != prof:
            raise AssertionError("stored profile is wrong")
    if g.profile1 == g.profile2:
        raise AssertionError("profiles coincide")


class _Searcher:
    def __init__(self, H: ColoredHypergraph, budget: int | None):
        self.H = H
        self.r = H.r
        self.budget = budget
        self.nodes = 0
        self._co: dict[tuple[int, int], list[Edge]] = {}

    def tick(self) -> None:
        self.nodes += 1
        if self.budget is not None and self.nodes > self.budget:
            raise _OutOfBudget

    def co(self, u: int, v: int) -> list[Edge]:
        key = (u, v) if u < v else (v, u)
        hit = self._co.get(key)
        if hit is None:
            hit = self.H.co_neighborhood(*key)
            self._co[key] = hit
        return hit

    def diff(self, c_plus: int, c_minus: int) -> tuple[int, ...]:
        d = [0] * self.r
        d[c_plus - 1] += 1
        d[c_minus - 1] -= 1
        return tuple(d)

    def slot(self, T_list: list[Edge], plus: int, minus: int, forbidden: frozenset) -> list:
        """Candidates T for one slot: matching 1 uses T+plus, matching 2 uses T+minus."""
        lp, lm = self.H.link(plus), self.H.link(minus)
        return [(T, self.diff(lp[T], lm[T])) for T in T_list if forbidden.isdisjoint(T)]

    def disjoint_choice(self, slots: list[list], const: tuple[int, ...]):
        """Lex-first pairwise disjoint choice with nonzero total difference, or None."""
        L = len(slots)
        zero = (0,) * self.r
        if any(not s for s in slots):
            return None
        suffix: list[set] = [set() for _ in range(L + 1)]
        suffix[L] = {zero}
        for i in range(L - 1, -1, -1):
            ds = {d for _, d in slots[i]}
            suffix[i] = {tuple(x + y for x, y in zip(d, s)) for d in ds for s in suffix[i + 1]}
        neg_const = tuple(-x for x in const)
        if suffix[0] == {neg_const}:
            return None
        chosen: list[Edge] = []

        def rec(i: int, used: set, partial: tuple[int, ...]):
            if i == L:
                total = tuple(p + c for p, c in zip(partial, const))
                return list(chosen) if total != zero else None
            for T, d in slots[i]:
                if not used.isdisjoint(T):
                    continue
                self.tick()
                p2 = tuple(x + y for x, y in zip(partial, d))
                need = tuple(-(x + c) for x, c in zip(p2, const))
                if suffix[i + 1] == {need}:
                    continue
                chosen.append(T)
                got = rec(i + 1, used.union(T), p2)
                if got is not None:
                    return got
                chosen.pop()
            return None

        return rec(0, set(), zero)

    # -- the three shapes --

    def kind1(self):
        H = self.H
        for u, v in combinations(range(H.n), 2):
            self.tick()
            co = self.co(u, v)
            if len(co) < 2:
                continue
            fb = frozenset()
            # matching 1 = {T1u, T2v}, matching 2 = {T1v, T2u}
            slots = [self.slot(co, u, v, fb), self.slot(co, v, u, fb)]
            got = self.disjoint_choice(slots, (0,) * self.r)
            if got is not None:
                T1, T2 = got
                return 1, (u, v), [T1 + (u,), T2 + (v,)], [T1 + (v,), T2 + (u,)]
        return None

    def kind2(self):
        H = self.H
        for u1, u2, u3 in combinations(range(H.n), 3):
            self.tick()
            c1, c2, c3 = self.co(u2, u3), self.co(u1, u3), self.co(u1, u2)
            if not (c1 and c2 and c3):
                continue
            # matching 1 = {T1u2, T2u3, T3u1}, matching 2 = {T1u3, T2u1, T3u2}
            slots = [
                self.slot(c1, u2, u3, frozenset((u1,))),
                self.slot(c2, u3, u1, frozenset((u2,))),
                self.slot(c3, u1, u2, frozenset((u3,))),
            ]
            got = self.disjoint_choice(slots, (0,) * self.r)
            if got is not None:
                T1, T2, T3 = got
                return (
                    2,
                    (u1, u2, u3),
                    [T1 + (u2,), T2 + (u3,), T3 + (u1,)],
                    [T1 + (u3,), T2 + (u1,), T3 + (u2,)],
                )
        return None

    def kind3(self):
        H = self.H
        m = len(H.edges)
        for ell in range(1, H.k + 1):
            for a in range(m):
                e = H.edges[a]
                es = set(e)
                for b in range(a + 1, m):
                    f = H.edges[b]
                    self.tick()
                    U = [x for x in e if x not in f]
                    if len(U) != ell:
                        continue
                    W = [x for x in f if x not in es]
                    forbidden = frozenset(e) | frozenset(f)
                    const = self.diff(H.colors[b], H.colors[a])
                    for Wp in permutations(W):
                        # matching 1 = {u_i T_i} + f, matching 2 = {v_i T_i} + e
                        slots = [self.slot(self.co(ui, vi), ui, vi, forbidden) for ui, vi in zip(U, Wp)]
                        got = self.disjoint_choice(slots, const)
                        if got is not None:
                            m1 = [T + (ui,) for T, ui in zip(got, U)] + [f]
                            m2 = [T + (vi,) for T, vi in zip(got, Wp)] + [e]
                            return 3, (e, f), m1, m2
        return None


def _make_gadget(H: ColoredHypergraph, found) -> Gadget:
    kind, anchors, m1, m2 = found
    m1 = tuple(tuple(sorted(x)) for x in m1)
    m2 = tuple(tuple(sorted(x)) for x in m2)
    verts = tuple(sorted(v for e in m1 for v in e))

    def prof(m):
        counts = [0] * H.r
        for e in m:
            counts[H.color_of(e) - 1] += 1
        return tuple(counts)

    g = Gadget(kind, verts, tuple(sorted(m1)), tuple(sorted(m2)), prof(m1), prof(m2), anchors)
    _verify_gadget(H, g)
    return g


def find_gadget(H: ColoredHypergraph, kinds: Sequence[int] = (1, 2, 3), budget: int | None = None):
    """First good gadget of the requested kinds, ``None`` if none exists, or BUDGET_EXHAUSTED.

    Kinds are tried in the given order.  Within a kind the defining tuples are
    scanned lexicographically (pairs/triples of vertices; for the third kind,
    edge pairs by increasing symmetric difference, then edge index).
    """
    searcher = _Searcher(H, budget)
    try:
        for kind in kinds:
            found = {1: searcher.kind1, 2: searcher.kind2, 3: searcher.kind3}[kind]()
            if found is not None:
                return _make_gadget(H, found)
    except _OutOfBudget:
        return BUDGET_EXHAUSTED
    return None


def is_good_subgraph(H: ColoredHypergraph) -> bool:
    """Whether H has two perfect matchings with different color profiles."""
    if H.n % H.k:
        raise NotDivisible(f"k={H.k} does not divide n={H.n}")
    return len(profile_census(H).counts) >= 2


# ---------------------------------------------------------------------------
# structure recovery


@dataclass
class PartitionCertificate:
    parts: list[list[int]]
    color_of_part: list[int]
    a_vector: list[int]
    threshold: int
    checks_passed: dict[str, bool] = field(default_factory=dict)

    @property
    def sizes(self) -> list[int]:
        return [len(p) for p in self.parts]

    def a_by_color(self) -> dict[int, int]:
        return {c: a for c, a in zip(self.color_of_part, self.a_vector)}

    def to_dict(self) -> dict:
        return {
            "parts": self.parts,
            "sizes": self.sizes,
            "colors": self.color_of_part,
            "a_vector": self.a_vector,
            "threshold": self.threshold,
            "checks": self.checks_passed,
        }


def all_pair_types(H: ColoredHypergraph, threshold=None) -> dict[tuple[int, int], frozenset]:
    """Types of every ordered pair, derived from one count per unordered pair."""
    thr = _resolve_threshold(H, threshold)
    out = {}
    for u, v in combinations(range(H.n), 2):
        rep = pair_types(H, u, v, thr)
        out[(u, v)] = rep.types
        out[(v, u)] = frozenset(S if t == S else (t[1], t[0]) for t in rep.types)
    return out


def recover_structure(H: ColoredHypergraph, threshold=None) -> PartitionCertificate:
    """Rebuild (V_1..V_s, colors, a) certifying H is a colored subgraph of H*(V, a)."""
    thr = _resolve_threshold(H, threshold)
    palette = H.palette()
    if not palette:
        raise MissingColor("the hypergraph has no edges")
    types = all_pair_types(H, thr)
    for u, v in combinations(range(H.n), 2):
        if not types[(u, v)]:
            raise UntypedPair(u, v, thr)

    # classes of the S-relation; its complement graph G_H must be complete multipartite
    part_of = [-1] * H.n
    parts: list[list[int]] = []
    for v in range(H.n):
        if part_of[v] >= 0:
            continue
        cls = [v] + [w for w in range(v + 1, H.n) if part_of[w] < 0 and S in types[(v, w)]]
        for w in cls:
            part_of[w] = len(parts)
        parts.append(cls)
    for u, v in combinations(range(H.n), 2):
        same = part_of[u] == part_of[v]
        if same != (S in types[(u, v)]):
            raise NotMultipartite(f"S-relation is not transitive at ({u}, {v})")

    s = len(parts)
    if s > len(palette):
        raise InconsistentTypes(f"{s} parts but only {len(palette)} colors present")
    colors: list[int | None] = [None] * s
    if s == 1:
        if len(palette) != 1:
            raise InconsistentTypes("single part but several colors present")
        colors[0] = palette[0]
    else:
        reps = [p[0] for p in parts]
        for i, j in combinations(range(s), 2):
            tij = types[(reps[i], reps[j])] - {S}
            if len(tij) != 1:
                raise InconsistentTypes(f"parts {i + 1}, {j + 1} have cross types {sorted(tij)}")
            ci, cj = next(iter(tij))
            for idx, c in ((i, ci), (j, cj)):
                if colors[idx] is None:
                    colors[idx] = c
                elif colors[idx] != c:
                    raise InconsistentTypes(f"part {idx + 1} gets colors {colors[idx]} and {c}")
        if len(set(colors)) != s:
            raise InconsistentTypes(f"part colors {colors} are not distinct")
    part_colors = [int(c) for c in colors]
    if set(part_colors) != set(palette):
        raise MissingColor(f"part colors {sorted(part_colors)} differ from palette {palette}")

    checks: dict[str, bool] = {}
    checks["A_same_part_type_S"] = all(
        types[(u, v)] == frozenset({S}) for p in parts for u, v in combinations(p, 2)
    )
    cross_ok = True
    for u, v in combinations(range(H.n), 2):
        pu, pv = part_of[u], part_of[v]
        if pu != pv and types[(u, v)] != frozenset({(part_colors[pu], part_colors[pv])}):
            cross_ok = False
            break
    if not cross_ok:
        raise InconsistentTypes(f"pair ({u}, {v}) does not carry its parts' cross type")
    checks["B_cross_part_types"] = cross_ok

    # a = #(e) - 1(e) must not depend on the edge
    col_pos = {c: i for i, c in enumerate(part_colors)}
    a_vec: list[int] | None = None
    first = -1
    for idx, (e, c) in enumerate(zip(H.edges, H.colors)):
        vec = [0] * s
        for x in e:
            vec[part_of[x]] += 1
        vec[col_pos[c]] -= 1
        if a_vec is None:
            a_vec, first = vec, idx
        elif vec != a_vec:
            raise NonConstantVector(f"edges {first} and {idx} give different vectors", (first, idx))
    assert a_vec is not None
    if any(x < 0 for x in a_vec) or sum(a_vec) != H.k - 1:
        raise NonConstantVector(f"invariant vector {a_vec} is not a composition of k-1", (first, first))
    checks["C_edge_patterns"] = True
    checks["no_S_across_parts"] = all(
        S not in types[(u, v)]
        for u, v in combinations(range(H.n), 2)
        if part_of[u] != part_of[v]
    )
    return PartitionCertificate(parts, part_colors, a_vec, thr, checks)
