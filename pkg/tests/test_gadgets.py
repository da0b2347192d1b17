from itertools import combinations, permutations

import pytest
from hypothesis import given, settings, strategies as st

from matchdisc import hypergraph as hg
from matchdisc.constructions import balanced_sizes, build_extremal
from matchdisc.errors import (
    InconsistentTypes,
    MissingColor,
    NonConstantVector,
    NotCommonNeighbor,
    NotDivisible,
    NotMultipartite,
    UntypedPair,
)
from matchdisc.gadgets import (
    BUDGET_EXHAUSTED,
    S,
    auto_threshold,
    classify_triple,
    degree_hypothesis,
    find_gadget,
    is_good_subgraph,
    pair_types,
    recover_structure,
)
from matchdisc.hypergraph import ColoredHypergraph

H6 = build_extremal((3, 3), (1, 1))
H12 = build_extremal((6, 6), (1, 1))
H42 = build_extremal((21, 21), (1, 1))


def test_classify_triple():
    assert classify_triple(H6, 0, (1, 3), 2) == S
    assert classify_triple(H6, 0, (1, 4), 3) == (1, 2)
    assert classify_triple(hg.complete(6, 3), 0, (1, 2), 5) == S
    with pytest.raises(NotCommonNeighbor):
        classify_triple(H6, 0, (0, 3), 2)


def test_pair_types_examples():
    assert auto_threshold(H42) == 360
    same = pair_types(H42, 0, 1)
    assert same.types == {S} and same.qualifying[S] == 19 * 21 + 210
    cross = pair_types(H42, 0, 21)
    assert cross.types == {(1, 2)} and cross.qualifying[(1, 2)] == 400
    assert auto_threshold(H12) == 90
    assert all(not pair_types(H12, u, v).types for u, v in combinations(range(12), 2))


@st.composite
def small_graphs(draw, sizes=(6, 9), max_r=3):
    n = draw(st.sampled_from(sizes))
    r = draw(st.integers(1, max_r))
    density = draw(st.floats(0.2, 1.0))
    seed = draw(st.integers(0, 2**32))
    import random

    rng = random.Random(seed)
    edges = [(T, rng.randint(1, r)) for T in combinations(range(n), 3) if rng.random() < density]
    return ColoredHypergraph(n, 3, r, edges)


@given(small_graphs(sizes=(5, 6, 7)), st.data())
def test_pair_type_counts_and_symmetry(H, data):
    u, v = data.draw(st.lists(st.integers(0, H.n - 1), min_size=2, max_size=2, unique=True))
    thr = data.draw(st.integers(1, 4))
    uv, vu = pair_types(H, u, v, thr), pair_types(H, v, u, thr)
    assert sum(uv.qualifying.values()) == len(H.co_neighborhood(u, v))
    flipped = {S if t == S else (t[1], t[0]) for t in uv.types}
    assert flipped == set(vu.types)


# -- definitional oracle for the three gadget shapes (k = 3) --------------------


def _profile(H, edges):
    return H.color_profile([H.edge_index(e) for e in edges])


def _edges_exist(H, edges):
    return all(H.edge_index(e) is not None for e in edges)


def _pairs(pool):
    return list(combinations(sorted(pool), 2))


def brute_kind1(H):
    for u, v in combinations(range(H.n), 2):
        rest = set(range(H.n)) - {u, v}
        for T1 in _pairs(rest):
            for T2 in _pairs(rest - set(T1)):
                m1 = [T1 + (u,), T2 + (v,)]
                m2 = [T1 + (v,), T2 + (u,)]
                if _edges_exist(H, m1 + m2) and _profile(H, m1) != _profile(H, m2):
                    return True
    return False


def brute_kind2(H):
    for us in combinations(range(H.n), 3):
        rest = set(range(H.n)) - set(us)
        for T1 in _pairs(rest):
            for T2 in _pairs(rest - set(T1)):
                for T3 in _pairs(rest - set(T1) - set(T2)):
                    for a, b, c in permutations(us):
                        m1 = [T1 + (a,), T2 + (b,), T3 + (c,)]
                        m2 = [T1 + (b,), T2 + (c,), T3 + (a,)]
                        if _edges_exist(H, m1 + m2) and _profile(H, m1) != _profile(H, m2):
                            return True
    return False


def brute_kind3(H):
    for e, f in permutations(H.edges, 2):
        U = [x for x in e if x not in f]
        W = [x for x in f if x not in e]
        rest = set(range(H.n)) - set(e) - set(f)

        def rec(i, avail, m1, m2, Wp):
            if i == len(U):
                return _profile(H, m1 + [f]) != _profile(H, m2 + [e])
            for T in _pairs(avail):
                a, b = T + (U[i],), T + (Wp[i],)
                if _edges_exist(H, [a, b]) and rec(i + 1, avail - set(T), m1 + [a], m2 + [b], Wp):
                    return True
            return False

        for Wp in permutations(W):
            if rec(0, rest, [], [], Wp):
                return True
    return False


BRUTE = {1: brute_kind1, 2: brute_kind2, 3: brute_kind3}


@settings(max_examples=40)
@given(small_graphs(sizes=(6, 9), max_r=3), st.sampled_from([1, 2, 3]))
def test_gadget_search_complete_and_sound(H, kind):
    if kind == 2 and H.n < 9:
        found = find_gadget(H, (kind,))
        assert found is None  # three disjoint pairs plus three anchors need nine vertices
        return
    found = find_gadget(H, (kind,))
    assert (found is not None) == BRUTE[kind](H)
    if found is not None:
        assert found.kind == kind
        assert len(found.vertices) in {6, 9}
        assert is_good_subgraph(found.induced(H))


def test_gadget_examples():
    assert find_gadget(hg.complete(9, 3)) is None
    assert find_gadget(H6) is None
    e = next(e for e, c in zip(H12.edges, H12.colors) if c == 1)
    g = find_gadget(H12.recolored(e, 2))
    assert g is not None and g.kind == 1
    assert g.profile1 != g.profile2
    assert is_good_subgraph(g.induced(H12.recolored(e, 2)))
    doc = g.to_dict()
    assert set(doc) == {"kind", "vertices", "matchings", "profiles"}


def test_gadget_budget():
    assert find_gadget(H12, budget=5) is BUDGET_EXHAUSTED


def test_gadget_search_is_deterministic():
    e = H12.edges[7]
    H = H12.recolored(e, 3 - H12.colors[7])
    assert find_gadget(H) == find_gadget(H)


def test_is_good_subgraph():
    assert not is_good_subgraph(H6)
    assert not is_good_subgraph(hg.edgeless(6, 3))
    with pytest.raises(NotDivisible):
        is_good_subgraph(hg.edgeless(5, 3))


# -- structure recovery --------------------------------------------------------


def test_recover_h42():
    cert = recover_structure(H42)
    assert sorted(cert.sizes) == [21, 21]
    assert sorted(cert.a_vector) == [1, 1]
    assert all(cert.checks_passed.values())
    assert cert.threshold == 360


def test_recover_h45():
    H = build_extremal(balanced_sizes(45, 3, (0, 0, 2)), (0, 0, 2))
    cert = recover_structure(H, "auto")
    assert cert.sizes == [5, 5, 35]
    assert cert.a_vector == [0, 0, 2]
    assert all(cert.checks_passed.values())


def test_recover_h12_untyped():
    with pytest.raises(UntypedPair):
        recover_structure(H12)


@pytest.mark.parametrize("sizes,a", [
    ((3, 3), (1, 1)), ((2, 4), (0, 2)), ((3, 3, 3), (0, 1, 1)), ((2, 3, 4), (0, 0, 2)), ((4, 5), (1, 2)),
])
def test_recover_small_with_threshold_one(sizes, a):
    H = build_extremal(sizes, a)
    cert = recover_structure(H, 1)
    parts = [list(range(sum(sizes[:i]), sum(sizes[:i + 1]))) for i in range(len(sizes))]
    assert sorted(cert.parts) == sorted(p for p in parts)
    for part, color, ai in zip(cert.parts, cert.color_of_part, cert.a_vector):
        i = parts.index(part)
        assert color == i + 1 and ai == a[i]


@pytest.mark.parametrize("n,r,edges,exc", [
    (4, 3, [([0, 1, 2], 3), ([0, 1, 3], 3), ([0, 2, 3], 1), ([1, 2, 3], 2)], InconsistentTypes),
    (5, 3, [([0, 1, 2], 1), ([0, 1, 4], 3), ([0, 2, 3], 2), ([0, 2, 4], 2), ([1, 2, 4], 2), ([1, 3, 4], 3)],
     NotMultipartite),
    (4, 2, [([0, 1, 2], 2)], UntypedPair),
    (4, 2, [], MissingColor),
    (5, 2, [([0, 1, 2], 2), ([0, 1, 3], 2), ([0, 1, 4], 2), ([0, 2, 3], 2), ([0, 2, 4], 1), ([0, 3, 4], 2),
            ([1, 2, 3], 1), ([1, 3, 4], 1)], NonConstantVector),
])
def test_recovery_errors(n, r, edges, exc):
    with pytest.raises(exc):
        recover_structure(ColoredHypergraph(n, 3, r, edges), 1)


def test_non_constant_vector_has_witness():
    H = ColoredHypergraph(5, 3, 2, [([0, 1, 2], 2), ([0, 1, 3], 2), ([0, 1, 4], 2), ([0, 2, 3], 2),
                                    ([0, 2, 4], 1), ([0, 3, 4], 2), ([1, 2, 3], 1), ([1, 3, 4], 1)])
    with pytest.raises(NonConstantVector) as info:
        recover_structure(H, 1)
    i, j = info.value.witness
    assert 0 <= i < j < len(H)


@given(small_graphs(sizes=(5, 6)))
def test_certificate_invariants(H):
    try:
        cert = recover_structure(H, 1)
    except Exception:
        return
    flat = sorted(v for p in cert.parts for v in p)
    assert flat == list(range(H.n))
    assert sum(cert.a_vector) == H.k - 1 and min(cert.a_vector) >= 0
    part_of = {v: i for i, p in enumerate(cert.parts) for v in p}
    pos = {c: i for i, c in enumerate(cert.color_of_part)}
    for e, c in zip(H.edges, H.colors):
        hits = [0] * len(cert.parts)
        for x in e:
            hits[part_of[x]] += 1
        expected = list(cert.a_vector)
        expected[pos[c]] += 1
        assert hits == expected


def test_degree_hypothesis():
    assert degree_hypothesis(H42)
    assert not degree_hypothesis(H12)
