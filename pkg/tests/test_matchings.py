import pytest
from hypothesis import given, settings, strategies as st

from matchdisc import hypergraph as hg
from matchdisc.constructions import build_extremal
from matchdisc.errors import NoPerfectMatching, NotDivisible
from matchdisc.hypergraph import ColoredHypergraph
from matchdisc.matchings import (
    default_threads,
    enumerate_pm,
    max_same_color,
    profile_census,
    verify_profile_identity,
)

from oracles import all_perfect_matchings, profile_counts
from test_hypergraph import hypergraphs

H6 = build_extremal((3, 3), (1, 1))


def test_enumerate_examples():
    assert len(list(enumerate_pm(H6))) == 9
    # 6!/(3!^2 2!) = 10 splits of six vertices into two triples
    assert len(list(enumerate_pm(hg.complete(6, 3)))) == 10
    assert list(enumerate_pm(hg.edgeless(3, 3))) == []
    with pytest.raises(NotDivisible):
        list(enumerate_pm(hg.complete(5, 3)))


def test_enumerate_limit_and_order():
    K9 = hg.complete(9, 3)
    full = list(enumerate_pm(K9))
    assert len(full) == 280
    assert full == sorted(full)
    assert list(enumerate_pm(K9, limit=5)) == full[:5]
    assert list(enumerate_pm(K9, limit=0)) == []


@given(hypergraphs(max_n=9))
def test_enumerate_matches_oracle(H):
    if H.n % H.k:
        return
    assert sorted(enumerate_pm(H)) == sorted(all_perfect_matchings(H))


@given(hypergraphs(max_n=9))
def test_census_matches_oracle(H):
    if H.n % H.k:
        return
    census = profile_census(H)
    assert census.counts == dict(profile_counts(H))
    assert census.total_pm == sum(census.counts.values())


def test_census_examples():
    assert profile_census(H6).counts == {(1, 1): 9}
    c12 = profile_census(build_extremal((6, 6), (1, 1)))
    assert list(c12.counts) == [(2, 2)] and c12.total_pm > 0
    mono = profile_census(hg.complete(6, 3))
    assert mono.counts == {(2,): 10}
    assert profile_census(hg.edgeless(0, 3)).counts == {(0,): 1}


@settings(max_examples=10)
@given(st.integers(0, 2**32))
def test_census_independent_of_threads(seed):
    import random

    rng = random.Random(seed)
    from itertools import combinations

    edges = [(T, rng.randint(1, 2)) for T in combinations(range(9), 3) if rng.random() < 0.6]
    H = ColoredHypergraph(9, 3, 2, edges)
    assert profile_census(H, threads=1) == profile_census(H, threads=3)


def test_census_to_dict():
    doc = profile_census(H6).to_dict()
    assert doc == {"profiles": [{"counts": [1, 1], "pm_count": 9}], "total": 9}


def test_max_same_color():
    best = max_same_color(H6)
    assert best.value == 1
    H = hg.complete(6, 3, r=2).recolored((0, 1, 2), 2)
    best = max_same_color(H)
    assert best.value == 2 and best.color == 1
    assert H.is_perfect_matching(best.witness)
    with pytest.raises(NoPerfectMatching):
        max_same_color(hg.edgeless(6, 3))


def test_max_same_color_witness_is_lex_least():
    H = build_extremal((2, 4), (1, 1))
    best = max_same_color(H)
    firsts = [m for m in enumerate_pm(H) if max(H.color_profile(m)) == best.value]
    assert best.witness == firsts[0]
    assert "profile" in best.to_dict(H)


@pytest.mark.parametrize("sizes,a", [((3, 3), (1, 1)), ((2, 4), (1, 1)), ((4, 4, 4), (0, 1, 1))])
def test_profile_identity(sizes, a):
    assert verify_profile_identity(sizes, a)


def test_profile_identity_without_pm():
    with pytest.raises(NoPerfectMatching):
        verify_profile_identity((1, 5), (1, 1))


def test_default_threads(monkeypatch):
    monkeypatch.setenv("MATCHDISC_THREADS", "3")
    assert default_threads() == 3
    monkeypatch.delenv("MATCHDISC_THREADS")
    assert default_threads() >= 1
