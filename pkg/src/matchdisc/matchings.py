"""Exhaustive perfect-matching search and color-profile censuses.

The search always branches on the lowest uncovered vertex, trying only edges
whose smallest vertex is that vertex, so each perfect matching is produced
exactly once and in lexicographic order of its sorted edge-index list.
"""

from __future__ import annotations

import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Sequence

from .constructions import build_extremal, forced_profile
from .errors import NoPerfectMatching, NotDivisible
from .hypergraph import ColoredHypergraph

Profile = tuple[int, ...]


def _require_divisible(H: ColoredHypergraph) -> None:
    if H.n % H.k:
        raise NotDivisible(f"k={H.k} does not divide n={H.n}")


def _starts(H: ColoredHypergraph) -> list[list[tuple[int, int]]]:
    """For each vertex v, (edge index, vertex mask) of edges whose minimum is v."""
    starts: list[list[tuple[int, int]]] = [[] for _ in range(H.n)]
    for i, e in enumerate(H.edges):
        mask = 0
        for x in e:
            mask |= 1 << x
        starts[e[0]].append((i, mask))
    return starts


def _lowest_free(mask: int) -> int:
    return (~mask & (mask + 1)).bit_length() - 1


def enumerate_pm(H: ColoredHypergraph, limit: int | None = None) -> Iterator[list[int]]:
    """Yield every perfect matching as a sorted edge-index list, lexicographically."""
    _require_divisible(H)
    if limit is not None and limit <= 0:
        return
    full = (1 << H.n) - 1
    starts = _starts(H)
    stack: list[int] = []
    produced = 0

    def rec(mask: int):
        nonlocal produced
        if mask == full:
            produced += 1
            yield list(stack)
            return
        for idx, emask in starts[_lowest_free(mask)]:
            if emask & mask:
                continue
            stack.append(idx)
            yield from rec(mask | emask)
            stack.pop()
            if limit is not None and produced >= limit:
                return

    yield from rec(0)


@dataclass(frozen=True)
class ProfileCensus:
    counts: dict[Profile, int]
    total_pm: int

    @property
    def profiles(self) -> list[Profile]:
        return sorted(self.counts)

    def to_dict(self) -> dict:
        return {
            "profiles": [{"counts": list(p), "pm_count": self.counts[p]} for p in self.profiles],
            "total": self.total_pm,
        }


class _CensusDP:
    """Profile counts of perfect matchings of the uncovered part, memoised by mask."""

    def __init__(self, H: ColoredHypergraph):
        self.r = H.r
        self.colors = H.colors
        self.full = (1 << H.n) - 1
        self.starts = _starts(H)
        self.memo: dict[int, dict[Profile, int]] = {}

    def run(self, mask: int) -> dict[Profile, int]:
        if mask == self.full:
            return {(0,) * self.r: 1}
        hit = self.memo.get(mask)
        if hit is not None:
            return hit
        out: dict[Profile, int] = {}
        for idx, emask in self.starts[_lowest_free(mask)]:
            if emask & mask:
                continue
            sub = self.run(mask | emask)
            if not sub:
                continue
            c = self.colors[idx] - 1
            for prof, cnt in sub.items():
                p = prof[:c] + (prof[c] + 1,) + prof[c + 1:]
                out[p] = out.get(p, 0) + cnt
        self.memo[mask] = out
        return out


def _branch_census(args) -> dict[Profile, int]:
    H, idx, emask = args
    sub = _CensusDP(H).run(emask)
    c = H.colors[idx] - 1
    return {p[:c] + (p[c] + 1,) + p[c + 1:]: cnt for p, cnt in sub.items()}


def default_threads() -> int:
    env = os.environ.get("MATCHDISC_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def profile_census(H: ColoredHypergraph, threads: int = 1) -> ProfileCensus:
    """Count perfect matchings by color profile.

    With ``threads > 1`` the branches at vertex 0 are explored in separate
    processes; the merged result does not depend on the thread count.
    """
    _require_divisible(H)
    if H.n == 0:
        return ProfileCensus({(0,) * H.r: 1}, 1)
    if threads <= 1:
        counts = _CensusDP(H).run(0)
    else:
        branches = [(H, idx, emask) for idx, emask in _starts(H)[0]]
        counts = Counter()
        with ProcessPoolExecutor(max_workers=threads) as pool:
            for part in pool.map(_branch_census, branches):
                counts.update(part)
        counts = {p: c for p, c in counts.items() if c}
    counts = dict(sorted(counts.items()))
    return ProfileCensus(counts, sum(counts.values()))


@dataclass(frozen=True)
class BestMatching:
    color: int
    value: int
    witness: list[int]

    def to_dict(self, H: ColoredHypergraph) -> dict:
        return {
            "color": self.color,
            "value": self.value,
            "witness": [{"v": list(H.edges[i]), "c": H.colors[i]} for i in self.witness],
            "profile": list(H.color_profile(self.witness)),
        }


def max_same_color(H: ColoredHypergraph) -> BestMatching:
    """Largest single-color count over all perfect matchings, with the lex-least witness."""
    census = profile_census(H)
    if census.total_pm == 0:
        raise NoPerfectMatching("the hypergraph has no perfect matching")
    best = max(max(p) for p in census.counts)
    for m in enumerate_pm(H):
        prof = H.color_profile(m)
        if max(prof) == best:
            return BestMatching(prof.index(best) + 1, best, m)
    raise AssertionError("census and enumeration disagree")  # pragma: no cover


def verify_profile_identity(sizes: Sequence[int], a) -> bool:
    """Every PM of H*(V, a) has C_i(M) = n_i - a_i n / k for all i."""
    H = build_extremal(sizes, a)
    expected = forced_profile(sizes, a)
    census = profile_census(H)
    if census.total_pm == 0:
        raise NoPerfectMatching(f"H*({tuple(sizes)}, {a}) has no perfect matching")
    return set(census.counts) == {expected}
