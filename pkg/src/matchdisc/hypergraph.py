"""Edge-colored k-uniform hypergraphs on the vertex set 0..n-1.

Edges are stored as strictly increasing vertex tuples, sorted
lexicographically; edge indices everywhere refer to that sorted order.
Colors are integers 1..r.  Instances are immutable once constructed.
"""

from __future__ import annotations

import json
from collections import Counter
from itertools import combinations
from typing import Iterable, Sequence

from .errors import (
    BadColor,
    BadIndex,
    BadVertex,
    DuplicateEdge,
    InvalidParams,
    ParseError,
    SameVertex,
    VertexOutOfRange,
    WrongEdgeSize,
)

Edge = tuple[int, ...]


class ColoredHypergraph:
    __slots__ = ("n", "k", "r", "edges", "colors", "_index", "_incident", "_links")

    def __init__(self, n: int, k: int, r: int, edges: Iterable[tuple[Iterable[int], int]]):
        if n < 0 or k < 1 or r < 1:
            raise InvalidParams(f"bad dimensions n={n}, k={k}, r={r}")
        checked: list[tuple[Edge, int]] = []
        seen: dict[Edge, int] = {}
        for idx, (verts, color) in enumerate(edges):
            verts = list(verts)
            e = tuple(sorted(verts))
            if len(e) != k or len(set(e)) != k:
                raise WrongEdgeSize(f"edge {idx} has {len(set(e))} distinct vertices, expected {k}", idx)
            if e[0] < 0 or e[-1] >= n:
                raise BadVertex(f"edge {idx} has a vertex outside 0..{n - 1}", idx)
            if not isinstance(color, int) or not 1 <= color <= r:
                raise BadColor(f"edge {idx} has color {color!r} outside 1..{r}", idx)
            if e in seen:
                raise DuplicateEdge(f"edge {idx} repeats the vertex set of edge {seen[e]}", idx)
            seen[e] = idx
            checked.append((e, color))
        checked.sort()
        self.n, self.k, self.r = n, k, r
        self.edges: tuple[Edge, ...] = tuple(e for e, _ in checked)
        self.colors: tuple[int, ...] = tuple(c for _, c in checked)
        self._index = {e: i for i, e in enumerate(self.edges)}
        incident: list[list[int]] = [[] for _ in range(n)]
        for i, e in enumerate(self.edges):
            for v in e:
                incident[v].append(i)
        self._incident = tuple(tuple(x) for x in incident)
        self._links: dict[int, dict[Edge, int]] = {}

    # -- basic queries ------------------------------------------------------

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def __len__(self) -> int:
        return len(self.edges)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ColoredHypergraph):
            return NotImplemented
        return (self.n, self.k, self.r, self.edges, self.colors) == (
            other.n, other.k, other.r, other.edges, other.colors)

    def __hash__(self):
        return hash((self.n, self.k, self.r, self.edges, self.colors))

    def __repr__(self) -> str:
        return f"ColoredHypergraph(n={self.n}, k={self.k}, r={self.r}, edges={len(self.edges)})"

    def edge_index(self, vertices: Iterable[int]) -> int | None:
        return self._index.get(tuple(sorted(vertices)))

    def color_of(self, vertices: Iterable[int]) -> int | None:
        """Color of the edge on ``vertices``, or None when it is not an edge."""
        i = self._index.get(tuple(sorted(vertices)))
        return None if i is None else self.colors[i]

    def incident(self, v: int) -> tuple[int, ...]:
        self._check_vertex(v)
        return self._incident[v]

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise VertexOutOfRange(f"vertex {v} outside 0..{self.n - 1}")

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return len(self._incident[v])

    def min_degree(self) -> int:
        if self.n == 0:
            return 0
        return min(len(x) for x in self._incident)

    def palette(self) -> list[int]:
        """Colors that actually occur on some edge."""
        return sorted(set(self.colors))

    def link(self, v: int) -> dict[Edge, int]:
        """Map from each (k-1)-set T with Tv an edge to the color of Tv."""
        self._check_vertex(v)
        cached = self._links.get(v)
        if cached is None:
            cached = {}
            for i in self._incident[v]:
                cached[tuple(x for x in self.edges[i] if x != v)] = self.colors[i]
            self._links[v] = cached
        return cached

    def co_neighborhood(self, u: int, v: int) -> list[Edge]:
        """All (k-1)-sets T avoiding u, v with Tu and Tv both edges, lex order."""
        self._check_vertex(u)
        self._check_vertex(v)
        if u == v:
            raise SameVertex(f"u == v == {u}")
        lu, lv = self.link(u), self.link(v)
        if len(lv) < len(lu):
            lu, lv = lv, lu
        return sorted(T for T in lu if T in lv and u not in T and v not in T)

    # -- matchings ----------------------------------------------------------

    def _check_indices(self, matching: Sequence[int]) -> None:
        for i in matching:
            if not isinstance(i, int) or not 0 <= i < len(self.edges):
                raise BadIndex(f"edge index {i!r} out of range")

    def is_perfect_matching(self, matching: Sequence[int]) -> bool:
        self._check_indices(matching)
        covered: set[int] = set()
        for i in matching:
            e = self.edges[i]
            if covered.intersection(e):
                return False
            covered.update(e)
        return len(covered) == self.n

    def color_profile(self, matching: Sequence[int]) -> tuple[int, ...]:
        """Per-color edge counts (colors 1..r) of a set of edges."""
        self._check_indices(matching)
        counts = [0] * self.r
        for i in matching:
            counts[self.colors[i] - 1] += 1
        return tuple(counts)

    def induced(self, vertices: Iterable[int]) -> tuple["ColoredHypergraph", list[int]]:
        """Induced subgraph relabelled to 0..m-1, plus the new-to-old vertex map."""
        keep = sorted(set(vertices))
        for v in keep:
            self._check_vertex(v)
        pos = {v: i for i, v in enumerate(keep)}
        edges = []
        if len(keep) >= self.k:
            if len(keep) ** 2 < len(self.edges):
                for T in combinations(keep, self.k):
                    c = self.color_of(T)
                    if c is not None:
                        edges.append(([pos[x] for x in T], c))
            else:
                kept = set(keep)
                for e, c in zip(self.edges, self.colors):
                    if kept.issuperset(e):
                        edges.append(([pos[x] for x in e], c))
        return ColoredHypergraph(len(keep), self.k, self.r, edges), keep

    def recolored(self, edge: Iterable[int], color: int) -> "ColoredHypergraph":
        target = tuple(sorted(edge))
        if target not in self._index:
            raise BadIndex(f"{target} is not an edge")
        return ColoredHypergraph(
            self.n, self.k, self.r,
            [(e, color if e == target else c) for e, c in zip(self.edges, self.colors)],
        )

    def color_counts(self) -> Counter:
        return Counter(self.colors)

    # -- serialisation ------------------------------------------------------

    def to_document(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "r": self.r,
            "edges": [{"v": list(e), "c": c} for e, c in zip(self.edges, self.colors)],
        }

    @classmethod
    def from_document(cls, doc) -> "ColoredHypergraph":
        if not isinstance(doc, dict):
            raise ParseError("document must be a JSON object")
        for key in ("n", "k", "r"):
            if not isinstance(doc.get(key), int) or isinstance(doc.get(key), bool):
                raise ParseError(f"field {key!r} must be an integer")
        raw = doc.get("edges")
        if not isinstance(raw, list):
            raise ParseError("field 'edges' must be an array")
        edges = []
        for idx, item in enumerate(raw):
            if not isinstance(item, dict) or "v" not in item or "c" not in item:
                raise ParseError(f"edge {idx} must be an object with 'v' and 'c'")
            verts, color = item["v"], item["c"]
            if not isinstance(verts, list) or not all(
                isinstance(x, int) and not isinstance(x, bool) for x in verts
            ):
                raise ParseError(f"edge {idx}: 'v' must be an integer array")
            if not isinstance(color, int) or isinstance(color, bool):
                raise ParseError(f"edge {idx}: 'c' must be an integer")
            if len(verts) == doc["k"] and any(a >= b for a, b in zip(verts, verts[1:])):
                raise ParseError(f"edge {idx}: 'v' must be strictly increasing")
            edges.append((verts, color))
        return cls(doc["n"], doc["k"], doc["r"], edges)


def validate(doc) -> ColoredHypergraph:
    """Parse and check every invariant; raises on the first violation."""
    return ColoredHypergraph.from_document(doc)


def dumps(H: ColoredHypergraph) -> str:
    return json.dumps(H.to_document())


def loads(text: str) -> ColoredHypergraph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    return ColoredHypergraph.from_document(doc)


def read(path) -> ColoredHypergraph:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def write(H: ColoredHypergraph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(H))
        fh.write("\n")


def complete(n: int, k: int, r: int = 1, color: int = 1) -> ColoredHypergraph:
    """Monochromatic complete k-graph on n vertices."""
    return ColoredHypergraph(n, k, r, ((T, color) for T in combinations(range(n), k)))


def edgeless(n: int, k: int, r: int = 1) -> ColoredHypergraph:
    return ColoredHypergraph(n, k, r, [])
