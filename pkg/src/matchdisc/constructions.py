"""Extremal colored hypergraphs H*(V, a) and their closed-form minimum degree.

Part i occupies a contiguous block of vertices, in part order.  An edge of
color i meets part i in a_i + 1 vertices and every other part j in a_j.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product
from typing import Sequence

from .errors import DegenerateSizes, Divisibility, InvalidParams
from .hypergraph import ColoredHypergraph
from .numerics import binomial
from .thresholds import Composition, as_composition

PartSizes = tuple[int, ...]


def _check_sizes(sizes: Sequence[int], a: Composition) -> PartSizes:
    sizes = tuple(int(x) for x in sizes)
    if len(sizes) != a.r:
        raise InvalidParams(f"{len(sizes)} part sizes for a composition with r={a.r}")
    if any(x < 0 for x in sizes):
        raise InvalidParams(f"negative part size in {sizes}")
    return sizes


def balanced_sizes(n: int, r: int, a) -> PartSizes:
    """Part sizes (r a_i + 1) n / (r k) of H(n, a)."""
    a = as_composition(a)
    if a.r != r:
        raise InvalidParams(f"composition {a} does not have r={r} entries")
    rk = r * a.k
    if n % rk:
        raise Divisibility(f"n={n} is not divisible by rk={rk}")
    return tuple((r * ai + 1) * n // rk for ai in a)


def part_ranges(sizes: Sequence[int]) -> list[range]:
    out, start = [], 0
    for s in sizes:
        out.append(range(start, start + s))
        start += s
    return out


def build_extremal(sizes: Sequence[int], a) -> ColoredHypergraph:
    """H*(V, a): every k-set with intersection pattern a + e_i, colored i."""
    a = as_composition(a)
    sizes = _check_sizes(sizes, a)
    parts = part_ranges(sizes)
    edges = []
    for i in range(a.r):
        pattern = [aj + (1 if j == i else 0) for j, aj in enumerate(a)]
        choices = [list(combinations(parts[j], pattern[j])) for j in range(a.r)]
        for pick in product(*choices):
            edges.append(([v for block in pick for v in block], i + 1))
    return ColoredHypergraph(sum(sizes), a.k, a.r, edges)


def extremal_edge_count(sizes: Sequence[int], a) -> list[int]:
    """Size of each color class: C(n_i, a_i + 1) * prod_{j != i} C(n_j, a_j)."""
    a = as_composition(a)
    sizes = _check_sizes(sizes, a)
    out = []
    for i in range(a.r):
        count = binomial(sizes[i], a[i] + 1)
        for j in range(a.r):
            if j != i:
                count *= binomial(sizes[j], a[j])
        out.append(count)
    return out


def vertex_degree_by_part(sizes: Sequence[int], a) -> list[Fraction]:
    """Closed-form degree of a vertex in each part j (requires n_j > a_j)."""
    a = as_composition(a)
    sizes = _check_sizes(sizes, a)
    for j, (nj, aj) in enumerate(zip(sizes, a)):
        if nj <= aj:
            raise DegenerateSizes(f"part {j + 1} has size {nj} <= a_{j + 1} = {aj}")
    out = []
    for j in range(a.r):
        nj, aj = sizes[j], a[j]
        base = Fraction(binomial(nj - 1, aj))
        for i in range(a.r):
            if i != j:
                base *= binomial(sizes[i], a[i])
        spread = sum(
            Fraction(sizes[l] - a[l], a[l] + 1) for l in range(a.r) if l != j
        )
        out.append(base * (1 + Fraction(aj, nj - aj) * spread))
    return out


def closed_form_min_degree(sizes: Sequence[int], a) -> int:
    value = min(vertex_degree_by_part(sizes, a))
    if value.denominator != 1:
        raise ArithmeticError(f"closed-form degree {value} is not an integer")
    return int(value)


def pm_exists_criterion(sizes: Sequence[int], a) -> bool:
    """H(V, a) has a perfect matching iff n_i >= a_i n / k for all i (needs k | n)."""
    a = as_composition(a)
    sizes = _check_sizes(sizes, a)
    n, k = sum(sizes), a.k
    if n % k:
        raise Divisibility(f"n={n} is not divisible by k={k}")
    return all(ni * k >= ai * n for ni, ai in zip(sizes, a))


def forced_profile(sizes: Sequence[int], a) -> tuple[int, ...]:
    """The only possible PM color profile of H*(V, a): n_i - a_i n / k."""
    a = as_composition(a)
    sizes = _check_sizes(sizes, a)
    n, k = sum(sizes), a.k
    if n % k:
        raise Divisibility(f"n={n} is not divisible by k={k}")
    return tuple(ni - ai * (n // k) for ni, ai in zip(sizes, a))
