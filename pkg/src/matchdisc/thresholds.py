"""Threshold functions f0(k), g_r(a), g_r(k) and the h_r(k) comparison.

All values are exact :class:`~fractions.Fraction` objects.  Compositions are
nondecreasing nonnegative integer vectors summing to k - 1; unsorted input is
rejected so that caller bugs surface instead of being silently normalised.
"""

from __future__ import annotations

import csv
import enum
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Iterable, Sequence

from .errors import IndexOutOfRange, InvalidComposition, InvalidK, InvalidParams
from .numerics import multinomial, round_half_up

# k for which f(k) = f0(k) is established in the literature
KNOWN_F_EXACT = frozenset({2, 3, 4, 5})


@dataclass(frozen=True, order=True)
class Composition:
    entries: tuple[int, ...]

    def __post_init__(self):
        entries = tuple(int(x) for x in self.entries)
        object.__setattr__(self, "entries", entries)
        if not entries:
            raise InvalidComposition("empty composition")
        if any(x < 0 for x in entries):
            raise InvalidComposition(f"negative entry in {entries}")
        if any(a > b for a, b in zip(entries, entries[1:])):
            raise InvalidComposition(f"entries not nondecreasing: {entries}")

    @property
    def r(self) -> int:
        return len(self.entries)

    @property
    def k(self) -> int:
        return sum(self.entries) + 1

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.entries)) + ")"


def as_composition(a) -> Composition:
    return a if isinstance(a, Composition) else Composition(tuple(a))


def f0(k: int) -> Fraction:
    """1 - (1 - 1/k)^(k-1), the known lower bound on f(k)."""
    if k < 2:
        raise InvalidK(f"k must be >= 2, got {k}")
    return 1 - Fraction(k - 1, k) ** (k - 1)


def enumerate_compositions(r: int, k: int) -> list[Composition]:
    """All nondecreasing r-vectors of nonnegative integers summing to k-1, lex order."""
    if r < 2 or k < 2:
        raise InvalidParams(f"need r >= 2 and k >= 2, got r={r}, k={k}")
    return [Composition(t) for t in _compositions(k - 1, r, 0)]


def _compositions(total: int, slots: int, lo: int):
    if slots == 1:
        if total >= lo:
            yield (total,)
        return
    for x in range(lo, total // slots + 1):
        for rest in _compositions(total - x, slots - 1, x):
            yield (x,) + rest


def _check_r(r: int, a: Composition) -> None:
    if r != a.r:
        raise InvalidParams(f"composition {a} has {a.r} entries, expected r={r}")


def g_of(r: int, a) -> Fraction:
    """The limiting normalised minimum degree of H(n, a)."""
    a = as_composition(a)
    _check_r(r, a)
    k = a.k
    value = Fraction(multinomial(k - 1, a.entries))
    for ai in a:
        value *= Fraction(r * ai + 1, r * k) ** ai
    a1 = a[0]
    tail = sum(Fraction(r * ai + 1, ai + 1) for ai in a.entries[1:])
    return value * (1 + Fraction(a1, r * a1 + 1) * tail)


@lru_cache(maxsize=None)
def g_r_k(r: int, k: int) -> tuple[Fraction, tuple[Composition, ...]]:
    """max of g_of over all compositions, with every maximiser (lex order)."""
    if r < 2 or k < 3:
        raise InvalidParams(f"need r >= 2 and k >= 3, got r={r}, k={k}")
    best: Fraction | None = None
    argmax: list[Composition] = []
    for a in enumerate_compositions(r, k):
        v = g_of(r, a)
        if best is None or v > best:
            best, argmax = v, [a]
        elif v == best:
            argmax.append(a)
    return best, tuple(argmax)


def _degree_term(r: int, entries: Sequence[int], j: int) -> Fraction:
    aj = entries[j]
    rest = sum(Fraction(r * ai + 1, ai + 1) for i, ai in enumerate(entries) if i != j)
    return Fraction(aj, r * aj + 1) * rest


def verify_min_index_inequality(r: int, a, j: int) -> bool:
    """Whether the j = 1 degree term is at most the j-th one (1-based j in [2, r])."""
    a = as_composition(a)
    _check_r(r, a)
    if not 2 <= j <= r:
        raise IndexOutOfRange(f"j={j} outside [2, {r}]")
    return _degree_term(r, a.entries, 0) <= _degree_term(r, a.entries, j - 1)


class Comparison(str, enum.Enum):
    F_GT_G = "F_GT_G"
    G_GT_F = "G_GT_F"
    INCONCLUSIVE_F_UNKNOWN = "INCONCLUSIVE_F_UNKNOWN"


def compare(g_value: Fraction, k: int) -> Comparison:
    f0_value = f0(k)
    if g_value < f0_value:
        return Comparison.F_GT_G
    if g_value > f0_value and k in KNOWN_F_EXACT:
        return Comparison.G_GT_F
    return Comparison.INCONCLUSIVE_F_UNKNOWN


@dataclass(frozen=True)
class ThresholdReport:
    r: int
    k: int
    g_value: Fraction
    maximizers: tuple[Composition, ...]
    f0_value: Fraction
    comparison: Comparison

    @property
    def h_lower_bound(self) -> Fraction:
        """max(f0(k), g_r(k)); equals h_r(k) whenever f(k) = f0(k)."""
        return max(self.g_value, self.f0_value)

    def to_dict(self, decimals: int = 4) -> dict:
        return {
            "r": self.r,
            "k": self.k,
            "g": str(self.g_value),
            "g_decimal": round_half_up(self.g_value, decimals),
            "maximizers": [list(a.entries) for a in self.maximizers],
            "f0": str(self.f0_value),
            "f0_decimal": round_half_up(self.f0_value, decimals),
            "f_known": self.k in KNOWN_F_EXACT,
            "comparison": self.comparison.value,
        }


def threshold_report(r: int, k: int) -> ThresholdReport:
    g_value, maximizers = g_r_k(r, k)
    return ThresholdReport(r, k, g_value, maximizers, f0(k), compare(g_value, k))


# ---------------------------------------------------------------------------
# tables


@dataclass
class Table:
    """Rows are functions, columns are k."""

    k_values: list[int]
    rows: list[tuple[str, list[str]]] = field(default_factory=list)
    exact: dict[str, list[Fraction]] = field(default_factory=dict)

    def to_markdown(self) -> str:
        header = ["k"] + [str(k) for k in self.k_values]
        body = [[label] + cells for label, cells in self.rows]
        widths = [max(len(row[i]) for row in [header] + body) for i in range(len(header))]

        def line(cells):
            return "| " + " | ".join(c.rjust(w) for c, w in zip(cells, widths)) + " |"

        sep = "|" + "|".join("-" * (w + 2) for w in widths) + "|"
        return "\n".join([line(header), sep] + [line(r) for r in body])

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["function"] + self.k_values)
        for label, cells in self.rows:
            writer.writerow([label] + cells)
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps(
            {
                "k": self.k_values,
                "rows": [
                    {"function": label, "values": cells, "exact": [str(q) for q in self.exact[label]]}
                    for label, cells in self.rows
                ],
            },
            indent=2,
        )

    def render(self, fmt: str) -> str:
        if fmt == "md":
            return self.to_markdown()
        if fmt == "csv":
            return self.to_csv()
        if fmt == "json":
            return self.to_json()
        raise ValueError(f"unknown format {fmt!r}")


def _trim(cell: str) -> str:
    if "." in cell:
        cell = cell.rstrip("0")
        if cell.endswith("."):
            cell += "0"
    return cell


def render_table(
    r_values: Iterable[int], k_values: Iterable[int], decimals: int = 4, trim_zeros: bool = False
) -> Table:
    """One row per g_r plus a final f0 row, cells rounded half-up."""
    if decimals < 1:
        raise InvalidParams("decimals must be >= 1")
    k_values = list(k_values)
    table = Table(k_values)

    def add(label: str, values: list[Fraction]):
        cells = [round_half_up(v, decimals) for v in values]
        if trim_zeros:
            cells = [_trim(c) for c in cells]
        table.rows.append((label, cells))
        table.exact[label] = values

    for r in r_values:
        add(f"g_{r}(k)", [g_r_k(r, k)[0] for k in k_values])
    add("f0(k)", [f0(k) for k in k_values])
    return table


# ---------------------------------------------------------------------------
# golden reference tables


def load_golden(name: str) -> dict:
    """Published table values shipped as package data (``table1`` or ``table2``)."""
    text = resources.files("matchdisc.data").joinpath(f"{name}.json").read_text()
    return json.loads(text)


@dataclass(frozen=True)
class CellDiff:
    function: str
    k: int
    published: str
    computed: str
    exact: Fraction

    @property
    def matches(self) -> bool:
        from decimal import Decimal

        return Decimal(self.published) == Decimal(self.computed)


def diff_golden(name: str) -> list[CellDiff]:
    """Every published cell next to its recomputed 4-decimal value."""
    gold = load_golden(name)
    decimals = gold["decimals"]
    out = []
    for row in gold["rows"]:
        label = row["function"]
        for k, published in zip(gold["k"], row["values"]):
            if label == "f0(k)":
                exact = f0(k)
            else:
                exact = g_r_k(row["r"], k)[0]
            out.append(CellDiff(label, k, published, round_half_up(exact, decimals), exact))
    return out


def diff_maximizers(name: str) -> list[tuple[int, int, list[int], list[list[int]]]]:
    """(r, k, published maximiser, computed maximisers) for every footnoted cell."""
    gold = load_golden(name)
    out = []
    for item in gold.get("maximizers", []):
        _, argmax = g_r_k(item["r"], item["k"])
        out.append((item["r"], item["k"], item["a"], [list(a.entries) for a in argmax]))
    return out
