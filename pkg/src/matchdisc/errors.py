"""Exception hierarchy shared by every matchdisc module."""

from __future__ import annotations


class MatchDiscError(Exception):
    """Base class for all library errors."""


# numerics
class PartsSumMismatch(MatchDiscError, ValueError):
    pass


# threshold math
class InvalidK(MatchDiscError, ValueError):
    pass


class InvalidParams(MatchDiscError, ValueError):
    pass


class InvalidComposition(MatchDiscError, ValueError):
    pass


class IndexOutOfRange(MatchDiscError, IndexError):
    pass


# hypergraph core
class VertexOutOfRange(MatchDiscError, IndexError):
    pass


class SameVertex(MatchDiscError, ValueError):
    pass


class BadIndex(MatchDiscError, IndexError):
    pass


class ParseError(MatchDiscError, ValueError):
    pass


class InvalidHypergraph(MatchDiscError, ValueError):
    """A hypergraph invariant is violated; ``edge_index`` locates the first offender."""

    def __init__(self, message: str, edge_index: int | None = None):
        super().__init__(message)
        self.edge_index = edge_index


class DuplicateEdge(InvalidHypergraph):
    pass


class BadVertex(InvalidHypergraph):
    pass


class BadColor(InvalidHypergraph):
    pass


class WrongEdgeSize(InvalidHypergraph):
    pass


# constructions / matchings
class Divisibility(MatchDiscError, ValueError):
    pass


class DegenerateSizes(MatchDiscError, ValueError):
    pass


class NotDivisible(MatchDiscError, ValueError):
    pass


class NoPerfectMatching(MatchDiscError):
    pass


# gadget analysis
class NotCommonNeighbor(MatchDiscError, ValueError):
    pass


class RecoveryError(MatchDiscError):
    """Structure recovery could not certify the graph."""


class UntypedPair(RecoveryError):
    def __init__(self, u: int, v: int, threshold: int):
        super().__init__(f"pair ({u}, {v}) has no type at threshold {threshold}")
        self.u, self.v, self.threshold = u, v, threshold


class NotMultipartite(RecoveryError):
    pass


class InconsistentTypes(RecoveryError):
    pass


class NonConstantVector(RecoveryError):
    def __init__(self, message: str, witness: tuple[int, int]):
        super().__init__(message)
        self.witness = witness


class MissingColor(RecoveryError):
    pass


# bounds verifier
class ParamOutOfRange(MatchDiscError, ValueError):
    pass
