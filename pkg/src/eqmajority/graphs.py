"""Inequality-graph analysis: covers, matchings, cliques, ambiguity certificates.

The inequality graph has one vertex per array position and an edge per
answered-"not equal" pair. Its complement (the potential-equality graph)
is never materialized: every complement query is a non-edge query here.

Exact searches are brute force with explicit size limits; they exist to
validate the combinatorial lemmas and the adversary at test scale, not
for large inputs. Tie-breaking is lexicographic everywhere so results
are reproducible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional

EXACT_SEARCH_VERTEX_LIMIT = 24
CERTIFICATE_VERTEX_LIMIT = 16


class GraphError(ValueError):
    pass


class SizeLimitError(GraphError):
    pass


@dataclass(frozen=True)
class InequalityGraph:
    vertex_count: int
    edges: frozenset[tuple[int, int]] = frozenset()

    def __post_init__(self):
        for i, j in self.edges:
            if i == j:
                raise GraphError(f"self-loop at {i}")
            if i > j:
                raise GraphError(f"edge ({i}, {j}) not normalized")
            if not (0 <= i < self.vertex_count and 0 <= j < self.vertex_count):
                raise GraphError(f"edge ({i}, {j}) out of range")

    def has_edge(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.edges

    def add_edge(self, i: int, j: int) -> "InequalityGraph":
        e = (min(i, j), max(i, j))
        if e in self.edges:
            return self
        return InequalityGraph(self.vertex_count, self.edges | {e})

    def neighbors(self, v: int) -> frozenset[int]:
        out = set()
        for i, j in self.edges:
            if i == v:
                out.add(j)
            elif j == v:
                out.add(i)
        return frozenset(out)

    def degree(self, v: int) -> int:
        return sum(1 for i, j in self.edges if v in (i, j))

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def to_doc(self) -> dict:
        return {
            "vertex_count": self.vertex_count,
            "edges": [[i, j] for i, j in self.sorted_edges()],
        }

    @staticmethod
    def from_doc(doc: dict) -> "InequalityGraph":
        return make_graph(doc["vertex_count"], (tuple(e) for e in doc["edges"]))


def make_graph(vertex_count: int, pairs: Iterable[tuple[int, int]]) -> InequalityGraph:
    edges = frozenset((min(i, j), max(i, j)) for i, j in pairs)
    return InequalityGraph(vertex_count, edges)


@dataclass(frozen=True)
class CoverResult:
    cover: frozenset[int]
    exact: bool


@dataclass(frozen=True)
class LayerAssignment:
    """A balanced split of the 2n positions into a bottom and a top row."""

    bottom: frozenset[int]
    top: frozenset[int]

    def __post_init__(self):
        if self.bottom & self.top:
            raise GraphError("layers overlap")
        if len(self.bottom) != len(self.top):
            raise GraphError("layers are unbalanced")

    def crosses(self, edge: tuple[int, int]) -> bool:
        return (edge[0] in self.bottom) != (edge[1] in self.bottom)

    def all_edges_cross(self, g: InequalityGraph) -> bool:
        return all(self.crosses(e) for e in g.edges)

    def layer_of(self, v: int) -> frozenset[int]:
        return self.bottom if v in self.bottom else self.top


CERT_TWO_DISJOINT = "two_disjoint_n_cliques"
CERT_ONE_LARGER = "one_n_plus_1_clique"
CERT_NONE = "none"


@dataclass(frozen=True)
class AmbiguityCertificate:
    kind: str
    witness_a: Optional[frozenset[int]] = None
    witness_b: Optional[frozenset[int]] = None


def is_complement_clique(g: InequalityGraph, subset: Iterable[int]) -> bool:
    """True iff no edge of g joins two members of `subset`."""
    sub = set(subset)
    for v in sub:
        if not (0 <= v < g.vertex_count):
            raise GraphError(f"vertex {v} out of range")
    return not any(i in sub and j in sub for i, j in g.edges)


def cover_bound(g: InequalityGraph) -> CoverResult:
    """One endpoint per edge: a cover of size <= |edges|, not necessarily minimum.

    Deterministic: the lower endpoint of each edge, scanned in sorted order.
    """
    cover = {i for i, _ in g.sorted_edges()}
    return CoverResult(cover=frozenset(cover), exact=False)


def minimum_vertex_cover(g: InequalityGraph) -> CoverResult:
    """Exact minimum vertex cover by subset enumeration in size order.

    Among minimum covers, returns the lexicographically least vertex set.
    Intended for test-scale graphs only.
    """
    if g.vertex_count > EXACT_SEARCH_VERTEX_LIMIT:
        raise SizeLimitError(
            f"exact cover search limited to {EXACT_SEARCH_VERTEX_LIMIT} vertices"
        )
    if not g.edges:
        return CoverResult(cover=frozenset(), exact=True)
    edges = g.sorted_edges()
    for size in range(1, g.vertex_count + 1):
        for cand in itertools.combinations(range(g.vertex_count), size):
            cset = set(cand)
            if all(i in cset or j in cset for i, j in edges):
                return CoverResult(cover=frozenset(cand), exact=True)
    raise AssertionError("unreachable: the full vertex set covers everything")


def edges_form_matching(g: InequalityGraph) -> bool:
    """True iff no two edges share a vertex (degrees all <= 1)."""
    seen: set[int] = set()
    for i, j in g.edges:
        if i in seen or j in seen:
            return False
        seen.add(i)
        seen.add(j)
    return True


def is_perfect_matching(g: InequalityGraph) -> bool:
    """True iff the edges are pairwise disjoint and touch every vertex."""
    return edges_form_matching(g) and len(g.edges) * 2 == g.vertex_count


def large_complement_clique(g: InequalityGraph) -> frozenset[int]:
    """Vertices outside the one-endpoint-per-edge cover: a complement clique.

    Size is at least vertex_count - |edges|.
    """
    cover = cover_bound(g).cover
    return frozenset(range(g.vertex_count)) - cover


def balanced_crossing_split(
    g: InequalityGraph, n: int
) -> Optional[LayerAssignment]:
    """The lexicographically first balanced split with every edge crossing.

    Searches bottom sets containing vertex 0 (the two sides of a split are
    interchangeable). None when no such split exists.
    """
    if g.vertex_count != 2 * n:
        raise GraphError("vertex_count must equal 2n")
    if g.vertex_count > CERTIFICATE_VERTEX_LIMIT:
        raise SizeLimitError(
            f"split search limited to {CERTIFICATE_VERTEX_LIMIT} vertices"
        )
    edges = g.sorted_edges()
    everything = frozenset(range(2 * n))
    for rest in itertools.combinations(range(1, 2 * n), n - 1):
        bottom = frozenset((0,) + rest)
        if all((i in bottom) != (j in bottom) for i, j in edges):
            return LayerAssignment(bottom=bottom, top=everything - bottom)
    return None


def ambiguity_certificate(g: InequalityGraph, n: int) -> AmbiguityCertificate:
    """A structure in the complement proving no safe output exists.

    Reports two disjoint n-cliques (a balanced all-crossing split), or a
    single (n+1)-clique, or `none` when neither shape exists. The two
    shapes are sufficient for ambiguity but not claimed necessary.
    """
    if g.vertex_count != 2 * n:
        raise GraphError("vertex_count must equal 2n")
    if len(g.edges) < n:
        big = sorted(large_complement_clique(g))
        witness = frozenset(big[: n + 1])
        return AmbiguityCertificate(kind=CERT_ONE_LARGER, witness_a=witness)
    split = balanced_crossing_split(g, n)
    if split is not None:
        return AmbiguityCertificate(
            kind=CERT_TWO_DISJOINT, witness_a=split.bottom, witness_b=split.top
        )
    if g.vertex_count > CERTIFICATE_VERTEX_LIMIT:
        raise SizeLimitError(
            f"clique search limited to {CERTIFICATE_VERTEX_LIMIT} vertices"
        )
    for cand in itertools.combinations(range(2 * n), n + 1):
        if is_complement_clique(g, cand):
            return AmbiguityCertificate(kind=CERT_ONE_LARGER, witness_a=frozenset(cand))
    return AmbiguityCertificate(kind=CERT_NONE)
