"""The pillar adversary: answer "not equal", keep every edge crossing layers.

The adversary maintains a balanced two-layer assignment of positions in
which every inequality edge connects a bottom vertex to a top vertex.
Each layer is then a clique in the potential-equality graph, so two
disjoint majority candidates survive and no output can be safe.

An intra-layer query is repaired by relabeling: the queried endpoint and
one of its edge partners swap layers (the pillar flip). Edges are
immutable facts; only layer membership moves. When no single swap works,
every balanced split is searched.

Certain query patterns (a triangle of inequalities, for instance) destroy
every crossing split while consistent instances still abound; the layers
then go stale but the adversary keeps answering "not equal" for as long
as any instance allows it. Only when "not equal" itself would contradict
every remaining instance does it commit: it fixes the lexicographically
least majority set consistent with all prior answers and answers the
current and all future queries from that concrete instance, staying a
total, consistent oracle for arbitrarily long games.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from typing import Optional

from .graphs import InequalityGraph, LayerAssignment, balanced_crossing_split
from .model import (
    EQUAL,
    NOT_EQUAL,
    Answer,
    Instance,
    InvalidQueryError,
    QueryRecord,
    Transcript,
    VERDICT_CORRECT,
    VERDICT_UNRESOLVED,
    VERDICT_WRONG,
    canonical_instance,
    feasible_majority_sets,
    knowledge_from_answers,
    normalize_pair,
    oracle_answer,
)

PHASE_AMBIGUOUS = "ambiguous"
PHASE_COMMITTED = "committed"


class ReplayMismatchError(ValueError):
    """A transcript disagrees with the answers this adversary gave."""


@dataclass(frozen=True)
class AdversaryState:
    """Layers satisfy the all-edges-crossing invariant whenever any
    balanced split does; they are stale in the degraded regime where no
    split exists but uncommitted play remains consistent."""

    n: int
    graph: InequalityGraph
    layers: LayerAssignment
    phase: str = PHASE_AMBIGUOUS
    committed_instance: Optional[Instance] = None
    answers: tuple[QueryRecord, ...] = ()

    def cached_answer(self, i: int, j: int) -> Optional[Answer]:
        pair = normalize_pair(i, j)
        for q in self.answers:
            if q.pair == pair:
                return q.answer
        return None

    def to_doc(self) -> dict:
        committed = None
        if self.committed_instance is not None:
            committed = sorted(self.committed_instance.majority_positions)
        return {
            "n": self.n,
            "phase": self.phase,
            "edges": [[i, j] for i, j in self.graph.sorted_edges()],
            "bottom": sorted(self.layers.bottom),
            "top": sorted(self.layers.top),
            "committed_majority": committed,
        }


def new_adversary(n: int) -> AdversaryState:
    """Fresh adversary: no edges, positions 0..n-1 bottom and n..2n-1 top."""
    if n < 2:
        raise InvalidQueryError(f"adversary requires n >= 2, got {n}")
    layers = LayerAssignment(
        bottom=frozenset(range(n)), top=frozenset(range(n, 2 * n))
    )
    return AdversaryState(n=n, graph=InequalityGraph(2 * n), layers=layers)


def _single_swap_repair(
    graph: InequalityGraph, layers: LayerAssignment, pair: tuple[int, int]
) -> Optional[LayerAssignment]:
    """Try the pillar flip for each endpoint of the new intra-layer edge.

    Endpoint v moves to the opposite layer while one of v's edge partners
    there moves back, keeping the split balanced. Endpoints are tried in
    ascending order, partners likewise; the first swap under which every
    edge crosses wins.
    """
    for v in pair:
        same = layers.layer_of(v)
        other = layers.top if same is layers.bottom else layers.bottom
        for partner in sorted(graph.neighbors(v) & other):
            bottom = set(layers.bottom)
            for x, into in ((v, other), (partner, same)):
                if into is layers.bottom:
                    bottom.add(x)
                else:
                    bottom.discard(x)
            candidate = LayerAssignment(
                bottom=frozenset(bottom),
                top=frozenset(range(graph.vertex_count)) - frozenset(bottom),
            )
            if candidate.all_edges_cross(graph):
                return candidate
    return None


def _has_independent_set(graph: InequalityGraph, size: int) -> bool:
    """Early-exit search for an independent vertex set of the given size.

    In the ambiguous phase every answer is "not equal", so knowledge
    classes are singletons and a feasible majority set is exactly an
    independent n-set of the inequality graph.
    """
    edges = graph.sorted_edges()
    for cand in itertools.combinations(range(graph.vertex_count), size):
        cset = set(cand)
        if not any(i in cset and j in cset for i, j in edges):
            return True
    return False


def _commit(state: AdversaryState) -> Instance:
    """Pick the lexicographically least majority set consistent so far."""
    knowledge = knowledge_from_answers(state.n, state.answers)
    feasible = feasible_majority_sets(knowledge)
    if not feasible:
        raise AssertionError("adversary answers became unrealizable")
    chosen = min(feasible, key=sorted)
    return canonical_instance(chosen, state.n)


def respond(state: AdversaryState, i: int, j: int) -> tuple[Answer, AdversaryState]:
    """Answer one query, returning the answer and the updated state.

    Repeated pairs replay the cached answer and leave the state unchanged.
    Fresh pairs are answered "not equal" as long as that stays consistent
    with some valid instance, with the layer assignment repaired (pillar
    flip, then exhaustive split) whenever a crossing split survives;
    otherwise the adversary commits and answers from its instance.
    """
    if not (0 <= i < 2 * state.n and 0 <= j < 2 * state.n):
        raise InvalidQueryError(f"positions ({i}, {j}) out of range")
    if i == j:
        raise InvalidQueryError("self-comparison rejected")
    pair = normalize_pair(i, j)

    cached = state.cached_answer(i, j)
    if cached is not None:
        return cached, state

    if state.phase == PHASE_COMMITTED:
        assert state.committed_instance is not None
        answer = oracle_answer(state.committed_instance, i, j)
        graph = state.graph.add_edge(*pair) if answer == NOT_EQUAL else state.graph
        record = QueryRecord(i=pair[0], j=pair[1], answer=answer)
        return answer, replace(state, graph=graph, answers=state.answers + (record,))

    grown = state.graph.add_edge(*pair)
    record = QueryRecord(i=pair[0], j=pair[1], answer=NOT_EQUAL)

    # Fast path: a crossing split certifies two disjoint feasible majority
    # sets, so "not equal" is consistent without any feasibility search.
    if state.layers.all_edges_cross(grown):
        return NOT_EQUAL, replace(
            state, graph=grown, answers=state.answers + (record,)
        )
    repaired = _single_swap_repair(grown, state.layers, pair)
    if repaired is None:
        repaired = balanced_crossing_split(grown, state.n)
    if repaired is not None:
        return NOT_EQUAL, replace(
            state, graph=grown, layers=repaired, answers=state.answers + (record,)
        )

    # Degraded regime: no crossing split exists, but "not equal" remains
    # consistent while the grown graph still has an independent n-set.
    if _has_independent_set(grown, state.n):
        return NOT_EQUAL, replace(
            state, graph=grown, answers=state.answers + (record,)
        )

    instance = _commit(state)
    answer = oracle_answer(instance, i, j)
    graph = state.graph.add_edge(*pair) if answer == NOT_EQUAL else state.graph
    record = QueryRecord(i=pair[0], j=pair[1], answer=answer)
    return answer, replace(
        state,
        graph=graph,
        phase=PHASE_COMMITTED,
        committed_instance=instance,
        answers=state.answers + (record,),
    )


def extract_witness(state: AdversaryState, claimed: int) -> Optional[Instance]:
    """A canonical instance consistent with every answer whose majority
    set excludes `claimed`, or None when every feasible set contains it."""
    knowledge = knowledge_from_answers(state.n, state.answers)
    feasible = feasible_majority_sets(knowledge)
    losing = [s for s in feasible if claimed not in s]
    if not losing:
        return None
    return canonical_instance(min(losing, key=sorted), state.n)


def defeat_check(state: AdversaryState, transcript: Transcript) -> str:
    """Verdict for a finished game against this adversary.

    Replays the transcript against the cached answers first; a mismatch
    means the transcript was not produced by this adversary state.
    """
    if transcript.n != state.n:
        raise ReplayMismatchError("transcript n does not match adversary")
    for q in transcript.queries:
        cached = state.cached_answer(q.i, q.j)
        if cached != q.answer:
            raise ReplayMismatchError(
                f"query ({q.i}, {q.j}) answered {q.answer}, adversary said {cached}"
            )
    if transcript.output is None:
        return VERDICT_UNRESOLVED
    witness = extract_witness(state, transcript.output.position)
    return VERDICT_WRONG if witness is not None else VERDICT_CORRECT
