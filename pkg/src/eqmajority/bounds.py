"""Exact worst-case comparison complexity by minimax over the query game.

The game: the algorithm picks a pair to compare, an adversary picks the
answer (either answer is available to it, unlike the constructive pillar
adversary, as long as some valid instance remains). The game ends when a
safe output exists, i.e. some position lies in every feasible majority
set; an algorithm may be correct while several instances remain, provided
they share a majority position. The value of the starting state is the
exact number of comparisons an optimal algorithm needs in the worst case.

The engine memoizes on a canonical key, invariant under position
relabeling: the multiset of known-equal class sizes plus the class-level
inequality graph, canonically labeled by color refinement and exact
search within the residual symmetry groups. A naive reference engine with
no memoization, no canonicalization, and no query pruning exists to
validate the optimized engine at the smallest size.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from typing import Optional

from .model import (
    EQUAL,
    NOT_EQUAL,
    ContradictionError,
    Instance,
    KnowledgeState,
    QueryRecord,
    apply_answer,
    empty_knowledge,
    feasible_majority_sets,
    oracle_answer,
)


class NodeBudgetExceeded(RuntimeError):
    """The configured node budget ran out; no partial answer is reported."""


def _quotient(k: KnowledgeState) -> tuple[tuple[int, ...], set[tuple[int, int]]]:
    """Class sizes and the inequality graph on class indices."""
    classes = k.equal_classes()
    index = {min(c): i for i, c in enumerate(classes)}
    sizes = tuple(len(c) for c in classes)
    edges = set()
    for a, b in k.unequal:
        ia, ib = index[a], index[b]
        edges.add((min(ia, ib), max(ia, ib)))
    return sizes, edges


def _refine_colors(
    m: int, sizes: tuple[int, ...], adj: list[set[int]]
) -> list[int]:
    """Color refinement starting from class sizes.

    Refined colors are isomorphism-invariant integers: recolor by (color,
    sorted neighbor colors) until the partition stabilizes.
    """
    colors: list = [(sizes[i],) for i in range(m)]
    while True:
        signature = [
            (colors[i], tuple(sorted(colors[x] for x in adj[i]))) for i in range(m)
        ]
        ranks = {sig: r for r, sig in enumerate(sorted(set(signature)))}
        new = [ranks[sig] for sig in signature]
        # Each signature embeds the old color, so the partition only ever
        # splits; an unchanged class count means it is stable.
        if len(set(new)) == len(set(colors)):
            return new
        colors = new


def canonical_key(k: KnowledgeState) -> tuple:
    """A key equal for two knowledge states iff some position permutation
    maps one onto the other."""
    sizes, edges = _quotient(k)
    m = len(sizes)
    adj: list[set[int]] = [set() for _ in range(m)]
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    colors = _refine_colors(m, sizes, adj)

    order = sorted(range(m), key=lambda i: (colors[i], sizes[i]))
    groups: list[list[int]] = []
    for _, members in itertools.groupby(order, key=lambda i: colors[i]):
        groups.append(list(members))
    sizes_canon = tuple(sizes[i] for i in order)

    if not edges:
        return (k.n, sizes_canon, ())

    # Exact canonical labeling: minimize the translated edge list over all
    # orderings that respect the refined color groups. Groups whose members
    # touch no edge contribute nothing and are not permuted.
    choices = []
    for g in groups:
        if len(g) == 1 or all(not adj[v] for v in g):
            choices.append([tuple(g)])
        else:
            choices.append([p for p in itertools.permutations(g)])
    best: Optional[tuple] = None
    for combo in itertools.product(*choices):
        ordering = [v for part in combo for v in part]
        position = {v: p for p, v in enumerate(ordering)}
        enc = tuple(
            sorted(
                (min(position[a], position[b]), max(position[a], position[b]))
                for a, b in edges
            )
        )
        if best is None or enc < best:
            best = enc
    return (k.n, sizes_canon, best)


@dataclass
class GameValueReport:
    n: int
    value: int
    nodes_expanded: int
    table_size: int
    elapsed: float
    first_move_values: dict[tuple[int, int], int] = field(default_factory=dict)

    def to_doc(self) -> dict:
        return {
            "n": self.n,
            "value": self.value,
            "nodes_expanded": self.nodes_expanded,
            "table_size": self.table_size,
            "elapsed": self.elapsed,
        }


class _Engine:
    def __init__(
        self,
        n: int,
        node_budget: Optional[int] = None,
        not_equal_only: bool = False,
    ):
        self.n = n
        self.node_budget = node_budget
        self.not_equal_only = not_equal_only
        self.memo: dict[tuple, Optional[int]] = {}
        self.key_cache: dict[KnowledgeState, tuple] = {}
        self.nodes_expanded = 0
        self.pairs = list(itertools.combinations(range(2 * n), 2))

    def _key(self, k: KnowledgeState) -> tuple:
        key = self.key_cache.get(k)
        if key is None:
            key = canonical_key(k)
            self.key_cache[k] = key
        return key

    def _children(self, k: KnowledgeState, pair: tuple[int, int]):
        """Legal (answer, child) pairs for the adversary at this query."""
        out = []
        answers = (NOT_EQUAL, EQUAL)
        for answer in answers:
            child = apply_answer(k, QueryRecord(i=pair[0], j=pair[1], answer=answer))
            out.append((answer, child))
        if self.not_equal_only:
            # The restricted adversary answers "not equal" whenever some
            # instance allows it, conceding "equal" only when forced.
            ne_child = out[0][1]
            if feasible_majority_sets(ne_child):
                return [out[0]]
            return [out[1]]
        return out

    def value(self, k: KnowledgeState) -> Optional[int]:
        """Minimax value, or None for states no valid instance realizes."""
        key = self._key(k)
        if key in self.memo:
            return self.memo[key]
        self.nodes_expanded += 1
        if self.node_budget is not None and self.nodes_expanded > self.node_budget:
            raise NodeBudgetExceeded(f"node budget {self.node_budget} exhausted")
        feasible = feasible_majority_sets(k)
        if not feasible:
            self.memo[key] = None
            return None
        if frozenset.intersection(*feasible):
            self.memo[key] = 0
            return 0
        best: Optional[int] = None
        for pair in self.pairs:
            if k.known_answer(*pair) is not None:
                continue  # a repeat adds cost without information
            worst = 0
            cut = False
            for _, child in self._children(k, pair):
                v = self.value(child)
                if v is None:
                    continue
                worst = max(worst, v)
                if best is not None and worst >= best:
                    cut = True
                    break
            if not cut and (best is None or worst < best):
                best = worst
                if best == 0:
                    break
        assert best is not None, "non-safe state must admit an informative query"
        self.memo[key] = 1 + best
        return 1 + best

    def root_move_values(self) -> dict[tuple[int, int], int]:
        root = empty_knowledge(self.n)
        out = {}
        for pair in self.pairs:
            worst = 0
            for _, child in self._children(root, pair):
                v = self.value(child)
                if v is not None:
                    worst = max(worst, v)
            out[pair] = 1 + worst
        return out


def game_value_report(
    n: int, node_budget: Optional[int] = None, not_equal_only: bool = False
) -> GameValueReport:
    start = time.perf_counter()
    engine = _Engine(n, node_budget=node_budget, not_equal_only=not_equal_only)
    moves = engine.root_move_values()
    value = min(moves.values())
    return GameValueReport(
        n=n,
        value=value,
        nodes_expanded=engine.nodes_expanded,
        table_size=len(engine.memo),
        elapsed=time.perf_counter() - start,
        first_move_values=moves,
    )


def game_value(
    n: int, node_budget: Optional[int] = None, not_equal_only: bool = False
) -> int:
    return game_value_report(
        n, node_budget=node_budget, not_equal_only=not_equal_only
    ).value


def reference_game_value(n: int) -> int:
    """Unpruned, non-canonicalized, memo-free minimax; n = 2 scale only."""
    return min(reference_first_move_values(n).values())


def reference_first_move_values(n: int) -> dict[tuple[int, int], int]:
    pairs = list(itertools.combinations(range(2 * n), 2))

    def value(k: KnowledgeState, asked: frozenset) -> Optional[int]:
        feasible = feasible_majority_sets(k)
        if not feasible:
            return None
        if frozenset.intersection(*feasible):
            return 0
        best = None
        for pair in pairs:
            if pair in asked:
                continue
            worst = _worst_answer(k, asked, pair, value)
            if worst is not None and (best is None or worst < best):
                best = worst
        assert best is not None
        return 1 + best

    def _worst_answer(k, asked, pair, value_fn):
        worst = None
        for answer in (EQUAL, NOT_EQUAL):
            try:
                child = apply_answer(
                    k, QueryRecord(i=pair[0], j=pair[1], answer=answer)
                )
            except ContradictionError:
                continue
            v = value_fn(child, asked | {pair})
            if v is not None and (worst is None or v > worst):
                worst = v
        return worst

    root = empty_knowledge(n)
    out = {}
    for pair in pairs:
        worst = _worst_answer(root, frozenset(), pair, value)
        assert worst is not None
        out[pair] = 1 + worst
    return out


@dataclass(frozen=True)
class DecisionTree:
    """Either an internal comparison node or an output leaf.

    Internal nodes carry the queried pair and a child per answer; a child
    is None when that answer is impossible against every remaining
    instance (real games never reach it). Leaves carry a safe output.
    """

    query: Optional[tuple[int, int]] = None
    equal: Optional["DecisionTree"] = None
    not_equal: Optional["DecisionTree"] = None
    output: Optional[int] = None

    @property
    def is_leaf(self) -> bool:
        return self.output is not None

    def depth(self) -> int:
        if self.is_leaf:
            return 0
        kids = [c for c in (self.equal, self.not_equal) if c is not None]
        return 1 + max(c.depth() for c in kids)

    def replay(self, inst: Instance) -> int:
        node = self
        while not node.is_leaf:
            answer = oracle_answer(inst, *node.query)
            node = node.equal if answer == EQUAL else node.not_equal
            assert node is not None, "instance reached an impossible branch"
        return node.output

    def to_doc(self) -> dict:
        if self.is_leaf:
            return {"output": self.output}
        return {
            "query": list(self.query),
            "equal": self.equal.to_doc() if self.equal else None,
            "not_equal": self.not_equal.to_doc() if self.not_equal else None,
        }


def optimal_tree(n: int, node_budget: Optional[int] = None) -> DecisionTree:
    """A depth-game_value(n) decision tree, lexicographically least optimal
    query at every node, every leaf a safe output."""
    engine = _Engine(n, node_budget=node_budget)

    def build(k: KnowledgeState) -> DecisionTree:
        feasible = feasible_majority_sets(k)
        safe = frozenset.intersection(*feasible) if feasible else frozenset()
        if safe:
            return DecisionTree(output=min(safe))
        target = engine.value(k)
        for pair in engine.pairs:
            if k.known_answer(*pair) is not None:
                continue
            children: dict[str, Optional[DecisionTree]] = {
                EQUAL: None,
                NOT_EQUAL: None,
            }
            worst = 0
            legal = []
            for answer in (EQUAL, NOT_EQUAL):
                child = apply_answer(
                    k, QueryRecord(i=pair[0], j=pair[1], answer=answer)
                )
                v = engine.value(child)
                if v is None:
                    continue
                legal.append((answer, child))
                worst = max(worst, v)
            if 1 + worst == target:
                for answer, child in legal:
                    children[answer] = build(child)
                return DecisionTree(
                    query=pair,
                    equal=children[EQUAL],
                    not_equal=children[NOT_EQUAL],
                )
        raise AssertionError("no query achieves the computed game value")

    return build(empty_knowledge(n))
