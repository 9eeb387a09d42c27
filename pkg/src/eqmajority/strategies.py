"""Algorithm strategies in the equality model.

A strategy is a pure decision procedure over its own query history: given
the ordered records so far it returns either the next query or a final
output position. `best_output` answers "output now" for any history, which
the arena uses when a comparison budget forces an early answer.

Because `decide` depends only on the history (randomized strategies
re-derive their random stream from the seed), strategy objects are
reusable across games and transcripts replay deterministically.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import NamedTuple, Protocol, Sequence, Union

from .model import EQUAL, InvalidQueryError, QueryRecord, normalize_pair


class Query(NamedTuple):
    i: int
    j: int


class Output(NamedTuple):
    position: int


Move = Union[Query, Output]


class Strategy(Protocol):
    name: str
    n: int

    def decide(self, history: Sequence[QueryRecord]) -> Move: ...

    def best_output(self, history: Sequence[QueryRecord]) -> int: ...


def _first_equal_position(history: Sequence[QueryRecord]) -> int | None:
    for q in history:
        if q.answer == EQUAL:
            return min(q.i, q.j)
    return None


@dataclass(frozen=True)
class OptimalStrategy:
    """The n+2 algorithm: pair up the array, then two extra local tests.

    Phase 1 compares the n disjoint pairs (0,1), (2,3), ...; any equality
    is output immediately. If all differ, each pair holds exactly one copy
    of the majority, and comparing position 0 against 2 and 3 settles
    whether the first pair's majority copy is position 0 or 1.
    """

    n: int
    name: str = "optimal"

    def decide(self, history: Sequence[QueryRecord]) -> Move:
        hit = _first_equal_position(history)
        if hit is not None:
            return Output(hit)
        t = len(history)
        if t < self.n:
            return Query(2 * t, 2 * t + 1)
        if t == self.n:
            return Query(0, 2)
        if t == self.n + 1:
            return Query(0, 3)
        return Output(1)

    def best_output(self, history: Sequence[QueryRecord]) -> int:
        hit = _first_equal_position(history)
        if hit is not None:
            return hit
        if len(history) >= self.n + 2:
            return 1
        return 0


@dataclass(frozen=True)
class AllPairsStrategy:
    """Deterministic baseline: every pair in lexicographic order."""

    n: int
    name: str = "all-pairs"

    def decide(self, history: Sequence[QueryRecord]) -> Move:
        hit = _first_equal_position(history)
        if hit is not None:
            return Output(hit)
        pairs = list(itertools.combinations(range(2 * self.n), 2))
        t = len(history)
        if t < len(pairs):
            return Query(*pairs[t])
        return Output(self.best_output(history))

    def best_output(self, history: Sequence[QueryRecord]) -> int:
        hit = _first_equal_position(history)
        return hit if hit is not None else 0


@dataclass(frozen=True)
class RandomizedPairsStrategy:
    """Seeded random pair probing with an all-pairs completion after `cap`.

    Random probing alone may never terminate in the worst case; the
    completion sweep restores totality within cap + C(2n, 2) queries.
    """

    n: int
    seed: int
    cap: int
    name: str = "random"

    def __post_init__(self):
        if self.cap < 1:
            raise InvalidQueryError(f"cap must be >= 1, got {self.cap}")

    def decide(self, history: Sequence[QueryRecord]) -> Move:
        hit = _first_equal_position(history)
        if hit is not None:
            return Output(hit)
        t = len(history)
        if t < self.cap:
            return Query(*self._random_pair(t))
        asked = {q.pair for q in history}
        for pair in itertools.combinations(range(2 * self.n), 2):
            if pair not in asked:
                return Query(*pair)
        return Output(self.best_output(history))

    def _random_pair(self, t: int) -> tuple[int, int]:
        # Replays the same stream a persistent generator would produce:
        # draw t+1 pairs from the seed and keep the last.
        rng = random.Random(self.seed)
        pair = (0, 1)
        for _ in range(t + 1):
            i = rng.randrange(2 * self.n)
            j = rng.randrange(2 * self.n - 1)
            if j >= i:
                j += 1
            pair = normalize_pair(i, j)
        return pair

    def best_output(self, history: Sequence[QueryRecord]) -> int:
        hit = _first_equal_position(history)
        return hit if hit is not None else 0


@dataclass(frozen=True)
class ScriptedStrategy:
    """Plays a fixed query list then a fixed output; used to replay games."""

    n: int
    queries: tuple[tuple[int, int], ...]
    output: int
    name: str = "script"

    def decide(self, history: Sequence[QueryRecord]) -> Move:
        t = len(history)
        if t < len(self.queries):
            return Query(*self.queries[t])
        return Output(self.output)

    def best_output(self, history: Sequence[QueryRecord]) -> int:
        return self.output


def optimal_strategy(n: int) -> OptimalStrategy:
    if n < 2:
        raise InvalidQueryError(f"n must be >= 2, got {n}")
    return OptimalStrategy(n=n)


def all_pairs_strategy(n: int) -> AllPairsStrategy:
    if n < 2:
        raise InvalidQueryError(f"n must be >= 2, got {n}")
    return AllPairsStrategy(n=n)


def randomized_pairs_strategy(n: int, seed: int, cap: int) -> RandomizedPairsStrategy:
    if n < 2:
        raise InvalidQueryError(f"n must be >= 2, got {n}")
    return RandomizedPairsStrategy(n=n, seed=seed, cap=cap)


def scripted_strategy(
    n: int, queries: Sequence[tuple[int, int]], output: int
) -> ScriptedStrategy:
    return ScriptedStrategy(n=n, queries=tuple(queries), output=output)


STRATEGY_NAMES = ("optimal", "all-pairs", "random")


def make_strategy(name: str, n: int, seed: int = 0, cap: int = 32) -> Strategy:
    """Strategy selection by name, as used by the CLI and server."""
    if name == "optimal":
        return optimal_strategy(n)
    if name == "all-pairs":
        return all_pairs_strategy(n)
    if name == "random":
        return randomized_pairs_strategy(n, seed=seed, cap=cap)
    raise InvalidQueryError(f"unknown strategy {name!r}; choose from {STRATEGY_NAMES}")
