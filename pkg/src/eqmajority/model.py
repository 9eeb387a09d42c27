"""Core model: instances, the equality oracle, knowledge states, feasibility.

The problem: an array of 2n values contains n+1 distinct values, one of
which (the majority) occurs n times while every other value occurs once.
The only permitted data operation is asking whether two positions hold
equal values. Everything else in this package (strategies, the adversary,
the bound verifier, the game server) is defined against the semantics in
this module.

Conventions:
  * positions are indices in [0, 2n); algorithm outputs are positions
  * a majority set is a frozenset of n positions (the spec's S)
  * answers are the strings "equal" / "not_equal"
  * canonical instances label the majority value 0 and the singletons
    1..n in position order, so enumerating majority sets enumerates all
    instances up to value relabeling
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Literal, Optional, Sequence

Answer = Literal["equal", "not_equal"]
EQUAL: Answer = "equal"
NOT_EQUAL: Answer = "not_equal"

MajoritySet = frozenset  # frozenset[int] of exactly n positions


class ModelError(ValueError):
    """Base class for invariant violations in this module."""


class InvalidInstanceError(ModelError):
    pass


class InvalidQueryError(ModelError):
    pass


class ContradictionError(ModelError):
    """An answer conflicts with facts already recorded.

    `conflict` carries the class-representative pair whose recorded
    relation is being contradicted, when one is identifiable.
    """

    def __init__(self, message: str, conflict: Optional[tuple[int, int]] = None):
        super().__init__(message)
        self.conflict = conflict


def normalize_pair(i: int, j: int) -> tuple[int, int]:
    return (i, j) if i < j else (j, i)


def _check_positions(n: int, i: int, j: int) -> None:
    size = 2 * n
    if not (0 <= i < size and 0 <= j < size):
        raise InvalidQueryError(f"positions ({i}, {j}) out of range for 2n={size}")
    if i == j:
        raise InvalidQueryError(f"self-comparison ({i}, {i}) is not a legal query")


@dataclass(frozen=True)
class Instance:
    """A concrete array of 2n abstract value labels with an n-fold majority."""

    n: int
    values: tuple[int, ...]

    def __post_init__(self):
        if self.n < 2:
            raise InvalidInstanceError(f"n must be >= 2, got {self.n}")
        if len(self.values) != 2 * self.n:
            raise InvalidInstanceError(
                f"expected {2 * self.n} values, got {len(self.values)}"
            )
        counts: dict[int, int] = {}
        for v in self.values:
            counts[v] = counts.get(v, 0) + 1
        if len(counts) != self.n + 1:
            raise InvalidInstanceError(
                f"expected {self.n + 1} distinct values, got {len(counts)}"
            )
        majority = [v for v, c in counts.items() if c == self.n]
        singles = [v for v, c in counts.items() if c == 1]
        if len(majority) != 1 or len(singles) != self.n:
            raise InvalidInstanceError(
                "exactly one value must occur n times and the rest once"
            )

    @property
    def majority_value(self) -> int:
        counts: dict[int, int] = {}
        for v in self.values:
            counts[v] = counts.get(v, 0) + 1
        return next(v for v, c in counts.items() if c == self.n)

    @property
    def majority_positions(self) -> frozenset[int]:
        m = self.majority_value
        return frozenset(p for p, v in enumerate(self.values) if v == m)


def validate_majority_set(positions: Iterable[int], n: int) -> frozenset[int]:
    s = frozenset(positions)
    if len(s) != n:
        raise ModelError(f"majority set must have exactly {n} positions, got {len(s)}")
    if any(not (0 <= p < 2 * n) for p in s):
        raise ModelError(f"majority set {sorted(s)} out of range for 2n={2 * n}")
    return s


def canonical_instance(majority_set: Iterable[int], n: int) -> Instance:
    """The unique representative of an instance class under value relabeling.

    Positions in the majority set get value 0; the remaining positions get
    the distinct values 1..n in position order.
    """
    s = validate_majority_set(majority_set, n)
    values = []
    next_single = 1
    for p in range(2 * n):
        if p in s:
            values.append(0)
        else:
            values.append(next_single)
            next_single += 1
    return Instance(n=n, values=tuple(values))


def all_majority_sets(n: int) -> list[frozenset[int]]:
    """All C(2n, n) majority sets in lexicographic order."""
    return [frozenset(c) for c in itertools.combinations(range(2 * n), n)]


def oracle_answer(inst: Instance, i: int, j: int) -> Answer:
    _check_positions(inst.n, i, j)
    return EQUAL if inst.values[i] == inst.values[j] else NOT_EQUAL


@dataclass(frozen=True)
class QueryRecord:
    i: int
    j: int
    answer: Answer

    def __post_init__(self):
        if self.i == self.j:
            raise InvalidQueryError("query record with i == j")
        if self.answer not in (EQUAL, NOT_EQUAL):
            raise ModelError(f"bad answer {self.answer!r}")

    @property
    def pair(self) -> tuple[int, int]:
        return normalize_pair(self.i, self.j)

    def to_doc(self) -> dict:
        return {"i": self.i, "j": self.j, "answer": self.answer}

    @staticmethod
    def from_doc(doc: dict) -> "QueryRecord":
        return QueryRecord(i=doc["i"], j=doc["j"], answer=doc["answer"])


@dataclass(frozen=True)
class KnowledgeState:
    """Everything a player provably knows from a sequence of answers.

    `reps[p]` is the representative (minimum member) of p's known-equal
    class; `unequal` holds representative pairs of classes known to differ.
    Both are rewritten on merge so equality of two KnowledgeStates is
    plain field equality, independent of answer order.
    """

    n: int
    reps: tuple[int, ...]
    unequal: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def rep(self, p: int) -> int:
        return self.reps[p]

    def equal_classes(self) -> tuple[frozenset[int], ...]:
        groups: dict[int, list[int]] = {}
        for p, r in enumerate(self.reps):
            groups.setdefault(r, []).append(p)
        return tuple(frozenset(groups[r]) for r in sorted(groups))

    def class_inequalities(self) -> frozenset[tuple[int, int]]:
        return self.unequal

    def known_answer(self, i: int, j: int) -> Optional[Answer]:
        """The answer already forced by this state, if any."""
        _check_positions(self.n, i, j)
        a, b = self.reps[i], self.reps[j]
        if a == b:
            return EQUAL
        if (min(a, b), max(a, b)) in self.unequal:
            return NOT_EQUAL
        return None


def empty_knowledge(n: int) -> KnowledgeState:
    if n < 2:
        raise ModelError(f"n must be >= 2, got {n}")
    return KnowledgeState(n=n, reps=tuple(range(2 * n)))


def apply_answer(k: KnowledgeState, q: QueryRecord) -> KnowledgeState:
    """Fold one answered query into a knowledge state.

    Idempotent on repeated identical answers; raises ContradictionError if
    the answer conflicts with what is already known.
    """
    _check_positions(k.n, q.i, q.j)
    a, b = k.reps[q.i], k.reps[q.j]
    key = (min(a, b), max(a, b))
    if q.answer == EQUAL:
        if a == b:
            return k
        if key in k.unequal:
            raise ContradictionError(
                f"classes of {q.i} and {q.j} are already known unequal",
                conflict=key,
            )
        keep, drop = key
        reps = tuple(keep if r == drop else r for r in k.reps)
        rewritten = set()
        for x, y in k.unequal:
            x2 = keep if x == drop else x
            y2 = keep if y == drop else y
            rewritten.add((min(x2, y2), max(x2, y2)))
        return KnowledgeState(n=k.n, reps=reps, unequal=frozenset(rewritten))
    else:
        if a == b:
            raise ContradictionError(
                f"positions {q.i} and {q.j} are already known equal",
                conflict=(min(q.i, q.j), max(q.i, q.j)),
            )
        if key in k.unequal:
            return k
        return KnowledgeState(n=k.n, reps=k.reps, unequal=k.unequal | {key})


def knowledge_from_answers(n: int, queries: Iterable[QueryRecord]) -> KnowledgeState:
    k = empty_knowledge(n)
    for q in queries:
        k = apply_answer(k, q)
    return k


def feasible_majority_sets(k: KnowledgeState) -> set[frozenset[int]]:
    """All majority sets consistent with the recorded answers.

    S is feasible iff every known-equal class of size >= 2 lies inside S
    and no two classes related by a known inequality both meet S. May be
    empty when the answer history is not realizable by any valid instance.
    """
    n = k.n
    classes = k.equal_classes()
    big = [c for c in classes if len(c) >= 2]
    base: set[int] = set()
    for c in big:
        base |= c
    if len(base) > n:
        return set()
    base_reps = {min(c) for c in big}
    singles = sorted(p for p in range(2 * n) if p not in base)
    result: set[frozenset[int]] = set()
    need = n - len(base)
    for extra in itertools.combinations(singles, need):
        reps_in = base_reps | set(extra)
        if any(a in reps_in and b in reps_in for a, b in k.unequal):
            continue
        result.add(frozenset(base) | frozenset(extra))
    return result


def safe_outputs(k: KnowledgeState) -> frozenset[int]:
    """Positions contained in every feasible majority set.

    Outputting such a position is correct regardless of the remaining
    ambiguity. Empty when no safe answer exists yet (including the
    degenerate case of an unrealizable history).
    """
    feasible = feasible_majority_sets(k)
    if not feasible:
        return frozenset()
    return frozenset.intersection(*feasible)


@dataclass(frozen=True)
class ClaimedOutput:
    position: int
    value: Optional[int] = None

    def to_doc(self) -> dict:
        return {"position": self.position, "value": self.value}

    @staticmethod
    def from_doc(doc: dict) -> "ClaimedOutput":
        return ClaimedOutput(position=doc["position"], value=doc.get("value"))


VERDICT_CORRECT = "correct"
VERDICT_WRONG = "wrong"
VERDICT_UNRESOLVED = "unresolved"


@dataclass(frozen=True)
class Transcript:
    """Ordered query/answer log with the final output and verdict.

    This is the interchange format across the CLI, server, and UI; the
    document produced by `to_doc` is stable field-for-field.
    """

    n: int
    mode: str
    queries: tuple[QueryRecord, ...] = ()
    output: Optional[ClaimedOutput] = None
    verdict: str = VERDICT_UNRESOLVED

    def __post_init__(self):
        if self.verdict in (VERDICT_CORRECT, VERDICT_WRONG) and self.output is None:
            raise ModelError("verdict requires an output")

    @property
    def comparisons(self) -> int:
        return len(self.queries)

    def to_doc(self) -> dict:
        return {
            "n": self.n,
            "mode": self.mode,
            "queries": [q.to_doc() for q in self.queries],
            "output": self.output.to_doc() if self.output else None,
            "verdict": self.verdict,
            "comparisons": self.comparisons,
        }

    @staticmethod
    def from_doc(doc: dict) -> "Transcript":
        queries = tuple(QueryRecord.from_doc(q) for q in doc["queries"])
        output = ClaimedOutput.from_doc(doc["output"]) if doc.get("output") else None
        t = Transcript(
            n=doc["n"],
            mode=doc["mode"],
            queries=queries,
            output=output,
            verdict=doc["verdict"],
        )
        if doc.get("comparisons") is not None and doc["comparisons"] != t.comparisons:
            raise ModelError("comparisons field disagrees with query count")
        return t
