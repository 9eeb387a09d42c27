"""Game runner: strategies vs concrete instances or the pillar adversary.

Budgets are enforced here, not by strategies. When a strategy attempts a
query beyond its budget against the adversary it is forced to output its
best current guess; against a concrete instance the game is recorded as
unresolved instead, since no claim was made.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Optional

from . import adversary as adv
from .graphs import CERT_NONE, ambiguity_certificate
from .model import (
    ClaimedOutput,
    Instance,
    InvalidQueryError,
    QueryRecord,
    Transcript,
    VERDICT_CORRECT,
    VERDICT_UNRESOLVED,
    VERDICT_WRONG,
    all_majority_sets,
    canonical_instance,
    oracle_answer,
)
from .strategies import Output, Query, Strategy

MODE_INSTANCE = "instance"
MODE_ADVERSARY = "adversary"

DEFAULT_SWEEP_LIMIT = 6


class ArenaError(ValueError):
    pass


@dataclass(frozen=True)
class DuelReport:
    transcript: Transcript
    opponent: str
    witness: Optional[Instance] = None

    def to_doc(self) -> dict:
        return {
            "transcript": self.transcript.to_doc(),
            "opponent": self.opponent,
            "witness": list(self.witness.values) if self.witness else None,
        }


@dataclass
class SweepReport:
    n: int
    strategy: str
    instances_tested: int = 0
    failures: int = 0
    max_comparisons: int = 0
    histogram: dict[int, int] = field(default_factory=dict)

    def record(self, comparisons: int, correct: bool) -> None:
        self.instances_tested += 1
        if not correct:
            self.failures += 1
        self.max_comparisons = max(self.max_comparisons, comparisons)
        self.histogram[comparisons] = self.histogram.get(comparisons, 0) + 1

    def to_doc(self) -> dict:
        return {
            "n": self.n,
            "strategy": self.strategy,
            "instances_tested": self.instances_tested,
            "failures": self.failures,
            "max_comparisons": self.max_comparisons,
            "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
        }


@dataclass
class StressReport:
    n: int
    depth: int
    mode: str
    sequences_checked: int = 0
    violations: list[list[tuple[int, int]]] = field(default_factory=list)

    def to_doc(self) -> dict:
        return {
            "n": self.n,
            "depth": self.depth,
            "mode": self.mode,
            "sequences_checked": self.sequences_checked,
            "violations": [[list(p) for p in seq] for seq in self.violations],
        }


def _validate_query(n: int, move: Query) -> None:
    if not (0 <= move.i < 2 * n and 0 <= move.j < 2 * n) or move.i == move.j:
        raise ArenaError(f"strategy emitted invalid query ({move.i}, {move.j})")


def run_vs_instance(
    strategy: Strategy, inst: Instance, budget: Optional[int] = None
) -> DuelReport:
    """Play a strategy against a concrete instance.

    The verdict is correct iff the output position holds the majority
    value. With a budget, exceeding it before any output leaves the game
    unresolved.
    """
    if strategy.n != inst.n:
        raise ArenaError(f"strategy n={strategy.n} but instance n={inst.n}")
    history: list[QueryRecord] = []
    majority = inst.majority_positions
    while True:
        move = strategy.decide(history)
        if isinstance(move, Output):
            if not (0 <= move.position < 2 * inst.n):
                raise ArenaError(f"output position {move.position} out of range")
            correct = move.position in majority
            transcript = Transcript(
                n=inst.n,
                mode=MODE_INSTANCE,
                queries=tuple(history),
                output=ClaimedOutput(
                    position=move.position, value=inst.values[move.position]
                ),
                verdict=VERDICT_CORRECT if correct else VERDICT_WRONG,
            )
            return DuelReport(transcript=transcript, opponent=MODE_INSTANCE)
        _validate_query(inst.n, move)
        if budget is not None and len(history) >= budget:
            transcript = Transcript(
                n=inst.n,
                mode=MODE_INSTANCE,
                queries=tuple(history),
                output=None,
                verdict=VERDICT_UNRESOLVED,
            )
            return DuelReport(transcript=transcript, opponent=MODE_INSTANCE)
        answer = oracle_answer(inst, move.i, move.j)
        history.append(QueryRecord(i=move.i, j=move.j, answer=answer))


def run_vs_adversary(
    strategy: Strategy, n: int, budget: Optional[int] = None
) -> DuelReport:
    """Play a strategy against a fresh pillar adversary.

    A budget forces the strategy's best current output once spent; the
    verdict always comes from the adversary's defeat check, with the
    defeating witness attached when the claim is wrong.
    """
    state = adv.new_adversary(n)
    history: list[QueryRecord] = []
    claimed: Optional[int] = None
    while True:
        move = strategy.decide(history)
        if isinstance(move, Output):
            claimed = move.position
            break
        _validate_query(n, move)
        if budget is not None and len(history) >= budget:
            claimed = strategy.best_output(history)
            break
        answer, state = adv.respond(state, move.i, move.j)
        history.append(QueryRecord(i=move.i, j=move.j, answer=answer))
    if not (0 <= claimed < 2 * n):
        raise ArenaError(f"output position {claimed} out of range")
    transcript = Transcript(
        n=n,
        mode=MODE_ADVERSARY,
        queries=tuple(history),
        output=ClaimedOutput(position=claimed, value=None),
        verdict=VERDICT_UNRESOLVED,
    )
    verdict = adv.defeat_check(state, transcript)
    transcript = Transcript(
        n=n,
        mode=MODE_ADVERSARY,
        queries=tuple(history),
        output=transcript.output,
        verdict=verdict,
    )
    witness = None
    if verdict == VERDICT_WRONG:
        witness = adv.extract_witness(state, claimed)
    return DuelReport(transcript=transcript, opponent=MODE_ADVERSARY, witness=witness)


def exhaustive_sweep(
    strategy: Strategy, n: int, limit: int = DEFAULT_SWEEP_LIMIT
) -> SweepReport:
    """Run a strategy against every canonical instance for this n."""
    if n > limit:
        raise ArenaError(f"sweep limited to n <= {limit}")
    report = SweepReport(n=n, strategy=strategy.name)
    for majority in all_majority_sets(n):
        inst = canonical_instance(majority, n)
        duel = run_vs_instance(strategy, inst)
        report.record(
            comparisons=duel.transcript.comparisons,
            correct=duel.transcript.verdict == VERDICT_CORRECT,
        )
    return report


def _all_pairs(n: int) -> list[tuple[int, int]]:
    return list(itertools.combinations(range(2 * n), 2))


def _check_stress_state(state: adv.AdversaryState, n: int) -> bool:
    """Ambiguity invariant for one prefix: still uncommitted, certified."""
    if state.phase != adv.PHASE_AMBIGUOUS:
        return False
    return ambiguity_certificate(state.graph, n).kind != CERT_NONE


def adversary_stress(
    n: int,
    depth: int,
    exhaustive: bool = True,
    samples: int = 100_000,
    seed: int = 0,
) -> StressReport:
    """Feed query sequences to fresh adversaries and audit ambiguity.

    Every prefix of length <= n+1 must leave the adversary uncommitted
    with a non-none certificate. Exhaustive mode walks all ordered
    sequences over the unordered position pairs up to `depth`; sampled
    mode draws `samples` random sequences of length `depth` instead.
    """
    pairs = _all_pairs(n)
    report = StressReport(
        n=n, depth=depth, mode="exhaustive" if exhaustive else "sampled"
    )

    if exhaustive:

        def walk(state: adv.AdversaryState, prefix: list[tuple[int, int]]) -> None:
            for pair in pairs:
                _, nxt = adv.respond(state, *pair)
                prefix.append(pair)
                report.sequences_checked += 1
                if len(prefix) <= n + 1 and not _check_stress_state(nxt, n):
                    report.violations.append(list(prefix))
                if len(prefix) < depth:
                    walk(nxt, prefix)
                prefix.pop()

        walk(adv.new_adversary(n), [])
        return report

    rng = random.Random(seed)
    for _ in range(samples):
        state = adv.new_adversary(n)
        prefix: list[tuple[int, int]] = []
        for _ in range(depth):
            pair = pairs[rng.randrange(len(pairs))]
            _, state = adv.respond(state, *pair)
            prefix.append(pair)
            if len(prefix) <= n + 1 and not _check_stress_state(state, n):
                report.violations.append(list(prefix))
        report.sequences_checked += 1
    return report


def verify_transcript(t: Transcript, inst: Instance) -> bool:
    """Replay a transcript against an instance.

    True iff every recorded answer matches the oracle and the verdict
    matches the output's actual correctness on this instance.
    """
    if t.n != inst.n:
        return False
    for q in t.queries:
        try:
            if oracle_answer(inst, q.i, q.j) != q.answer:
                return False
        except InvalidQueryError:
            return False
    if t.output is None:
        return t.verdict == VERDICT_UNRESOLVED
    pos = t.output.position
    if not (0 <= pos < 2 * inst.n):
        return False
    if t.output.value is not None and t.output.value != inst.values[pos]:
        return False
    correct = pos in inst.majority_positions
    return t.verdict == (VERDICT_CORRECT if correct else VERDICT_WRONG)
