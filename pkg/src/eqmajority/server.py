"""Session service: interactive adversary games over a JSON request/response API.

Three session modes:
  * human_vs_adversary — the caller plays the algorithm, submitting queries
    against the machine adversary and finally an output position.
  * human_as_adversary — the machine plays a strategy; the caller answers
    its queries. Answers contradicting earlier ones are rejected with the
    conflicting pair; answers consistent with no valid instance are
    rejected as unrealizable.
  * watch_solver — a strategy plays the machine adversary to completion at
    creation time; the finished transcript is served for replay.

Sessions live in memory with an idle expiry and are serialized per
session: concurrent actions on one session queue on its lock. The
transcript document is the durable record; an optional directory receives
one JSON file per finished game.
"""

from __future__ import annotations

import json
import os
import threading
import time
import uuid
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel

from . import adversary as adv
from .arena import MODE_ADVERSARY, run_vs_adversary
from .graphs import ambiguity_certificate
from .model import (
    ClaimedOutput,
    ContradictionError,
    EQUAL,
    KnowledgeState,
    NOT_EQUAL,
    QueryRecord,
    Transcript,
    VERDICT_CORRECT,
    VERDICT_UNRESOLVED,
    VERDICT_WRONG,
    apply_answer,
    canonical_instance,
    feasible_majority_sets,
    knowledge_from_answers,
)
from .strategies import Output, Query, make_strategy

MODE_HUMAN_VS_ADVERSARY = "human_vs_adversary"
MODE_HUMAN_AS_ADVERSARY = "human_as_adversary"
MODE_WATCH_SOLVER = "watch_solver"
SESSION_MODES = (MODE_HUMAN_VS_ADVERSARY, MODE_HUMAN_AS_ADVERSARY, MODE_WATCH_SOLVER)

TRANSCRIPT_MODE_HUMAN_ADVERSARY = "human_adversary"

DEFAULT_IDLE_EXPIRY = 30 * 60.0
FEASIBLE_COUNT_LIMIT = 4


class CreateSessionRequest(BaseModel):
    n: int
    mode: str
    strategy: str = "optimal"
    seed: int = 0
    cap: int = 32
    budget: Optional[int] = None


class QueryRequest(BaseModel):
    i: int
    j: int


class AnswerRequest(BaseModel):
    answer: str


class OutputRequest(BaseModel):
    position: int


@dataclass
class Session:
    id: str
    n: int
    mode: str
    last_touch: float
    lock: threading.Lock = field(default_factory=threading.Lock)
    # human_vs_adversary
    adversary: Optional[adv.AdversaryState] = None
    queries: list[QueryRecord] = field(default_factory=list)
    # human_as_adversary
    strategy: Optional[object] = None
    pending_query: Optional[tuple[int, int]] = None
    # finished game
    transcript: Optional[Transcript] = None
    witness: Optional[list[int]] = None

    @property
    def finished(self) -> bool:
        return self.transcript is not None


class SessionStore:
    def __init__(self, idle_expiry: float = DEFAULT_IDLE_EXPIRY, clock=time.monotonic):
        self.sessions: dict[str, Session] = {}
        self.idle_expiry = idle_expiry
        self.clock = clock
        self.lock = threading.Lock()

    def add(self, session: Session) -> None:
        with self.lock:
            self._expire()
            self.sessions[session.id] = session

    def get(self, session_id: str) -> Session:
        with self.lock:
            self._expire()
            session = self.sessions.get(session_id)
            if session is None:
                raise HTTPException(status_code=404, detail="unknown session")
            session.last_touch = self.clock()
            return session

    def _expire(self) -> None:
        now = self.clock()
        dead = [
            sid
            for sid, s in self.sessions.items()
            if now - s.last_touch > self.idle_expiry
        ]
        for sid in dead:
            del self.sessions[sid]


def _adversary_snapshot(session: Session) -> dict:
    state = session.adversary
    doc = state.to_doc()
    knowledge = knowledge_from_answers(session.n, session.queries)
    feasible_count = None
    if session.n <= FEASIBLE_COUNT_LIMIT:
        feasible_count = len(feasible_majority_sets(knowledge))
    doc.update(
        {
            "comparisons": len(session.queries),
            "budget": session.n + 2,
            "remaining": session.n + 2 - len(session.queries),
            "certificate": ambiguity_certificate(state.graph, session.n).kind,
            "feasible_count": feasible_count,
        }
    )
    return doc


def create_app(
    idle_expiry: float = DEFAULT_IDLE_EXPIRY,
    transcript_dir: Optional[str] = None,
    clock=time.monotonic,
) -> FastAPI:
    app = FastAPI(title="eqmajority sessions")
    store = SessionStore(idle_expiry=idle_expiry, clock=clock)
    app.state.store = store

    def persist(session: Session) -> None:
        if transcript_dir is None or session.transcript is None:
            return
        path = Path(transcript_dir)
        path.mkdir(parents=True, exist_ok=True)
        doc = session.transcript.to_doc()
        (path / f"{session.id}.json").write_text(json.dumps(doc, indent=2))

    @app.get("/health")
    def health():
        return {"status": "ok"}

    @app.post("/sessions")
    def create_session(req: CreateSessionRequest):
        if req.n < 2:
            raise HTTPException(status_code=400, detail="n must be >= 2")
        if req.mode not in SESSION_MODES:
            raise HTTPException(
                status_code=400, detail=f"mode must be one of {SESSION_MODES}"
            )
        session = Session(
            id=uuid.uuid4().hex, n=req.n, mode=req.mode, last_touch=store.clock()
        )
        body: dict = {"id": session.id, "n": req.n, "mode": req.mode}
        if req.mode == MODE_HUMAN_VS_ADVERSARY:
            session.adversary = adv.new_adversary(req.n)
            body["snapshot"] = _adversary_snapshot(session)
        elif req.mode == MODE_HUMAN_AS_ADVERSARY:
            session.strategy = make_strategy(
                req.strategy, req.n, seed=req.seed, cap=req.cap
            )
            move = session.strategy.decide(session.queries)
            assert isinstance(move, Query), "strategies query before any answer"
            session.pending_query = (move.i, move.j)
            body["pending_query"] = list(session.pending_query)
        else:
            strategy = make_strategy(req.strategy, req.n, seed=req.seed, cap=req.cap)
            report = run_vs_adversary(strategy, req.n, budget=req.budget)
            session.transcript = report.transcript
            if report.witness is not None:
                session.witness = list(report.witness.values)
            body["transcript"] = session.transcript.to_doc()
            body["witness"] = session.witness
            persist(session)
        store.add(session)
        return body

    @app.post("/sessions/{session_id}/query")
    def submit_query(session_id: str, req: QueryRequest):
        session = store.get(session_id)
        with session.lock:
            if session.mode != MODE_HUMAN_VS_ADVERSARY:
                raise HTTPException(
                    status_code=409, detail="session does not accept queries"
                )
            if session.finished:
                raise HTTPException(status_code=409, detail="game already finished")
            try:
                answer, session.adversary = adv.respond(
                    session.adversary, req.i, req.j
                )
            except adv.InvalidQueryError as exc:
                raise HTTPException(status_code=400, detail=str(exc))
            session.queries.append(QueryRecord(i=req.i, j=req.j, answer=answer))
            return {
                "answer": answer,
                "comparisons": len(session.queries),
                "snapshot": _adversary_snapshot(session),
            }

    @app.post("/sessions/{session_id}/output")
    def submit_output(session_id: str, req: OutputRequest):
        session = store.get(session_id)
        with session.lock:
            if session.mode != MODE_HUMAN_VS_ADVERSARY:
                raise HTTPException(
                    status_code=409, detail="session does not accept outputs"
                )
            if session.finished:
                raise HTTPException(status_code=409, detail="game already finished")
            if not (0 <= req.position < 2 * session.n):
                raise HTTPException(status_code=400, detail="position out of range")
            transcript = Transcript(
                n=session.n,
                mode=MODE_ADVERSARY,
                queries=tuple(session.queries),
                output=ClaimedOutput(position=req.position, value=None),
                verdict=VERDICT_UNRESOLVED,
            )
            verdict = adv.defeat_check(session.adversary, transcript)
            session.transcript = Transcript(
                n=session.n,
                mode=MODE_ADVERSARY,
                queries=tuple(session.queries),
                output=transcript.output,
                verdict=verdict,
            )
            if verdict == VERDICT_WRONG:
                witness = adv.extract_witness(session.adversary, req.position)
                session.witness = list(witness.values)
            persist(session)
            return {
                "verdict": verdict,
                "witness": session.witness,
                "transcript": session.transcript.to_doc(),
            }

    @app.post("/sessions/{session_id}/answer")
    def submit_answer(session_id: str, req: AnswerRequest):
        session = store.get(session_id)
        with session.lock:
            if session.mode != MODE_HUMAN_AS_ADVERSARY:
                raise HTTPException(
                    status_code=409, detail="session does not accept answers"
                )
            if session.finished or session.pending_query is None:
                raise HTTPException(status_code=409, detail="no query is pending")
            if req.answer not in (EQUAL, NOT_EQUAL):
                raise HTTPException(
                    status_code=400,
                    detail=f"answer must be {EQUAL!r} or {NOT_EQUAL!r}",
                )
            i, j = session.pending_query
            record = QueryRecord(i=i, j=j, answer=req.answer)
            knowledge = knowledge_from_answers(session.n, session.queries)
            try:
                grown = apply_answer(knowledge, record)
            except ContradictionError as exc:
                raise HTTPException(
                    status_code=409,
                    detail={
                        "error": "inconsistent_answer",
                        "conflict": _find_conflict(session.queries, knowledge, exc),
                    },
                )
            if not feasible_majority_sets(grown):
                raise HTTPException(
                    status_code=409,
                    detail={
                        "error": "unrealizable_answer",
                        "conflict": None,
                    },
                )
            session.queries.append(record)
            move = session.strategy.decide(session.queries)
            if isinstance(move, Query):
                session.pending_query = (move.i, move.j)
                return {
                    "accepted": True,
                    "comparisons": len(session.queries),
                    "next_query": [move.i, move.j],
                }
            session.pending_query = None
            return _finish_human_adversary(session, move, grown)

    def _finish_human_adversary(session: Session, move: Output, knowledge) -> dict:
        feasible = feasible_majority_sets(knowledge)
        losing = [s for s in feasible if move.position not in s]
        verdict = VERDICT_WRONG if losing else VERDICT_CORRECT
        if losing:
            witness = canonical_instance(min(losing, key=sorted), session.n)
            session.witness = list(witness.values)
        session.transcript = Transcript(
            n=session.n,
            mode=TRANSCRIPT_MODE_HUMAN_ADVERSARY,
            queries=tuple(session.queries),
            output=ClaimedOutput(position=move.position, value=None),
            verdict=verdict,
        )
        persist(session)
        return {
            "accepted": True,
            "comparisons": len(session.queries),
            "solver_output": {"position": move.position},
            "verdict": verdict,
            "witness": session.witness,
            "transcript": session.transcript.to_doc(),
        }

    @app.get("/sessions/{session_id}/state")
    def get_state(session_id: str):
        session = store.get(session_id)
        with session.lock:
            body = {
                "id": session.id,
                "n": session.n,
                "mode": session.mode,
                "finished": session.finished,
                "comparisons": len(session.queries),
            }
            if session.mode == MODE_HUMAN_VS_ADVERSARY:
                body["snapshot"] = _adversary_snapshot(session)
            if session.mode == MODE_HUMAN_AS_ADVERSARY:
                body["pending_query"] = (
                    list(session.pending_query) if session.pending_query else None
                )
            if session.finished:
                body["transcript"] = session.transcript.to_doc()
                body["witness"] = session.witness
            return body

    @app.get("/sessions/{session_id}/transcript")
    def get_transcript(session_id: str):
        session = store.get(session_id)
        with session.lock:
            if session.transcript is not None:
                return session.transcript.to_doc()
            # in-progress games serialize with a null output
            mode = (
                MODE_ADVERSARY
                if session.mode == MODE_HUMAN_VS_ADVERSARY
                else TRANSCRIPT_MODE_HUMAN_ADVERSARY
            )
            return Transcript(
                n=session.n, mode=mode, queries=tuple(session.queries)
            ).to_doc()

    return app


def _find_conflict(
    history: list[QueryRecord], knowledge: KnowledgeState, exc: ContradictionError
) -> Optional[list[int]]:
    """The earliest recorded query whose answer the new one contradicts."""
    if exc.conflict is None:
        return None
    a, b = exc.conflict
    reps = knowledge.reps
    if reps[a] == reps[b]:
        # "not equal" rejected: the pair is linked by recorded equalities
        for q in history:
            if q.answer == EQUAL and reps[q.i] == reps[a]:
                return [q.i, q.j]
    else:
        # "equal" rejected: some recorded inequality spans the two classes
        for q in history:
            if q.answer == NOT_EQUAL and {reps[q.i], reps[q.j]} == {a, b}:
                return [q.i, q.j]
    return [a, b]
