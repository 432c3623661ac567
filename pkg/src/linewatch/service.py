"""Live monitoring sessions over HTTP.

A session walks one detection run interactively: the operator asks which
line to sample next, reports each unit's pass/fail outcome, and watches both
W statistics against the control bounds fixed for the configured horizon.
Alarm status is decided only at the horizon; interim bound crossings are
surfaced as a non-inferential flag.

Sessions live in an in-memory store; an optional append-only JSONL journal
replays them across restarts. Mutations on one session are serialized;
distinct sessions are independent.
"""

from __future__ import annotations

import json
import math
import secrets
import threading
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np
from fastapi import FastAPI
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.requests import Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .bounds import ControlBounds, h0_control_bounds
from .model import DetectionConfig
from .policy import LatticeState, sampling_probability

__all__ = ["SessionManager", "ServiceError", "create_app", "app"]


class ServiceError(Exception):
    def __init__(self, status: int, code: str, message: str):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message


@dataclass
class Recommendation:
    line: int
    pi1: float | None  # None while a line is still unsampled (blocked phase)


@dataclass
class Session:
    id: str
    config: DetectionConfig
    bounds: ControlBounds
    seed: int
    rng: np.random.Generator
    n1: int = 0
    s1: int = 0
    n2: int = 0
    s2: int = 0
    # one record per unit: (line, outcome, w1-after, w2-after); the W values
    # are recorded here so clients can plot trajectories without ever
    # recomputing statistics
    history: list[tuple[int, int, float, float]] = field(default_factory=list)
    pending: Recommendation | None = None
    status: str = "active"
    followed_policy: bool = True
    lock: threading.Lock = field(default_factory=threading.Lock)

    @property
    def m(self) -> int:
        return self.n1 + self.n2

    def w_values(self) -> tuple[float, float]:
        c = self.config.coefficients()
        return self.s1 * c.a + self.n1 * c.b, self.s2 * c.a + self.n2 * c.b

    def outside_bounds(self) -> bool:
        w1, w2 = self.w_values()
        b = self.bounds
        return bool(
            (w1 <= b.lcb) or (w1 >= b.ucb) or (w2 <= b.lcb) or (w2 >= b.ucb)
        )


def _session_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))


class SessionManager:
    """Owns the session store, the recommendation draw, and the journal."""

    def __init__(self, journal_path: str | Path | None = None):
        self._sessions: dict[str, Session] = {}
        self._store_lock = threading.Lock()
        self._journal_path = Path(journal_path) if journal_path else None
        self._journal_lock = threading.Lock()
        if self._journal_path is not None and self._journal_path.exists():
            self._replay_journal()

    # -- store ------------------------------------------------------------

    def get(self, session_id: str) -> Session:
        with self._store_lock:
            session = self._sessions.get(session_id)
        if session is None:
            raise ServiceError(404, "not_found", f"no session {session_id!r}")
        return session

    def _journal(self, record: dict) -> None:
        if self._journal_path is None:
            return
        with self._journal_lock:
            with open(self._journal_path, "a", encoding="utf-8") as fh:
                fh.write(json.dumps(record) + "\n")

    def _replay_journal(self) -> None:
        path = self._journal_path
        self._journal_path = None  # suppress re-writes during replay
        try:
            with open(path, "r", encoding="utf-8") as fh:
                for raw in fh:
                    raw = raw.strip()
                    if not raw:
                        continue
                    record = json.loads(raw)
                    if record["event"] == "create":
                        self.create_session(
                            DetectionConfig.from_dict(record["config"]),
                            seed=record["seed"],
                            session_id=record["id"],
                        )
                    elif record["event"] == "outcome":
                        self.record_outcome(
                            record["id"], record["line"], record["outcome"]
                        )
        finally:
            self._journal_path = path

    # -- protocol ----------------------------------------------------------

    def create_session(
        self,
        config: DetectionConfig,
        seed: int | None = None,
        session_id: str | None = None,
    ) -> Session:
        if config.k != 2:
            raise ServiceError(400, "validation", "sessions support exactly 2 lines")
        if seed is None:
            seed = secrets.randbits(32)
        session = Session(
            id=session_id or secrets.token_hex(8),
            config=config,
            bounds=h0_control_bounds(config),
            seed=seed,
            rng=_session_rng(seed),
        )
        session.pending = self._next_recommendation(session)
        with self._store_lock:
            self._sessions[session.id] = session
        self._journal(
            {
                "event": "create",
                "id": session.id,
                "seed": seed,
                "config": {
                    "theta0": config.theta0,
                    "theta_star": config.theta_star,
                    "gamma": config.gamma,
                    "n": config.n,
                    "alpha": config.alpha,
                    "k": config.k,
                },
            }
        )
        return session

    def _next_recommendation(self, session: Session) -> Recommendation | None:
        if session.m >= session.config.n:
            return None
        # Until both lines hold at least one unit the adaptive rule is not
        # defined; recommend the unsampled line deterministically (the
        # blocked first pair, generalized to survive operator overrides).
        if session.n1 == 0:
            return Recommendation(line=1, pi1=None)
        if session.n2 == 0:
            return Recommendation(line=2, pi1=None)
        state = LatticeState(session.n1, session.s1, session.s2, session.m)
        dec = sampling_probability(state, session.config.gamma, session.config.coefficients())
        line = 1 if session.rng.random() < dec.pi1 else 2
        return Recommendation(line=line, pi1=dec.pi1)

    def record_outcome(self, session_id: str, line: int, outcome: int) -> Session:
        session = self.get(session_id)
        with session.lock:
            if session.status != "active":
                raise ServiceError(
                    409, "conflict",
                    f"session is {session.status}; no further outcomes accepted",
                )
            if line not in (1, 2):
                raise ServiceError(400, "validation", f"line must be 1 or 2, got {line!r}")
            if outcome not in (0, 1):
                raise ServiceError(
                    400, "validation", f"outcome must be 0 or 1, got {outcome!r}"
                )
            if session.pending is not None and line != session.pending.line:
                session.followed_policy = False
            if line == 1:
                session.n1 += 1
                session.s1 += outcome
            else:
                session.n2 += 1
                session.s2 += outcome
            w1, w2 = session.w_values()
            session.history.append((line, outcome, w1, w2))
            if session.m >= session.config.n:
                session.pending = None
                session.status = "alarmed" if session.outside_bounds() else "completed"
            else:
                session.pending = self._next_recommendation(session)
        self._journal(
            {"event": "outcome", "id": session_id, "line": line, "outcome": outcome}
        )
        return session

    def preview(self, session_id: str) -> dict:
        """Next-step sampling probability under both hypothetical outcomes
        of the pending unit; consumes no randomness and mutates nothing."""
        session = self.get(session_id)
        with session.lock:
            if session.pending is None:
                return {"pending": None, "if_outcome": None}
            line = session.pending.line
            branches = {}
            for outcome in (0, 1):
                n1 = session.n1 + (line == 1)
                s1 = session.s1 + (outcome if line == 1 else 0)
                n2 = session.n2 + (line == 2)
                s2 = session.s2 + (outcome if line == 2 else 0)
                if n1 + n2 >= session.config.n:
                    branches[str(outcome)] = None
                elif n1 == 0 or n2 == 0:
                    branches[str(outcome)] = {"pi1": None}
                else:
                    state = LatticeState(n1, s1, s2, n1 + n2)
                    dec = sampling_probability(
                        state, session.config.gamma, session.config.coefficients()
                    )
                    branches[str(outcome)] = {"pi1": dec.pi1}
            return {
                "pending": _recommendation_json(session.pending),
                "if_outcome": branches,
            }


# ---------------------------------------------------------------------------
# Wire format
# ---------------------------------------------------------------------------


def _bound_json(value: float, sign: str) -> float | str:
    return f"{sign}inf" if math.isinf(value) else value


def _bounds_json(b: ControlBounds) -> dict:
    return {
        "lcb": _bound_json(b.lcb, "-"),
        "ucb": _bound_json(b.ucb, "+"),
        "l1": b.l1,
        "l2": b.l2,
    }


def _recommendation_json(rec: Recommendation | None) -> dict | None:
    if rec is None:
        return None
    return {"line": rec.line, "pi1": rec.pi1}


def _state_json(session: Session) -> dict:
    w1, w2 = session.w_values()
    return {
        "m": session.m,
        "n1": session.n1,
        "s1": session.s1,
        "n2": session.n2,
        "s2": session.s2,
        "w1": w1,
        "w2": w2,
    }


def _snapshot(session: Session, include_history: bool) -> dict:
    body = {
        "id": session.id,
        "status": session.status,
        "followed_policy": session.followed_policy,
        "interim_excursion": session.status == "active" and session.outside_bounds(),
        "state": _state_json(session),
        "bounds": _bounds_json(session.bounds),
        "recommendation": _recommendation_json(session.pending),
        "config": {
            "theta0": session.config.theta0,
            "theta_star": session.config.theta_star,
            "gamma": session.config.gamma,
            "n": session.config.n,
            "alpha": session.config.alpha,
        },
    }
    if include_history:
        body["history"] = [
            {"line": line, "outcome": outcome, "w1": w1, "w2": w2}
            for line, outcome, w1, w2 in session.history
        ]
    return body


class CreateSessionBody(BaseModel):
    theta0: float
    theta_star: float
    gamma: float
    n: int
    alpha: float = 0.0027
    seed: int | None = None


class OutcomeBody(BaseModel):
    line: int
    outcome: int


def create_app(journal_path: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="linewatch session service")
    # the operator console is served from its own origin
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    manager = SessionManager(journal_path=journal_path)
    app.state.manager = manager

    @app.exception_handler(ServiceError)
    async def service_error(_req: Request, exc: ServiceError) -> JSONResponse:
        return JSONResponse(
            status_code=exc.status, content={"error": exc.code, "message": exc.message}
        )

    @app.exception_handler(RequestValidationError)
    async def body_error(_req: Request, exc: RequestValidationError) -> JSONResponse:
        return JSONResponse(
            status_code=400, content={"error": "validation", "message": str(exc)}
        )

    @app.get("/healthz")
    async def healthz() -> dict:
        return {"status": "ok"}

    @app.post("/sessions", status_code=201)
    async def create_session(body: CreateSessionBody) -> dict:
        try:
            config = DetectionConfig(
                theta0=body.theta0,
                theta_star=body.theta_star,
                gamma=body.gamma,
                n=body.n,
                alpha=body.alpha,
            )
        except ValueError as exc:
            raise ServiceError(400, "validation", str(exc))
        session = manager.create_session(config, seed=body.seed)
        return _snapshot(session, include_history=False)

    @app.post("/sessions/{session_id}/outcomes")
    async def record_outcome(session_id: str, body: OutcomeBody) -> dict:
        session = manager.record_outcome(session_id, body.line, body.outcome)
        return {
            "state": _state_json(session),
            "recommendation": _recommendation_json(session.pending),
            "status": session.status,
            "followed_policy": session.followed_policy,
            "interim_excursion": session.status == "active" and session.outside_bounds(),
        }

    @app.get("/sessions/{session_id}")
    async def session_status(session_id: str) -> dict:
        return _snapshot(manager.get(session_id), include_history=True)

    @app.get("/sessions/{session_id}/preview")
    async def preview(session_id: str) -> dict:
        return manager.preview(session_id)

    return app


app = create_app()
