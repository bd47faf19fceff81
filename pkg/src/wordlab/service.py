"""Session service for assisting live play over HTTP.

A session tracks one real game from the client's side: the strategy
preset, every (guess, response) pair the player has reported, the
surviving candidates, and the suggested next guess.  Responses come
from the player's actual game, so the service never knows the answer —
it only folds feedback into the candidate set.

State lives in memory; an optional append-only journal (one JSON line
per event) lets a restarted service replay its sessions.
"""

from __future__ import annotations

import json
import secrets
import threading
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Any

from fastapi import FastAPI
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.requests import Request
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from wordlab.game import (
    CandidateSet,
    ContradictionError,
    GameConfig,
    Response,
    default_config,
    filter_candidates,
)
from wordlab.partition import MODES, partition_entropies, partition_set
from wordlab.scoring import compute_collocation_stats, score_words
from wordlab.strategies import (
    StrategySpec,
    first_guess,
    next_guess,
    preset_names,
    resolve_preset,
)

HISTORY_CAP = 30
DEFAULT_CANDIDATE_LIMIT = 10


class ApiError(Exception):
    """Error carrying the HTTP status and the JSON {code, message} body."""

    def __init__(self, status: int, code: str, message: str):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message


def _unknown_session(session_id: str) -> ApiError:
    return ApiError(404, "unknown_session", f"no session {session_id!r}")


@dataclass
class SessionState:
    id: str
    spec: StrategySpec
    seed: int
    created: str
    updated: str
    history: list[tuple[str, str]] = field(default_factory=list)
    candidates: CandidateSet = ()
    suggestion: str | None = None
    solved: bool = False
    lock: threading.Lock = field(default_factory=threading.Lock)


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


class SessionStore:
    """All live sessions plus the journal they are replayed from."""

    def __init__(self, config: GameConfig, journal_path: str | Path | None = None):
        self.config = config
        self.sessions: dict[str, SessionState] = {}
        self._registry_lock = threading.Lock()
        self._journal_lock = threading.Lock()
        self.journal_path = Path(journal_path) if journal_path else None
        if self.journal_path and self.journal_path.exists():
            self._replay()

    # -- journal ---------------------------------------------------------

    def _journal(self, event: dict[str, Any]) -> None:
        if self.journal_path is None:
            return
        with self._journal_lock:
            with self.journal_path.open("a") as sink:
                sink.write(json.dumps(event) + "\n")

    def _replay(self) -> None:
        for line_no, line in enumerate(self.journal_path.read_text().splitlines(), 1):
            if not line.strip():
                continue
            try:
                event = json.loads(line)
                kind = event["event"]
                if kind == "create":
                    self.create(
                        event["strategy"],
                        seed=event["seed"],
                        session_id=event["id"],
                        timestamp=event["ts"],
                        journal=False,
                    )
                elif kind == "feedback":
                    self.feedback(
                        event["id"], event["guess"], event["response"],
                        timestamp=event["ts"], journal=False,
                    )
                elif kind == "rollback":
                    self.rollback(event["id"], timestamp=event["ts"], journal=False)
                elif kind == "delete":
                    self.delete(event["id"], journal=False)
                else:
                    raise KeyError(kind)
            except (KeyError, ValueError, ApiError) as exc:
                raise ValueError(
                    f"corrupt journal {self.journal_path} line {line_no}: {exc}"
                ) from exc

    # -- lookups ---------------------------------------------------------

    def get(self, session_id: str) -> SessionState:
        with self._registry_lock:
            session = self.sessions.get(session_id)
        if session is None:
            raise _unknown_session(session_id)
        return session

    # -- mutations -------------------------------------------------------

    def create(
        self,
        strategy: str,
        seed: int | None = None,
        session_id: str | None = None,
        timestamp: str | None = None,
        journal: bool = True,
    ) -> SessionState:
        if seed is None:
            seed = secrets.randbits(32)
        try:
            spec = resolve_preset(strategy, seed=seed)
        except ValueError:
            raise ApiError(404, "unknown_strategy", f"no strategy preset {strategy!r}")
        now = timestamp or _now()
        session = SessionState(
            id=session_id or secrets.token_hex(8),
            spec=spec,
            seed=seed,
            created=now,
            updated=now,
            candidates=self.config.candidate_set(),
            suggestion=first_guess(spec, self.config),
        )
        with self._registry_lock:
            self.sessions[session.id] = session
        if journal:
            self._journal({
                "event": "create", "id": session.id, "strategy": strategy,
                "seed": seed, "ts": now,
            })
        return session

    def feedback(
        self,
        session_id: str,
        guess: str,
        response_text: str,
        timestamp: str | None = None,
        journal: bool = True,
    ) -> SessionState:
        session = self.get(session_id)
        guess = _checked_guess(guess, self.config)
        response = _checked_response(response_text, self.config)
        with session.lock:
            if session.solved:
                raise ApiError(409, "session_solved", "session is already solved")
            if len(session.history) >= HISTORY_CAP:
                raise ApiError(409, "history_limit", "session history is full")
            try:
                reduced = filter_candidates(session.candidates, guess, response)
            except ContradictionError:
                raise ApiError(
                    409, "contradictory_feedback",
                    "no candidate consistent with history",
                ) from None
            session.history.append((guess, str(response)))
            session.candidates = reduced
            if response.is_perfect:
                session.solved = True
                session.suggestion = guess
            else:
                session.suggestion = next_guess(session.spec, reduced, self.config)
            session.updated = timestamp or _now()
        if journal:
            self._journal({
                "event": "feedback", "id": session_id, "guess": guess,
                "response": str(response), "ts": session.updated,
            })
        return session

    def rollback(
        self,
        session_id: str,
        timestamp: str | None = None,
        journal: bool = True,
    ) -> SessionState:
        session = self.get(session_id)
        with session.lock:
            if not session.history:
                raise ApiError(409, "nothing_to_rollback", "session has no feedback")
            session.history.pop()
            candidates = self.config.candidate_set()
            for past_guess, past_response in session.history:
                candidates = filter_candidates(
                    candidates, past_guess, Response.from_string(past_response)
                )
            session.candidates = candidates
            session.solved = bool(
                session.history
                and Response.from_string(session.history[-1][1]).is_perfect
            )
            if session.solved:
                session.suggestion = session.history[-1][0]
            elif session.history:
                session.suggestion = next_guess(session.spec, candidates, self.config)
            else:
                session.suggestion = first_guess(session.spec, self.config)
            session.updated = timestamp or _now()
        if journal:
            self._journal({
                "event": "rollback", "id": session_id, "ts": session.updated,
            })
        return session

    def delete(self, session_id: str, journal: bool = True) -> None:
        with self._registry_lock:
            if session_id not in self.sessions:
                raise _unknown_session(session_id)
            del self.sessions[session_id]
        if journal:
            self._journal({"event": "delete", "id": session_id})


def _checked_guess(guess: str, config: GameConfig) -> str:
    word = guess.strip().lower()
    if len(word) != config.word_length or any(
        ch not in config.alphabet for ch in word
    ):
        raise ApiError(
            400, "bad_guess",
            f"guess must be {config.word_length} letters over {config.alphabet!r}",
        )
    return word


def _checked_response(text: str, config: GameConfig) -> Response:
    try:
        response = Response.from_string(text.strip())
    except ValueError as exc:
        raise ApiError(400, "bad_response", str(exc))
    if len(response) != config.word_length:
        raise ApiError(
            400, "bad_response",
            f"response must have {config.word_length} digits",
        )
    return response


def _snapshot(session: SessionState) -> dict[str, Any]:
    return {
        "id": session.id,
        "strategy": session.spec.preset_name or session.spec.label,
        "seed": session.seed,
        "created": session.created,
        "updated": session.updated,
        "history": [
            {"guess": g, "response": r} for g, r in session.history
        ],
        "candidate_count": len(session.candidates),
        "suggestion": session.suggestion,
        "solved": session.solved,
    }


def _ranked_candidates(
    spec: StrategySpec, config: GameConfig, candidates: CandidateSet
) -> list[dict[str, Any]]:
    """Candidates in the order the strategy prefers them, with scores."""
    words = list(candidates)
    if spec.family == "collocation":
        stats = compute_collocation_stats(words, config, spec.renormalize)
        scores = score_words(words, stats, spec.scorer)
        descending = spec.scorer.direction == "argmax"
    elif spec.family == "partition-search":
        scores = list(partition_entropies(words, words, spec.mode, config))
        descending = spec.objective in ("min-entropy", "max-kld")
    else:
        return [{"word": w, "score": None} for w in words]
    sign = -1.0 if descending else 1.0
    order = sorted(range(len(words)), key=lambda i: (sign * scores[i], i))
    return [{"word": words[i], "score": float(scores[i])} for i in order]


def _group_key_text(key: Any) -> str:
    if isinstance(key, Response):
        return str(key)
    greens, yellows = key
    return f"{greens}g{yellows}y"


class _CreateSessionBody(BaseModel):
    strategy: str
    config: str | None = None
    seed: int | None = None


class _FeedbackBody(BaseModel):
    guess: str
    response: str


def create_app(
    config: GameConfig | None = None,
    journal_path: str | Path | None = None,
    static_dir: str | Path | None = None,
) -> FastAPI:
    """Build the HTTP app around one game configuration."""
    if config is None:
        config = default_config()
    store = SessionStore(config, journal_path)
    app = FastAPI(title="wordlab assistant")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    app.state.store = store

    @app.exception_handler(ApiError)
    async def _api_error(_req: Request, exc: ApiError) -> JSONResponse:
        return JSONResponse(
            status_code=exc.status,
            content={"code": exc.code, "message": exc.message},
        )

    @app.exception_handler(RequestValidationError)
    async def _validation_error(
        _req: Request, exc: RequestValidationError
    ) -> JSONResponse:
        return JSONResponse(
            status_code=400,
            content={"code": "bad_request", "message": str(exc.errors())},
        )

    @app.get("/health")
    def health() -> dict[str, str]:
        return {"status": "ok", "config_digest": config.digest}

    @app.get("/strategies")
    def strategies() -> dict[str, Any]:
        return {
            "strategies": [
                {"name": name, "label": resolve_preset(name).label}
                for name in preset_names()
            ]
        }

    @app.post("/sessions")
    def create_session(body: _CreateSessionBody) -> dict[str, Any]:
        if body.config is not None and body.config != "default":
            raise ApiError(
                404, "unknown_config", f"no configuration {body.config!r}"
            )
        session = store.create(body.strategy, seed=body.seed)
        return _snapshot(session)

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str) -> dict[str, Any]:
        session = store.get(session_id)
        with session.lock:
            return _snapshot(session)

    @app.delete("/sessions/{session_id}")
    def delete_session(session_id: str) -> dict[str, Any]:
        store.delete(session_id)
        return {"deleted": session_id}

    @app.post("/sessions/{session_id}/feedback")
    def submit_feedback(session_id: str, body: _FeedbackBody) -> dict[str, Any]:
        session = store.feedback(session_id, body.guess, body.response)
        with session.lock:
            return _snapshot(session)

    @app.post("/sessions/{session_id}/rollback")
    def rollback(session_id: str) -> dict[str, Any]:
        session = store.rollback(session_id)
        with session.lock:
            return _snapshot(session)

    @app.get("/sessions/{session_id}/candidates")
    def candidates(
        session_id: str, limit: int = DEFAULT_CANDIDATE_LIMIT
    ) -> dict[str, Any]:
        if limit < 1:
            raise ApiError(400, "bad_limit", "limit must be at least 1")
        session = store.get(session_id)
        with session.lock:
            pool = session.candidates
            spec = session.spec
        ranked = _ranked_candidates(spec, config, pool)
        return {"total": len(pool), "candidates": ranked[:limit]}

    @app.get("/sessions/{session_id}/preview")
    def preview(
        session_id: str, guess: str, mode: str = "by-pattern"
    ) -> dict[str, Any]:
        if mode not in MODES:
            raise ApiError(400, "bad_mode", f"mode must be one of {MODES}")
        word = _checked_guess(guess, config)
        session = store.get(session_id)
        with session.lock:
            pool = session.candidates
        partition = partition_set(pool, word, mode)
        groups = sorted(
            (
                {"key": _group_key_text(key), "size": len(members)}
                for key, members in partition.groups.items()
            ),
            key=lambda g: (-g["size"], g["key"]),
        )
        entropy = float(partition_entropies([word], pool, mode, config)[0])
        return {
            "guess": word,
            "mode": mode,
            "total": partition.total,
            "group_count": len(groups),
            "entropy": entropy,
            "groups": groups,
        }

    if static_dir is not None and Path(static_dir).is_dir():
        app.mount("/app", StaticFiles(directory=static_dir, html=True), name="app")

    return app
