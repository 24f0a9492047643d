"""HTTP session service hosting the browser experiment.

JSON API under /api; static UI assets (when present) served from the root.
Maze grids travel as lists of text-format row strings.
"""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, HTTPException
from fastapi.responses import PlainTextResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field

from .analysis import write_trials_csv
from .grid import State, grid_rows
from .session import PathError, SessionStore, TrialOrderError


class SessionRequest(BaseModel):
    participant_id: str = Field(min_length=1, max_length=64)


class TrialPost(BaseModel):
    sequence: int
    path: list[tuple[int, int]]
    planning_ms: int = 0
    total_ms: int = 0


def _schedule_payload(store: SessionStore, session) -> list[dict]:
    out = []
    for slot in session.schedule:
        maze = store.bundle.by_id(slot.maze_id)
        out.append({
            "sequence": slot.sequence,
            "maze_id": slot.maze_id,
            "practice": slot.practice,
            "trial_number": slot.trial_number,
            "grid": grid_rows(maze),
        })
    return out


def create_app(store: SessionStore, static_dir: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="maze navigation experiment")

    @app.get("/api/config")
    def get_config() -> dict:
        return {
            "planning_cap_ms": store.config.planning_cap_ms,
            "scored_trials": 12,
            "practice_trials": 2,
            "bonus_base": store.config.bonus_base,
            "bonus_per_step": store.config.bonus_per_step,
        }

    @app.post("/api/session")
    def create_session(req: SessionRequest) -> dict:
        session = store.create_session(req.participant_id)
        return {
            "session_id": session.session_id,
            "participant_id": session.participant_id,
            "schedule": _schedule_payload(store, session),
        }

    def _session_or_404(session_id: str):
        try:
            return store.get(session_id)
        except KeyError:
            raise HTTPException(status_code=404, detail="unknown session")

    @app.post("/api/session/{session_id}/trial")
    def post_trial(session_id: str, trial: TrialPost) -> dict:
        _session_or_404(session_id)
        path = [State(x, y) for x, y in trial.path]
        try:
            return store.submit_trial(
                session_id, trial.sequence, path, trial.planning_ms, trial.total_ms
            )
        except TrialOrderError as exc:
            raise HTTPException(status_code=409, detail=str(exc))
        except PathError as exc:
            raise HTTPException(status_code=422, detail=str(exc))

    @app.post("/api/session/{session_id}/complete")
    def complete(session_id: str) -> dict:
        _session_or_404(session_id)
        return store.complete_session(session_id)

    @app.get("/api/session/{session_id}/export", response_class=PlainTextResponse)
    def export(session_id: str) -> str:
        session = _session_or_404(session_id)
        return write_trials_csv(session.scored_records())

    if static_dir is not None and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="ui")

    return app
