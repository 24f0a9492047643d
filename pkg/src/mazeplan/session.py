"""Experiment sessions: trial scheduling, path checking, bonus, persistence.

A session walks one participant through 2 practice mazes followed by 12
scored trials, two mazes sampled from each of the 6 stimulus sets. Sessions
are persisted as append-only JSON-lines files (one per session) so a crash
loses at most the in-flight trial.
"""

from __future__ import annotations

import json
import random
import secrets
import threading
from dataclasses import dataclass, field
from pathlib import Path

from .analysis import TrialRecord
from .bundle import Bundle
from .grid import Maze, State, grid_rows
from .search import bfs_oracle

SETS_REQUIRED = 6
MAZES_PER_SET = 8
SAMPLED_PER_SET = 2
SCORED_TRIALS = SETS_REQUIRED * SAMPLED_PER_SET


class PathError(ValueError):
    """A submitted navigation path is illegal for its maze."""


class TrialOrderError(ValueError):
    """A trial arrived out of order or duplicated an existing one."""


@dataclass(frozen=True)
class ExperimentConfig:
    bundle_dir: str
    out_dir: str
    planning_cap_ms: int = 60_000
    bonus_base: int = 100
    bonus_per_step: int = 5
    rng_seed: int = 0

    def __post_init__(self) -> None:
        if self.planning_cap_ms <= 0:
            raise ValueError("planning_cap_ms must be positive")
        if self.bonus_base < 0 or self.bonus_per_step < 0:
            raise ValueError("bonus parameters must be non-negative")


@dataclass(frozen=True)
class ScheduledTrial:
    sequence: int                 # 1-based position in the full session
    maze_id: str
    practice: bool
    trial_number: int | None      # 1..12 for scored trials, None for practice


def schedule_trials(bundle: Bundle, seed: int) -> list[ScheduledTrial]:
    """Two mazes from each set, shuffled, with the practice pair up front.

    Sets and mazes are sorted by id before sampling, so the schedule depends
    only on the bundle contents and the seed, not on file listing order.
    """
    bundle.require_experiment_shape(SETS_REQUIRED, MAZES_PER_SET)
    rng = random.Random(seed)
    chosen: list[str] = []
    for set_id in sorted(bundle.sets):
        mazes = sorted(m.id for m in bundle.sets[set_id])
        chosen.extend(rng.sample(mazes, SAMPLED_PER_SET))
    rng.shuffle(chosen)

    schedule = [
        ScheduledTrial(sequence=i + 1, maze_id=m.id, practice=True, trial_number=None)
        for i, m in enumerate(sorted(bundle.practice, key=lambda m: m.id)[:2])
    ]
    for t, maze_id in enumerate(chosen, start=1):
        schedule.append(ScheduledTrial(
            sequence=len(schedule) + 1, maze_id=maze_id, practice=False, trial_number=t,
        ))
    return schedule


def validate_path(maze: Maze, path: list[State]) -> None:
    """Reject any path a legal keyboard walk could not have produced."""
    if len(path) < 2:
        raise PathError("path must contain at least one move")
    if path[0] != maze.start:
        raise PathError(f"path starts at {tuple(path[0])}, not the maze start")
    for prev, cur in zip(path, path[1:]):
        if abs(prev.x - cur.x) + abs(prev.y - cur.y) != 1:
            raise PathError(f"non-adjacent step {tuple(prev)} -> {tuple(cur)}")
        if not maze.is_open(cur):
            raise PathError(f"step into wall or out of bounds at {tuple(cur)}")
    if path[-1] != maze.goal:
        raise PathError("path does not end at the goal")


def trial_bonus(config: ExperimentConfig, steps: int, optimal: int) -> int:
    """Base points minus a penalty per step over optimal, floored at zero."""
    over = max(0, steps - optimal)
    return max(0, config.bonus_base - config.bonus_per_step * over)


@dataclass
class Session:
    session_id: str
    participant_id: str
    schedule: list[ScheduledTrial]
    records: list[dict] = field(default_factory=list)   # one per posted trial, in order
    status: str = "in_progress"

    def next_sequence(self) -> int | None:
        n = len(self.records) + 1
        return n if n <= len(self.schedule) else None

    def scored_records(self) -> list[TrialRecord]:
        out = []
        for rec, slot in zip(self.records, self.schedule):
            if slot.practice:
                continue
            out.append(TrialRecord(
                participant_id=self.participant_id,
                trial_number=slot.trial_number,
                maze_id=slot.maze_id,
                first_move=State(*rec["path"][1]),
                favorable=rec["favorable"],
                path_steps=len(rec["path"]) - 1,
                planning_ms=rec["planning_ms"],
                total_ms=rec["total_ms"],
            ))
        return out


class SessionStore:
    """All live sessions plus their append-only persistence.

    One lock per session serializes that session's appends; the bundle and
    config never change after startup.
    """

    def __init__(self, bundle: Bundle, config: ExperimentConfig,
                 favorable: dict[str, State]):
        self.bundle = bundle
        self.config = config
        self.favorable = favorable
        self.sessions: dict[str, Session] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._registry_lock = threading.Lock()
        self.optimal = {
            m.id: bfs_oracle(m, m.start, m.goal) for m in bundle.all_mazes()
        }
        self.sessions_dir = Path(config.out_dir) / "sessions"
        self.sessions_dir.mkdir(parents=True, exist_ok=True)
        self._restore()

    # -- persistence --------------------------------------------------------

    def _path(self, session_id: str) -> Path:
        return self.sessions_dir / f"{session_id}.jsonl"

    def _append(self, session_id: str, record: dict) -> None:
        with open(self._path(session_id), "a") as fh:
            fh.write(json.dumps(record) + "\n")
            fh.flush()

    def _restore(self) -> None:
        for path in sorted(self.sessions_dir.glob("*.jsonl")):
            session = None
            for line in path.read_text().splitlines():
                if not line.strip():
                    continue
                rec = json.loads(line)
                if rec["type"] == "session":
                    session = Session(
                        session_id=rec["session_id"],
                        participant_id=rec["participant_id"],
                        schedule=[ScheduledTrial(**s) for s in rec["schedule"]],
                    )
                elif rec["type"] == "trial" and session is not None:
                    session.records.append(rec["data"])
                elif rec["type"] == "complete" and session is not None:
                    session.status = "complete"
            if session is not None:
                self.sessions[session.session_id] = session
                self._locks[session.session_id] = threading.Lock()

    # -- API ----------------------------------------------------------------

    def create_session(self, participant_id: str) -> Session:
        session_id = secrets.token_hex(8)
        seed = self.config.rng_seed ^ int(session_id, 16)
        session = Session(
            session_id=session_id,
            participant_id=participant_id,
            schedule=schedule_trials(self.bundle, seed),
        )
        with self._registry_lock:
            self.sessions[session_id] = session
            self._locks[session_id] = threading.Lock()
        self._append(session_id, {
            "type": "session",
            "session_id": session_id,
            "participant_id": participant_id,
            "schedule": [vars(s) for s in session.schedule],
        })
        return session

    def get(self, session_id: str) -> Session:
        return self.sessions[session_id]

    def lock(self, session_id: str) -> threading.Lock:
        return self._locks[session_id]

    def submit_trial(self, session_id: str, sequence: int, path: list[State],
                     planning_ms: int, total_ms: int) -> dict:
        session = self.get(session_id)
        with self.lock(session_id):
            expected = session.next_sequence()
            if expected is None or sequence < expected:
                raise TrialOrderError(f"trial for sequence {sequence} already recorded")
            if sequence > expected:
                raise TrialOrderError(
                    f"out-of-order trial: got sequence {sequence}, expected {expected}"
                )
            slot = session.schedule[sequence - 1]
            maze = self.bundle.by_id(slot.maze_id)
            validate_path(maze, path)
            fav_state = self.favorable.get(slot.maze_id)
            favorable = int(fav_state is not None and path[1] == fav_state)
            data = {
                "sequence": sequence,
                "maze_id": slot.maze_id,
                "path": [[s.x, s.y] for s in path],
                "favorable": favorable,
                "planning_ms": planning_ms,
                "total_ms": total_ms,
            }
            session.records.append(data)
            self._append(session_id, {"type": "trial", "data": data})
            steps = len(path) - 1
            bonus = 0 if slot.practice else trial_bonus(
                self.config, steps, self.optimal[slot.maze_id]
            )
            return {"sequence": sequence, "steps": steps, "bonus": bonus,
                    "practice": slot.practice}

    def complete_session(self, session_id: str) -> dict:
        session = self.get(session_id)
        with self.lock(session_id):
            total = 0
            for rec, slot in zip(session.records, session.schedule):
                if slot.practice:
                    continue
                steps = len(rec["path"]) - 1
                total += trial_bonus(self.config, steps, self.optimal[slot.maze_id])
            session.status = "complete"
            self._append(session_id, {"type": "complete", "bonus": total})
            return {"status": "complete", "bonus": total,
                    "trials_recorded": len(session.records)}
