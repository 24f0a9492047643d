"""Synthetic behavioral datasets.

Two generators: a trend dataset with pinned first/last-trial favorable
counts (17/40 rising to 27/40) used as the bundled reference data, and a
Bernoulli simulator from a logistic learning curve used for estimator
recovery checks.
"""

from __future__ import annotations

import math
import random

from .analysis import TrialRecord
from .bundle import Bundle
from .grid import State, neighbors
from .search import bfs_oracle
from .session import SCORED_TRIALS, schedule_trials

PARTICIPANTS = 40
FIRST_TRIAL_FAVORABLE = 17   # 42.5% of 40
LAST_TRIAL_FAVORABLE = 27    # 67.5% of 40


def favorable_counts(trials: int = SCORED_TRIALS) -> list[int]:
    """Per-trial favorable counts, linear from 17 to 27 inclusive."""
    lo, hi = FIRST_TRIAL_FAVORABLE, LAST_TRIAL_FAVORABLE
    return [
        int(math.floor(lo + (hi - lo) * (t - 1) / (trials - 1) + 0.5))
        for t in range(1, trials + 1)
    ]


def make_trend_dataset(bundle: Bundle, seed: int = 7) -> list[TrialRecord]:
    """A full synthetic experiment: 40 participants x 12 scored trials.

    Each participant follows a real schedule sampled from the bundle. Which
    participants choose the favorable side at each trial is drawn so the
    per-trial favorable counts match `favorable_counts` exactly.
    """
    rng = random.Random(seed)
    counts = favorable_counts()
    participants = [f"p{i:02d}" for i in range(1, PARTICIPANTS + 1)]
    schedules = {
        p: [s for s in schedule_trials(bundle, seed + 1000 + i) if not s.practice]
        for i, p in enumerate(participants)
    }
    records: list[TrialRecord] = []
    for t in range(1, SCORED_TRIALS + 1):
        choosers = set(rng.sample(participants, counts[t - 1]))
        for p in participants:
            slot = schedules[p][t - 1]
            maze = bundle.by_id(slot.maze_id)
            fav_state = bundle.favorable[slot.maze_id]
            open_starts = neighbors(maze, maze.start)
            other = next(s for s in open_starts if s != fav_state)
            favorable = int(p in choosers)
            first_move = fav_state if favorable else other
            optimal = bfs_oracle(maze, maze.start, maze.goal)
            extra = rng.choice([0, 0, 0, 2, 4])
            records.append(TrialRecord(
                participant_id=p,
                trial_number=t,
                maze_id=slot.maze_id,
                first_move=first_move,
                favorable=favorable,
                path_steps=optimal + extra,
                planning_ms=rng.randint(2_000, 45_000),
                total_ms=rng.randint(50_000, 110_000),
            ))
    return records


def simulate_learning_outcomes(
    intercept: float, slope: float, participants: int, trials: int, seed: int
) -> tuple[list[list[float]], list[int]]:
    """Design matrix and 0/1 outcomes from logit(p) = intercept + slope*trial."""
    rng = random.Random(seed)
    design: list[list[float]] = []
    outcomes: list[int] = []
    for _ in range(participants):
        for t in range(1, trials + 1):
            p = 1.0 / (1.0 + math.exp(-(intercept + slope * t)))
            design.append([1.0, float(t)])
            outcomes.append(1 if rng.random() < p else 0)
    return design, outcomes
