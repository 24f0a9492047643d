"""Subtask enumeration and selection.

A subtask is "reach one of the open cells adjacent to the start, then the
goal". Each candidate is scored by the total expected cost of planning and
executing both segments: moves taken plus states expanded by the planner.
The chosen subtask is the one with the highest combined reward, i.e. the
lowest step-plus-planning cost.
"""

from __future__ import annotations

import io
import csv
from dataclasses import dataclass, field

from .grid import Maze, State, neighbors
from .search import DETERMINISTIC, TieBreakPolicy, sample_results


class SubtaskError(ValueError):
    """The maze's start neighborhood does not form a usable subtask set."""


class _ZeroSegment:
    """Cost-free stand-in for the second segment when the subgoal is the goal."""

    reward = 0
    step_cost = 0
    visited_count = 0


_ZERO_SEGMENT = _ZeroSegment()


def half_label(maze: Maze, s: State) -> str:
    """Which half of the maze a cell lies in, relative to the start-goal axis.

    For endpoints on the main diagonal this is the positional rule: "upper"
    when x > y, "lower" when x < y. Endpoints on the anti-diagonal use the
    analogous split (x + y versus size - 1); any other geometry falls back
    to the main-diagonal rule. Cells on the axis itself are "diagonal".
    """
    n = maze.size
    on_main = maze.start.x == maze.start.y and maze.goal.x == maze.goal.y
    on_anti = (maze.start.x + maze.start.y == n - 1) and (maze.goal.x + maze.goal.y == n - 1)
    if on_anti and not on_main:
        key = (s.x + s.y) - (n - 1)
    else:
        key = s.x - s.y
    if key > 0:
        return "upper"
    if key < 0:
        return "lower"
    return "diagonal"


@dataclass(frozen=True)
class Subtask:
    """One decomposition choice, identified by its subgoal cell."""

    subgoal: State
    label: str


@dataclass(frozen=True)
class SubtaskEvaluation:
    """Cost accounting for one subtask: both segments summed.

    total_cost and reward are derived, so composing externally measured
    segment costs goes through the same arithmetic as a full evaluation.
    """

    subtask: Subtask
    step_cost_total: float
    planning_cost_total: float
    se: float = 0.0

    @property
    def total_cost(self) -> float:
        return self.step_cost_total + self.planning_cost_total

    @property
    def reward(self) -> float:
        return -self.total_cost


@dataclass(frozen=True)
class Prediction:
    maze_id: str
    evaluations: tuple[SubtaskEvaluation, ...]
    chosen: SubtaskEvaluation
    margin: float
    tie: bool = False


def enumerate_subtasks(maze: Maze, strict: bool = True) -> list[Subtask]:
    """One subtask per open neighbor of the start, in canonical order.

    Strict mode requires exactly two, the standard stimulus configuration.
    """
    open_neighbors = neighbors(maze, maze.start)
    if not open_neighbors:
        raise SubtaskError(f"maze {maze.id!r}: start has no open neighbors")
    if strict and len(open_neighbors) != 2:
        raise SubtaskError(
            f"maze {maze.id!r}: expected exactly 2 open neighbors of start, "
            f"found {len(open_neighbors)}"
        )
    return [Subtask(subgoal=s, label=half_label(maze, s)) for s in open_neighbors]


def goal_subtask(maze: Maze) -> Subtask:
    """The overall task itself viewed as a subtask (subgoal = goal)."""
    return Subtask(subgoal=maze.goal, label=half_label(maze, maze.goal))


def evaluate_subtask(
    maze: Maze,
    subtask: Subtask,
    policy: TieBreakPolicy = DETERMINISTIC,
    samples: int = 128,
) -> SubtaskEvaluation:
    """Score one subtask: search start->subgoal and subgoal->goal, sum costs.

    Both segments run under the same policy; for a stochastic policy the
    per-sample rewards of the two segments are paired before the standard
    error is taken. When the subgoal is the goal itself (the whole task as
    one subtask), only the direct search is run and its cost is the total.
    """
    seg1 = sample_results(maze, maze.start, subtask.subgoal, policy, samples)
    if subtask.subgoal == maze.goal:
        seg2 = [_ZERO_SEGMENT] * len(seg1)
    else:
        seg2 = sample_results(maze, subtask.subgoal, maze.goal, policy, samples)
    totals = [a.reward + b.reward for a, b in zip(seg1, seg2)]
    n = len(totals)
    mean_reward = sum(totals) / n
    if n > 1:
        var = sum((t - mean_reward) ** 2 for t in totals) / (n - 1)
        se = (var / n) ** 0.5
    else:
        se = 0.0
    step_total = sum(a.step_cost + b.step_cost for a, b in zip(seg1, seg2)) / n
    planning_total = sum(a.visited_count + b.visited_count for a, b in zip(seg1, seg2)) / n
    return SubtaskEvaluation(
        subtask=subtask,
        step_cost_total=step_total,
        planning_cost_total=planning_total,
        se=se,
    )


def choose_best(
    maze_id: str, evaluations: list[SubtaskEvaluation]
) -> Prediction:
    """Argmax over evaluations; exact ties keep the canonically first one."""
    if not evaluations:
        raise SubtaskError(f"maze {maze_id!r}: no evaluations to choose from")
    best = max(evaluations, key=lambda e: e.reward)
    tie = sum(1 for e in evaluations if e.reward == best.reward) > 1
    # first in canonical order among exact ties
    chosen = next(e for e in evaluations if e.reward == best.reward)
    others = [e.reward for e in evaluations if e is not chosen]
    margin = chosen.reward - max(others) if others else 0.0
    return Prediction(
        maze_id=maze_id,
        evaluations=tuple(evaluations),
        chosen=chosen,
        margin=margin,
        tie=tie,
    )


def select_subtask(
    maze: Maze,
    policy: TieBreakPolicy = DETERMINISTIC,
    samples: int = 128,
    strict: bool = True,
) -> Prediction:
    """Evaluate every subtask of the maze and pick the reward argmax."""
    subtasks = enumerate_subtasks(maze, strict=strict)
    evaluations = [evaluate_subtask(maze, z, policy, samples) for z in subtasks]
    return choose_best(maze.id, evaluations)


@dataclass
class BundlePrediction:
    """Batch result: order-preserving predictions plus collected failures."""

    predictions: list[Prediction] = field(default_factory=list)
    errors: list[tuple[str, str]] = field(default_factory=list)


def predict_bundle(
    mazes: list[Maze],
    policy: TieBreakPolicy = DETERMINISTIC,
    samples: int = 128,
) -> BundlePrediction:
    out = BundlePrediction()
    for maze in mazes:
        try:
            out.predictions.append(select_subtask(maze, policy, samples))
        except Exception as exc:  # per-maze failures must not kill the batch
            out.errors.append((maze.id, str(exc)))
    return out


def _fmt(value: float) -> str:
    if float(value).is_integer():
        return str(int(value))
    return f"{value:.3f}"


def prediction_table(predictions: list[Prediction], include_se: bool = False) -> str:
    """Render predictions as CSV, one row per evaluated subtask."""
    header = [
        "maze_id", "subgoal_x", "subgoal_y", "label", "step_cost",
        "planning_cost", "total_cost", "chosen", "tie", "margin",
    ]
    if include_se:
        header.append("se")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for pred in predictions:
        for ev in pred.evaluations:
            row = [
                pred.maze_id,
                ev.subtask.subgoal.x,
                ev.subtask.subgoal.y,
                ev.subtask.label,
                _fmt(ev.step_cost_total),
                _fmt(ev.planning_cost_total),
                _fmt(ev.total_cost),
                1 if ev is pred.chosen else 0,
                1 if pred.tie else 0,
                _fmt(pred.margin),
            ]
            if include_se:
                row.append(f"{ev.se:.4f}")
            writer.writerow(row)
    return buf.getvalue()
