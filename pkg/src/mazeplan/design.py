"""Design validation for two-subtask stimuli.

A stimulus maze splits into two halves along the diagonal through its start
and goal. A well-designed stimulus has exactly two subtasks (one per half),
the same number of walls in each half, and the same optimal step cost
through each half, with one half's optimal route being the mirror image of
the other's. Transformed variants keep these properties relative to their
own endpoint diagonal (the main diagonal for half of the symmetries, the
anti-diagonal for the rest), so validation detects the axis from the
endpoints.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable

from .grid import Maze, State, neighbors, validate_maze
from .model import half_label
from .search import bfs_oracle


@dataclass(frozen=True)
class DesignReport:
    maze_id: str
    subgoal_count: int
    walls_upper_triangle: int
    walls_lower_triangle: int
    start_goal_on_diagonal: bool
    mirrored_optimal_paths: bool
    optimal_length_upper: int | None
    optimal_length_lower: int | None

    @property
    def passes(self) -> bool:
        return (
            self.subgoal_count == 2
            and self.walls_upper_triangle == self.walls_lower_triangle
            and self.start_goal_on_diagonal
            and self.optimal_length_upper is not None
            and self.optimal_length_upper == self.optimal_length_lower
            and self.mirrored_optimal_paths
        )

    def failures(self) -> list[str]:
        out = []
        if self.subgoal_count != 2:
            out.append(f"subgoal count {self.subgoal_count}, expected 2")
        if self.walls_upper_triangle != self.walls_lower_triangle:
            out.append(
                f"triangle wall counts differ: upper {self.walls_upper_triangle}, "
                f"lower {self.walls_lower_triangle}"
            )
        if not self.start_goal_on_diagonal:
            out.append("start and goal not on a common diagonal")
        if self.optimal_length_upper is None or self.optimal_length_lower is None:
            out.append("missing a subtask on one side of the diagonal")
        elif self.optimal_length_upper != self.optimal_length_lower:
            out.append(
                f"optimal lengths differ: upper {self.optimal_length_upper}, "
                f"lower {self.optimal_length_lower}"
            )
        if not self.mirrored_optimal_paths:
            out.append("no mirrored pair of optimal paths")
        return out


def _endpoint_mirror(maze: Maze) -> Callable[[State], State] | None:
    """Reflection across the diagonal through start and goal, if one exists."""
    n = maze.size
    if maze.start.x == maze.start.y and maze.goal.x == maze.goal.y:
        return lambda s: State(s.y, s.x)
    if maze.start.x + maze.start.y == n - 1 and maze.goal.x + maze.goal.y == n - 1:
        return lambda s: State(n - 1 - s.y, n - 1 - s.x)
    return None


def _restricted_distance(
    maze: Maze, start: State, target: State, allowed: Callable[[State], bool]
) -> int | None:
    """BFS distance using only cells satisfying `allowed` (endpoints included)."""
    if not (allowed(start) and allowed(target)):
        return None
    if start == target:
        return 0
    dist = {start: 0}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        for nxt in neighbors(maze, cur):
            if nxt not in dist and allowed(nxt):
                dist[nxt] = dist[cur] + 1
                if nxt == target:
                    return dist[nxt]
                queue.append(nxt)
    return None


def validate_design(maze: Maze) -> DesignReport:
    """Check the two-subtask stimulus constraints; failures go in the report.

    The mirrored-path check is exact: an optimal mirrored pair exists if and
    only if the optimal subgoal-to-goal distance is unchanged when the
    search is restricted to cells whose mirror image is also open.
    """
    if not validate_maze(maze).valid:
        raise ValueError(f"maze {maze.id!r} fails structural validation")

    open_starts = neighbors(maze, maze.start)
    subgoal_count = len(open_starts)

    walls_upper = sum(1 for b in maze.blocked if half_label(maze, b) == "upper")
    walls_lower = sum(1 for b in maze.blocked if half_label(maze, b) == "lower")

    mirror = _endpoint_mirror(maze)
    on_diagonal = mirror is not None

    by_label: dict[str, State] = {}
    for s in open_starts:
        by_label.setdefault(half_label(maze, s), s)

    length_upper: int | None = None
    length_lower: int | None = None
    if "upper" in by_label:
        d = bfs_oracle(maze, by_label["upper"], maze.goal)
        length_upper = None if d is None else 1 + d
    if "lower" in by_label:
        d = bfs_oracle(maze, by_label["lower"], maze.goal)
        length_lower = None if d is None else 1 + d

    mirrored = False
    if (
        on_diagonal
        and subgoal_count == 2
        and length_upper is not None
        and length_upper == length_lower
        and "upper" in by_label
        and "lower" in by_label
        and mirror(by_label["lower"]) == by_label["upper"]
    ):
        allowed = lambda s: maze.is_open(s) and maze.is_open(mirror(s))
        d_sym = _restricted_distance(maze, by_label["lower"], maze.goal, allowed)
        mirrored = d_sym is not None and 1 + d_sym == length_lower

    return DesignReport(
        maze_id=maze.id,
        subgoal_count=subgoal_count,
        walls_upper_triangle=walls_upper,
        walls_lower_triangle=walls_lower,
        start_goal_on_diagonal=on_diagonal,
        mirrored_optimal_paths=mirrored,
        optimal_length_upper=length_upper,
        optimal_length_lower=length_lower,
    )
