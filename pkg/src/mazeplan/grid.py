"""Square grid mazes: data model, text format, adjacency, structural checks.

A maze is a square occupancy grid. Cells are addressed as (x, y) with x the
column and y the row, both 0-based from the top-left corner. Walls are
blocked cells; movement is 4-connected between open cells.

Text format (one character per cell, one line per row):
    '.' open   '#' wall   'S' start   'G' goal
"""

from __future__ import annotations

from dataclasses import dataclass, field
from collections import deque
from typing import Iterable, NamedTuple


class State(NamedTuple):
    """A grid cell: x is the column index, y is the row index."""

    x: int
    y: int


class MazeFormatError(ValueError):
    """Raised when maze text cannot be parsed into a well-formed maze."""


# Canonical neighbor offsets: up, left, right, down. Row-major by (y, x),
# which every tie-break downstream relies on.
NEIGHBOR_OFFSETS = ((0, -1), (-1, 0), (1, 0), (0, 1))


@dataclass(frozen=True)
class Maze:
    """Immutable square maze with start and goal cells.

    Invariants enforced at construction: the grid is square, start and goal
    are distinct open in-bounds cells, and all walls are in bounds.
    Reachability is deliberately not enforced here; see `validate_maze`.
    """

    size: int
    blocked: frozenset[State]
    start: State
    goal: State
    id: str = "maze"

    def __post_init__(self) -> None:
        if self.size < 2:
            raise MazeFormatError(f"maze size must be >= 2, got {self.size}")
        for s in (self.start, self.goal):
            if not self.in_bounds(s):
                raise MazeFormatError(f"endpoint {s} out of bounds for size {self.size}")
        if self.start == self.goal:
            raise MazeFormatError("start and goal must differ")
        if self.start in self.blocked or self.goal in self.blocked:
            raise MazeFormatError("start and goal must be open cells")
        for b in self.blocked:
            if not self.in_bounds(b):
                raise MazeFormatError(f"wall {b} out of bounds for size {self.size}")

    def in_bounds(self, s: State) -> bool:
        return 0 <= s.x < self.size and 0 <= s.y < self.size

    def is_open(self, s: State) -> bool:
        return self.in_bounds(s) and s not in self.blocked

    def open_cells(self) -> Iterable[State]:
        for y in range(self.size):
            for x in range(self.size):
                s = State(x, y)
                if s not in self.blocked:
                    yield s

    def with_id(self, new_id: str) -> "Maze":
        return Maze(self.size, self.blocked, self.start, self.goal, new_id)


def parse_maze(text: str, maze_id: str = "maze") -> Maze:
    """Parse the text format into a Maze.

    Requires a square grid, exactly one 'S' and one 'G', and no characters
    outside the format alphabet. Reachability is not checked here.
    """
    lines = text.splitlines()
    while lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise MazeFormatError("empty maze text")

    size = len(lines)
    blocked: set[State] = set()
    start: State | None = None
    goal: State | None = None
    for y, line in enumerate(lines):
        if len(line) != size:
            raise MazeFormatError(
                f"row {y} has length {len(line)}, expected {size} (grid must be square)"
            )
        for x, ch in enumerate(line):
            if ch == ".":
                continue
            elif ch == "#":
                blocked.add(State(x, y))
            elif ch == "S":
                if start is not None:
                    raise MazeFormatError("duplicate 'S'")
                start = State(x, y)
            elif ch == "G":
                if goal is not None:
                    raise MazeFormatError("duplicate 'G'")
                goal = State(x, y)
            else:
                raise MazeFormatError(f"unknown character {ch!r} at ({x}, {y})")
    if start is None:
        raise MazeFormatError("missing 'S'")
    if goal is None:
        raise MazeFormatError("missing 'G'")
    return Maze(size=size, blocked=frozenset(blocked), start=start, goal=goal, id=maze_id)


def serialize_maze(maze: Maze) -> str:
    """Render a Maze back into the text format (inverse of `parse_maze`)."""
    rows = []
    for y in range(maze.size):
        row = []
        for x in range(maze.size):
            s = State(x, y)
            if s == maze.start:
                row.append("S")
            elif s == maze.goal:
                row.append("G")
            elif s in maze.blocked:
                row.append("#")
            else:
                row.append(".")
        rows.append("".join(row))
    return "\n".join(rows) + "\n"


def grid_rows(maze: Maze) -> list[str]:
    """The maze as a list of row strings, as transmitted over the wire."""
    return serialize_maze(maze).splitlines()


def neighbors(maze: Maze, s: State) -> list[State]:
    """Open in-bounds cells adjacent to s, in canonical up/left/right/down order.

    Raises ValueError if s itself is blocked or out of bounds.
    """
    if not maze.is_open(s):
        raise ValueError(f"{s} is not an open cell of maze {maze.id!r}")
    out = []
    for dx, dy in NEIGHBOR_OFFSETS:
        n = State(s.x + dx, s.y + dy)
        if maze.is_open(n):
            out.append(n)
    return out


def reachable_from(maze: Maze, source: State) -> set[State]:
    """All open cells reachable from source by 4-adjacency (flood fill)."""
    if not maze.is_open(source):
        raise ValueError(f"{source} is not an open cell")
    seen = {source}
    queue = deque([source])
    while queue:
        cur = queue.popleft()
        for n in neighbors(maze, cur):
            if n not in seen:
                seen.add(n)
                queue.append(n)
    return seen


@dataclass(frozen=True)
class ValidationReport:
    """Structural validation outcome; failures carries one message per problem."""

    maze_id: str
    valid: bool
    failures: tuple[str, ...] = field(default_factory=tuple)


def validate_maze(maze: Maze) -> ValidationReport:
    """Check structural soundness: open endpoints and goal reachability.

    Bounds and endpoint openness are already enforced by the Maze
    constructor, so the one check that can fail for a constructed Maze is
    reachability; parse-level problems surface as MazeFormatError earlier.
    """
    failures: list[str] = []
    if maze.goal not in reachable_from(maze, maze.start):
        failures.append("goal not reachable from start")
    return ValidationReport(maze_id=maze.id, valid=not failures, failures=tuple(failures))
