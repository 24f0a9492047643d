"""The 8 symmetries of the square (D4) acting on mazes.

Each element is a coordinate map on an n-by-n grid. Rotations are
counted clockwise with y increasing downward, matching the text format's
row order: rot90 sends (x, y) to (n-1-y, x).
"""

from __future__ import annotations

from enum import Enum
from typing import Callable

from .grid import Maze, State


class Transform(Enum):
    IDENTITY = "identity"
    ROT90 = "rot90"
    ROT180 = "rot180"
    ROT270 = "rot270"
    FLIP_HORIZONTAL = "flip_horizontal"
    FLIP_VERTICAL = "flip_vertical"
    FLIP_MAIN_DIAGONAL = "flip_main_diagonal"
    FLIP_ANTI_DIAGONAL = "flip_anti_diagonal"

    def __str__(self) -> str:  # index files and ids use the bare name
        return self.value


# Canonical element order, used by expand_set and every deterministic listing.
ALL_TRANSFORMS: tuple[Transform, ...] = (
    Transform.IDENTITY,
    Transform.ROT90,
    Transform.ROT180,
    Transform.ROT270,
    Transform.FLIP_HORIZONTAL,
    Transform.FLIP_VERTICAL,
    Transform.FLIP_MAIN_DIAGONAL,
    Transform.FLIP_ANTI_DIAGONAL,
)

_COORD_MAPS: dict[Transform, Callable[[int, int, int], tuple[int, int]]] = {
    Transform.IDENTITY: lambda x, y, n: (x, y),
    Transform.ROT90: lambda x, y, n: (n - 1 - y, x),
    Transform.ROT180: lambda x, y, n: (n - 1 - x, n - 1 - y),
    Transform.ROT270: lambda x, y, n: (y, n - 1 - x),
    # flip across the horizontal mid-line (rows reverse)
    Transform.FLIP_HORIZONTAL: lambda x, y, n: (x, n - 1 - y),
    # flip across the vertical mid-line (columns reverse)
    Transform.FLIP_VERTICAL: lambda x, y, n: (n - 1 - x, y),
    Transform.FLIP_MAIN_DIAGONAL: lambda x, y, n: (y, x),
    Transform.FLIP_ANTI_DIAGONAL: lambda x, y, n: (n - 1 - y, n - 1 - x),
}


def transform_state(s: State, t: Transform, size: int) -> State:
    return State(*_COORD_MAPS[t](s.x, s.y, size))


def apply_transform(maze: Maze, t: Transform) -> Maze:
    """Map every cell of the maze through the element's coordinate map.

    Start, goal, and the wall set all move together, so wall count and all
    path lengths are preserved (the map is a grid bijection).
    """
    n = maze.size
    return Maze(
        size=n,
        blocked=frozenset(transform_state(b, t, n) for b in maze.blocked),
        start=transform_state(maze.start, t, n),
        goal=transform_state(maze.goal, t, n),
        id=f"{maze.id}_{t.value}",
    )


def _build_composition_table() -> dict[tuple[Transform, Transform], Transform]:
    # Probe points (1, 0) and (0, 2) on a 5x5 grid distinguish all 8 maps.
    n = 5
    probes = [(1, 0), (0, 2)]
    signature = {
        t: tuple(_COORD_MAPS[t](x, y, n) for x, y in probes) for t in ALL_TRANSFORMS
    }
    by_signature = {sig: t for t, sig in signature.items()}
    table = {}
    for a in ALL_TRANSFORMS:
        for b in ALL_TRANSFORMS:
            sig = tuple(
                _COORD_MAPS[b](*_COORD_MAPS[a](x, y, n), n) for x, y in probes
            )
            table[(a, b)] = by_signature[sig]
    return table


_COMPOSE = _build_composition_table()


def compose(a: Transform, b: Transform) -> Transform:
    """The element equivalent to applying a first, then b."""
    return _COMPOSE[(a, b)]


def inverse(t: Transform) -> Transform:
    for candidate in ALL_TRANSFORMS:
        if compose(t, candidate) is Transform.IDENTITY:
            return candidate
    raise AssertionError("unreachable: D4 is closed under inverses")


def expand_set(base: Maze) -> list[Maze]:
    """All 8 transformed variants of a base maze, in canonical element order.

    Ids are the base id suffixed with the element name.
    """
    return [apply_transform(base, t) for t in ALL_TRANSFORMS]
