"""Stimulus bundles: a directory of .maze files plus an index.

The index is a text file with one entry per maze:

    set_id base_id transform filename

Practice mazes use the reserved set id "practice" and are kept apart from
the scored sets. A bundle may also carry a `favorable` file annotating the
designed lower-cost subtask per maze (`maze_id subgoal_x subgoal_y`), which
predictions are checked against.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .grid import Maze, State, parse_maze, serialize_maze

PRACTICE_SET = "practice"


class BundleError(ValueError):
    """Bundle directory is missing, malformed, or inconsistent."""


@dataclass
class Bundle:
    directory: Path
    sets: dict[str, list[Maze]] = field(default_factory=dict)
    practice: list[Maze] = field(default_factory=list)
    favorable: dict[str, State] = field(default_factory=dict)

    def scored_mazes(self) -> list[Maze]:
        out = []
        for set_id in sorted(self.sets):
            out.extend(self.sets[set_id])
        return out

    def all_mazes(self) -> list[Maze]:
        return self.scored_mazes() + list(self.practice)

    def by_id(self, maze_id: str) -> Maze:
        for maze in self.all_mazes():
            if maze.id == maze_id:
                return maze
        raise KeyError(maze_id)

    def require_experiment_shape(self, sets: int = 6, per_set: int = 8) -> None:
        if len(self.sets) != sets:
            raise BundleError(f"expected {sets} scored sets, found {len(self.sets)}")
        for set_id, mazes in self.sets.items():
            if len(mazes) != per_set:
                raise BundleError(
                    f"set {set_id!r} has {len(mazes)} mazes, expected {per_set}"
                )
        if len(self.practice) < 2:
            raise BundleError("bundle needs at least 2 practice mazes")


def load_bundle(directory: str | Path) -> Bundle:
    directory = Path(directory)
    index_path = directory / "index"
    if not index_path.is_file():
        raise BundleError(f"no index file in {directory}")

    bundle = Bundle(directory=directory)
    for lineno, raw in enumerate(index_path.read_text().splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 4:
            raise BundleError(f"index line {lineno}: expected 4 fields, got {len(parts)}")
        set_id, base_id, transform, filename = parts
        maze_path = directory / filename
        if not maze_path.is_file():
            raise BundleError(f"index line {lineno}: missing maze file {filename}")
        maze = parse_maze(maze_path.read_text(), maze_id=Path(filename).stem)
        if set_id == PRACTICE_SET:
            bundle.practice.append(maze)
        else:
            bundle.sets.setdefault(set_id, []).append(maze)

    favorable_path = directory / "favorable"
    if favorable_path.is_file():
        for lineno, raw in enumerate(favorable_path.read_text().splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 3:
                raise BundleError(f"favorable line {lineno}: expected 3 fields")
            maze_id, x, y = parts
            bundle.favorable[maze_id] = State(int(x), int(y))
    return bundle


def write_set(
    directory: str | Path,
    set_id: str,
    base_id: str,
    mazes: list[Maze],
    transforms: list[str],
    append_index: bool = True,
) -> list[Path]:
    """Write one expanded set's maze files and its index entries."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    index_lines = []
    for maze, transform in zip(mazes, transforms):
        filename = f"{maze.id}.maze"
        path = directory / filename
        path.write_text(serialize_maze(maze))
        written.append(path)
        index_lines.append(f"{set_id} {base_id} {transform} {filename}\n")
    index_path = directory / "index"
    mode = "a" if append_index and index_path.exists() else "w"
    with open(index_path, mode) as fh:
        fh.writelines(index_lines)
    return written
