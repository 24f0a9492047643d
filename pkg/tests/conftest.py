import random
from pathlib import Path

import pytest

from mazeplan.bundle import Bundle, load_bundle
from mazeplan.grid import Maze, State

DATA_DIR = Path(__file__).parent.parent / "src" / "mazeplan" / "data"


def random_maze(rng: random.Random, min_size: int = 4, max_size: int = 15,
                wall_density: float = 0.25) -> Maze:
    """Random maze with open distinct endpoints; reachability not guaranteed."""
    n = rng.randint(min_size, max_size)
    cells = [(x, y) for x in range(n) for y in range(n)]
    start, goal = rng.sample(cells, 2)
    blocked = frozenset(
        State(x, y) for (x, y) in cells
        if (x, y) not in (start, goal) and rng.random() < wall_density
    )
    return Maze(size=n, blocked=blocked, start=State(*start), goal=State(*goal),
                id=f"rand{n}")


def flood_fill_distances(maze: Maze, source: State) -> dict[State, int]:
    """Independent oracle: plain flood fill, no shared code with the planner."""
    dist = {source: 0}
    frontier = [source]
    while frontier:
        nxt = []
        for s in frontier:
            for dx, dy in ((0, -1), (-1, 0), (1, 0), (0, 1)):
                t = State(s.x + dx, s.y + dy)
                if (0 <= t.x < maze.size and 0 <= t.y < maze.size
                        and t not in maze.blocked and t not in dist):
                    dist[t] = dist[s] + 1
                    nxt.append(t)
        frontier = nxt
    return dist


@pytest.fixture(scope="session")
def shipped_bundle() -> Bundle:
    return load_bundle(DATA_DIR / "stimuli")


@pytest.fixture(scope="session")
def synthetic_trials_path() -> Path:
    return DATA_DIR / "trials_synthetic.csv"
