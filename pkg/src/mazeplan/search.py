"""Action-level planning: A* with a Manhattan heuristic and effort accounting.

The planner returns both a shortest path and the search effort spent finding
it, measured as the number of states expanded (popped from the frontier,
each counted at most once, including the pop of the target). One expansion
costs one time unit, commensurate with one step of path cost, so a run's
reward is -(step_cost + visited_count).

Two tie-break policies are provided. The deterministic policy orders the
frontier by (f, h, y, x) and is a pure function of maze and endpoints. The
stochastic policy breaks f-ties uniformly at random from a seeded generator
and is a pure function of (maze, endpoints, seed), which makes Monte Carlo
estimates of expected reward reproducible.
"""

from __future__ import annotations

import heapq
import math
import random
from collections import deque
from dataclasses import dataclass

from .grid import Maze, State, neighbors


class Unreachable(Exception):
    """Target cannot be reached from the search start."""


@dataclass(frozen=True)
class Plan:
    """A path through open cells; step_cost is the number of moves."""

    states: tuple[State, ...]

    @property
    def step_cost(self) -> int:
        return len(self.states) - 1

    @property
    def reward(self) -> int:
        return -self.step_cost


@dataclass(frozen=True)
class SearchResult:
    plan: Plan
    visited_count: int

    @property
    def step_cost(self) -> int:
        return self.plan.step_cost

    @property
    def reward(self) -> int:
        return -(self.plan.step_cost + self.visited_count)


@dataclass(frozen=True)
class TieBreakPolicy:
    """How the A* frontier resolves ties in f.

    mode "deterministic": (f, h, y, x) ascending, no randomness.
    mode "stochastic": ties in f broken uniformly at random; `seed` is
    required and fully determines the run.
    """

    mode: str = "deterministic"
    seed: int = 0

    def __post_init__(self) -> None:
        if self.mode not in ("deterministic", "stochastic"):
            raise ValueError(f"unknown tie-break mode {self.mode!r}")

    @property
    def is_stochastic(self) -> bool:
        return self.mode == "stochastic"


DETERMINISTIC = TieBreakPolicy("deterministic")


def manhattan(s: State, g: State) -> int:
    return abs(s.x - g.x) + abs(s.y - g.y)


def _derive_sample_seed(seed: int, index: int) -> int:
    # splitmix64-style mix so per-sample streams are well separated and
    # schedule-independent.
    z = (seed + (index + 1) * 0x9E3779B97F4A7C15) & 0xFFFFFFFFFFFFFFFF
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & 0xFFFFFFFFFFFFFFFF
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & 0xFFFFFFFFFFFFFFFF
    return z ^ (z >> 31)


def astar(
    maze: Maze,
    start: State,
    target: State,
    policy: TieBreakPolicy = DETERMINISTIC,
    sample_index: int = 0,
) -> SearchResult:
    """Shortest path from start to target plus the expansion count.

    The Manhattan heuristic is admissible and consistent on a unit 4-grid,
    so the returned step_cost is optimal and no state is ever re-expanded.
    For a stochastic policy, `sample_index` selects the per-sample seed
    stream derived from policy.seed.
    """
    if not maze.is_open(start) or not maze.is_open(target):
        raise ValueError("start and target must be open cells")

    rng = (
        random.Random(_derive_sample_seed(policy.seed, sample_index))
        if policy.is_stochastic
        else None
    )

    counter = 0  # insertion order, keeps heap comparisons off State objects

    def priority(state: State, g: int) -> tuple:
        h = manhattan(state, target)
        if rng is not None:
            return (g + h, rng.random())
        return (g + h, h, state.y, state.x)

    frontier: list[tuple] = []
    heapq.heappush(frontier, (*priority(start, 0), counter, start))
    best_g = {start: 0}
    came_from: dict[State, State | None] = {start: None}
    closed: set[State] = set()
    visited = 0

    while frontier:
        *_, cur = heapq.heappop(frontier)
        if cur in closed:
            continue  # stale entry; the state was already expanded
        closed.add(cur)
        visited += 1
        if cur == target:
            path = deque([cur])
            while came_from[path[0]] is not None:
                path.appendleft(came_from[path[0]])
            return SearchResult(plan=Plan(states=tuple(path)), visited_count=visited)
        g = best_g[cur]
        for nxt in neighbors(maze, cur):
            ng = g + 1
            if nxt not in best_g or ng < best_g[nxt]:
                best_g[nxt] = ng
                came_from[nxt] = cur
                counter += 1
                heapq.heappush(frontier, (*priority(nxt, ng), counter, nxt))

    raise Unreachable(f"{target} not reachable from {start} in maze {maze.id!r}")


def bfs_oracle(maze: Maze, start: State, target: State) -> int | None:
    """Exact shortest-path move count by breadth-first search.

    Returns None when the target is unreachable. Independent of astar and
    used to cross-check it.
    """
    if not maze.is_open(start):
        raise ValueError("start must be an open cell")
    if start == target:
        return 0
    dist = {start: 0}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        for nxt in neighbors(maze, cur):
            if nxt not in dist:
                dist[nxt] = dist[cur] + 1
                if nxt == target:
                    return dist[nxt]
                queue.append(nxt)
    return None


@dataclass(frozen=True)
class RewardEstimate:
    """Monte Carlo estimate of a segment's expected reward."""

    mean: float
    se: float
    samples: int
    mean_step_cost: float
    mean_visited: float


def sample_results(
    maze: Maze,
    start: State,
    target: State,
    policy: TieBreakPolicy,
    samples: int,
) -> list[SearchResult]:
    """Independent seeded A* runs for one segment.

    A deterministic policy always yields a single run: every sample would be
    identical. Sample i of a stochastic policy uses the seed stream derived
    from (policy.seed, i), so results do not depend on evaluation order.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if not policy.is_stochastic:
        return [astar(maze, start, target, policy)]
    return [astar(maze, start, target, policy, sample_index=i) for i in range(samples)]


def expected_reward(
    maze: Maze,
    start: State,
    target: State,
    policy: TieBreakPolicy = DETERMINISTIC,
    samples: int = 128,
) -> RewardEstimate:
    """Mean reward (path reward minus search effort) with its standard error."""
    results = sample_results(maze, start, target, policy, samples)
    rewards = [r.reward for r in results]
    n = len(rewards)
    mean = sum(rewards) / n
    if n > 1:
        var = sum((r - mean) ** 2 for r in rewards) / (n - 1)
        se = math.sqrt(var / n)
    else:
        se = 0.0
    return RewardEstimate(
        mean=mean,
        se=se,
        samples=n,
        mean_step_cost=sum(r.step_cost for r in results) / n,
        mean_visited=sum(r.visited_count for r in results) / n,
    )
