import random

import pytest

from mazeplan.design import validate_design
from mazeplan.grid import Maze, State, parse_maze, validate_maze
from mazeplan.transforms import ALL_TRANSFORMS, apply_transform


def mirror_symmetric_maze(rng: random.Random, n: int) -> Maze:
    """Random maze symmetric under the main-diagonal flip."""
    blocked = set()
    for x in range(n):
        for y in range(x + 1, n):
            if (x, y) in ((0, 1),) or (x, y) == (n - 2, n - 1):
                continue  # keep both subgoals and the goal approach open
            if rng.random() < 0.2:
                blocked.add(State(x, y))
                blocked.add(State(y, x))
    if rng.random() < 0.5:
        for k in range(1, n - 1):
            blocked.add(State(k, k))
    blocked.discard(State(0, 0))
    blocked.discard(State(n - 1, n - 1))
    blocked.discard(State(1, 0))
    blocked.discard(State(n - 1, n - 2))
    return Maze(size=n, blocked=frozenset(blocked), start=State(0, 0),
                goal=State(n - 1, n - 1), id="sym")


class TestValidateDesign:
    def test_fully_symmetric_maze_passes(self):
        m = parse_maze(
            "S....\n"
            ".#..#\n"
            "..#..\n"
            "...#.\n"
            ".#..G"
        )
        report = validate_design(m)
        assert report.passes
        assert report.walls_upper_triangle == report.walls_lower_triangle
        assert report.optimal_length_upper == report.optimal_length_lower

    def test_extra_wall_breaks_triangle_balance(self):
        m = parse_maze(
            "S.#..\n"
            ".#..#\n"
            "..#..\n"
            "...#.\n"
            ".#..G"
        )
        report = validate_design(m)
        assert report.walls_upper_triangle == report.walls_lower_triangle + 1
        assert not report.passes
        assert any("triangle" in f for f in report.failures())

    def test_wrong_subgoal_count_is_failing_report_not_exception(self):
        m = parse_maze("S#...\n#....\n.....\n.....\n....G")
        report = validate_design(m)
        assert report.subgoal_count == 0
        assert not report.passes

    def test_off_diagonal_endpoints_fail(self):
        m = parse_maze(".S...\n.....\n.....\n.....\n....G")
        report = validate_design(m)
        assert not report.start_goal_on_diagonal
        assert not report.passes

    def test_structurally_invalid_maze_rejected(self):
        m = parse_maze("S#\n#G")
        with pytest.raises(ValueError):
            validate_design(m)

    def test_symmetric_mazes_always_pass_balance_and_mirror(self):
        rng = random.Random(21)
        checked = 0
        while checked < 50:
            m = mirror_symmetric_maze(rng, rng.randint(5, 9))
            if not validate_maze(m).valid:
                continue
            report = validate_design(m)
            checked += 1
            assert report.walls_upper_triangle == report.walls_lower_triangle
            if report.subgoal_count == 2:
                assert report.optimal_length_upper == report.optimal_length_lower
                assert report.mirrored_optimal_paths


class TestShippedBundle:
    def test_six_bases_pass(self, shipped_bundle):
        for set_id in sorted(shipped_bundle.sets):
            base = next(m for m in shipped_bundle.sets[set_id]
                        if m.id.endswith("identity"))
            assert validate_design(base).passes, f"{base.id} fails design checks"

    def test_all_48_transforms_pass(self, shipped_bundle):
        mazes = shipped_bundle.scored_mazes()
        assert len(mazes) == 48
        for maze in mazes:
            report = validate_design(maze)
            assert report.passes, f"{maze.id}: {report.failures()}"

    def test_transformed_variants_keep_passing_from_any_base(self, shipped_bundle):
        base = shipped_bundle.by_id("base3_identity")
        for t in ALL_TRANSFORMS:
            assert validate_design(apply_transform(base, t)).passes
