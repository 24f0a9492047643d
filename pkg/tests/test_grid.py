import random

import pytest

from mazeplan.grid import (
    Maze,
    MazeFormatError,
    State,
    neighbors,
    parse_maze,
    serialize_maze,
    validate_maze,
)

from conftest import flood_fill_distances, random_maze


class TestParse:
    def test_smallest_legal_maze(self):
        m = parse_maze("S.\n.G")
        assert m.size == 2
        assert m.start == State(0, 0)
        assert m.goal == State(1, 1)
        assert m.blocked == frozenset()

    def test_parse_does_not_check_reachability(self):
        m = parse_maze("S#\n#G")
        assert m.blocked == {State(1, 0), State(0, 1)}

    def test_non_square_grid_rejected(self):
        with pytest.raises(MazeFormatError, match="square"):
            parse_maze("S.\n.G\n..")

    def test_ragged_rows_rejected(self):
        with pytest.raises(MazeFormatError):
            parse_maze("S.\n.G.")

    def test_unknown_character_rejected(self):
        with pytest.raises(MazeFormatError, match="unknown character"):
            parse_maze("S?\n.G")

    @pytest.mark.parametrize("text", ["..\n.G", "S.\n..", "SS\n.G", "S.\nGG"])
    def test_missing_or_duplicate_endpoints(self, text):
        with pytest.raises(MazeFormatError):
            parse_maze(text)

    def test_trailing_newline_optional(self):
        assert parse_maze("S.\n.G\n") == parse_maze("S.\n.G")


class TestSerialize:
    def test_empty_round_trip(self):
        assert serialize_maze(parse_maze("S.\n.G")) == "S.\n.G\n"

    def test_wall_coordinate_convention(self):
        m = Maze(size=2, blocked=frozenset({State(1, 0)}),
                 start=State(0, 0), goal=State(1, 1))
        assert serialize_maze(m).splitlines()[0] == "S#"

    def test_round_trip_on_random_mazes(self):
        rng = random.Random(42)
        for _ in range(100):
            m = random_maze(rng)
            again = parse_maze(serialize_maze(m), maze_id=m.id)
            assert again == m


class TestNeighbors:
    def test_interior_cell_canonical_order(self):
        m = parse_maze("S..\n...\n..G")
        assert neighbors(m, State(1, 1)) == [
            State(1, 0), State(0, 1), State(2, 1), State(1, 2)
        ]

    def test_corner_clipping(self):
        m = parse_maze("S..\n...\n..G")
        assert neighbors(m, State(0, 0)) == [State(1, 0), State(0, 1)]

    def test_walls_removed(self):
        m = parse_maze("S#.\n...\n..G")
        assert neighbors(m, State(0, 0)) == [State(0, 1)]

    def test_blocked_cell_rejected(self):
        m = parse_maze("S#.\n...\n..G")
        with pytest.raises(ValueError):
            neighbors(m, State(1, 0))

    def test_symmetry_on_random_mazes(self):
        rng = random.Random(3)
        for _ in range(50):
            m = random_maze(rng)
            for s in m.open_cells():
                for t in neighbors(m, s):
                    assert s in neighbors(m, t)


class TestValidate:
    def test_valid_tiny_maze(self):
        assert validate_maze(parse_maze("S.\n.G")).valid

    def test_fully_walled_goal_unreachable(self):
        report = validate_maze(parse_maze("S#\n#G"))
        assert not report.valid
        assert "reachable" in report.failures[0]

    def test_against_flood_fill_oracle(self):
        rng = random.Random(11)
        for _ in range(1000):
            m = random_maze(rng, max_size=10)
            expected = m.goal in flood_fill_distances(m, m.start)
            assert validate_maze(m).valid == expected
