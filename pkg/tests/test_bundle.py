import pytest

from mazeplan.bundle import BundleError, load_bundle, write_set
from mazeplan.grid import State, parse_maze
from mazeplan.transforms import ALL_TRANSFORMS, expand_set


class TestShippedBundle:
    def test_shape(self, shipped_bundle):
        assert len(shipped_bundle.sets) == 6
        assert all(len(m) == 8 for m in shipped_bundle.sets.values())
        assert len(shipped_bundle.practice) == 2
        shipped_bundle.require_experiment_shape()

    def test_favorable_annotations_cover_all_scored_mazes(self, shipped_bundle):
        ids = {m.id for m in shipped_bundle.scored_mazes()}
        assert set(shipped_bundle.favorable) == ids

    def test_favorable_subgoals_are_start_neighbors(self, shipped_bundle):
        for maze_id, subgoal in shipped_bundle.favorable.items():
            maze = shipped_bundle.by_id(maze_id)
            assert abs(subgoal.x - maze.start.x) + abs(subgoal.y - maze.start.y) == 1
            assert maze.is_open(subgoal)

    def test_by_id_missing_raises(self, shipped_bundle):
        with pytest.raises(KeyError):
            shipped_bundle.by_id("nope")


class TestRoundTrip:
    def test_write_then_load(self, tmp_path):
        base = parse_maze("S....\n.#...\n...#.\n.....\n....G", maze_id="b")
        mazes = expand_set(base)
        write_set(tmp_path, "set1", "b", mazes, [t.value for t in ALL_TRANSFORMS])
        bundle = load_bundle(tmp_path)
        assert len(bundle.sets["set1"]) == 8
        reloaded = {m.id: m for m in bundle.sets["set1"]}
        for m in mazes:
            got = reloaded[m.id]
            assert (got.size, got.blocked, got.start, got.goal) == \
                   (m.size, m.blocked, m.start, m.goal)

    def test_missing_index(self, tmp_path):
        with pytest.raises(BundleError, match="index"):
            load_bundle(tmp_path)

    def test_malformed_index_line(self, tmp_path):
        (tmp_path / "index").write_text("too few fields\n")
        with pytest.raises(BundleError, match="4 fields"):
            load_bundle(tmp_path)

    def test_missing_maze_file(self, tmp_path):
        (tmp_path / "index").write_text("set1 b identity missing.maze\n")
        with pytest.raises(BundleError, match="missing maze file"):
            load_bundle(tmp_path)

    def test_require_shape_rejects_small_bundle(self, tmp_path):
        base = parse_maze("S....\n.#...\n...#.\n.....\n....G", maze_id="b")
        write_set(tmp_path, "set1", "b", expand_set(base),
                  [t.value for t in ALL_TRANSFORMS])
        bundle = load_bundle(tmp_path)
        with pytest.raises(BundleError):
            bundle.require_experiment_shape()
