import random

from mazeplan.grid import State, parse_maze, serialize_maze
from mazeplan.search import bfs_oracle
from mazeplan.transforms import (
    ALL_TRANSFORMS,
    Transform,
    apply_transform,
    compose,
    expand_set,
    inverse,
    transform_state,
)

from conftest import random_maze


def equal_grids(a, b) -> bool:
    return (a.size, a.blocked, a.start, a.goal) == (b.size, b.blocked, b.start, b.goal)


def test_identity_returns_equal_maze():
    m = parse_maze("S.#\n...\n..G")
    assert equal_grids(apply_transform(m, Transform.IDENTITY), m)


def test_rot90_four_times_is_identity():
    rng = random.Random(0)
    m = random_maze(rng, min_size=5, max_size=5)
    out = m
    for _ in range(4):
        out = apply_transform(out, Transform.ROT90)
    assert equal_grids(out, m)


def test_flip_main_diagonal_swaps_coordinates():
    m = parse_maze("S#.\n...\n..G")
    assert m.blocked == {State(1, 0)}
    flipped = apply_transform(m, Transform.FLIP_MAIN_DIAGONAL)
    assert flipped.blocked == {State(0, 1)}


def test_rot90_coordinate_map():
    n = 7
    assert transform_state(State(2, 1), Transform.ROT90, n) == State(n - 1 - 1, 2)


def test_group_closure_and_composition():
    rng = random.Random(1)
    m = random_maze(rng, min_size=6, max_size=6)
    for a in ALL_TRANSFORMS:
        for b in ALL_TRANSFORMS:
            composed = compose(a, b)
            assert composed in ALL_TRANSFORMS
            direct = apply_transform(apply_transform(m, a), b)
            assert equal_grids(direct, apply_transform(m, composed))


def test_every_element_has_inverse():
    for t in ALL_TRANSFORMS:
        assert compose(t, inverse(t)) is Transform.IDENTITY
        assert compose(inverse(t), t) is Transform.IDENTITY


def test_transform_preserves_walls_size_and_distance():
    rng = random.Random(2)
    checked = 0
    while checked < 30:
        m = random_maze(rng, max_size=12)
        base_dist = bfs_oracle(m, m.start, m.goal)
        if base_dist is None:
            continue
        checked += 1
        for t in ALL_TRANSFORMS:
            tm = apply_transform(m, t)
            assert tm.size == m.size
            assert len(tm.blocked) == len(m.blocked)
            assert bfs_oracle(tm, tm.start, tm.goal) == base_dist


def test_expand_set_cardinality_and_ids():
    rng = random.Random(5)
    m = random_maze(rng, min_size=6, max_size=6)
    variants = expand_set(m)
    assert len(variants) == 8
    assert len({v.id for v in variants}) == 8
    assert all(len(v.blocked) == len(m.blocked) for v in variants)


def test_expand_set_symmetric_base_duplicates_grids():
    # diagonal-symmetric maze: identity and the diagonal flip coincide,
    # so duplicate grids appear while ids stay distinct
    m = parse_maze("S.#..\n.....\n#....\n.....\n....G", maze_id="sym")
    variants = expand_set(m)
    grids = [serialize_maze(v) for v in variants]
    assert len(set(grids)) < 8
    assert len({v.id for v in variants}) == 8
