#!/usr/bin/env python3
"""Build the shipped stimulus bundle (6 base mazes x 8 transforms + practice).

Each base splits along the main diagonal into two route options of equal
optimal length. Two staggered wall chains near the goal force a single
backward jog (optimal = Manhattan + 2) in both halves, which pins down the
set of cells any admissible search must expand before committing to the
jog. The favorable half seals that region down to a corridor; the costly
half leaves it wide, padded with inert walls so both triangles hold the
same wall count. The designed cost gap therefore survives every transform
and both tie-break policies.

Run from the repo root:  python3 scripts/make_stimuli.py
"""

from __future__ import annotations

import sys
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(REPO / "src"))

from mazeplan.bundle import write_set
from mazeplan.design import validate_design
from mazeplan.grid import Maze, State, parse_maze, serialize_maze, validate_maze
from mazeplan.model import select_subtask
from mazeplan.search import TieBreakPolicy
from mazeplan.transforms import ALL_TRANSFORMS, apply_transform, expand_set, transform_state

OUT = REPO / "src" / "mazeplan" / "data" / "stimuli"

FAVORABLE_SUBGOAL = State(0, 1)   # every base favors the lower half


def render(n: int, walls: set[tuple[int, int]]) -> str:
    rows = []
    for y in range(n):
        row = []
        for x in range(n):
            if (x, y) == (0, 0):
                row.append("S")
            elif (x, y) == (n - 1, n - 1):
                row.append("G")
            elif (x, y) in walls:
                row.append("#")
            else:
                row.append(".")
        rows.append("".join(row))
    return "\n".join(rows)


def baffle_base(n: int, s: int, a: int, pads: list[tuple[int, int]]) -> set[tuple[int, int]]:
    """Wall set for one base.

    s: anti-diagonal index of the first chain; a: column of its gap. The
    second chain sits at s+3 with its gap one column left, forcing the jog.
    Chains are mirrored into the lower half; the lower pre-chain region is
    sealed down to the border corridor; pads rebalance the upper half.
    """
    walls: set[tuple[int, int]] = {(k, k) for k in range(1, n - 1)}

    def chain(line: int, gap_x: int) -> set[tuple[int, int]]:
        cells = {(x, line - x) for x in range(line // 2 + 1, min(n - 1, line) + 1)
                 if 0 <= line - x < x}
        return {c for c in cells if c[0] != gap_x}

    upper_chains = chain(s, a) | chain(s + 3, a - 1)
    walls |= upper_chains
    walls |= {(y, x) for x, y in upper_chains}       # mirrored chains, lower half
    # corridor seal, lower half; (1, a) stays open where the mirrored route
    # crosses column 1 on its way to the first gap
    walls |= {(1, y) for y in range(2, n - 1)} - {(1, a)}
    walls |= set(pads)                               # balance, upper half
    return walls


# name: (n, s, a, pads). Pad count must equal the seal count (n - 3); pads
# stay off row 0, off the gap columns' route, and off the band gaps.
BASES: dict[str, tuple[int, int, int, list[tuple[int, int]]]] = {
    "base1": (12, 15, 11, [(4, 1), (5, 1), (6, 1), (7, 1), (5, 2), (6, 2), (7, 2),
                           (9, 7), (11, 8)]),
    "base2": (12, 16, 11, [(4, 1), (4, 2), (5, 2), (5, 3), (8, 1), (9, 1), (9, 2),
                           (7, 5), (8, 5)]),
    "base3": (13, 17, 12, [(4, 1), (5, 1), (6, 1), (4, 2), (5, 2), (6, 2),
                           (8, 3), (8, 4), (10, 8), (10, 9)]),
    "base4": (13, 15, 12, [(3, 1), (4, 1), (5, 1), (6, 1), (6, 2), (6, 3),
                           (9, 7), (10, 6), (10, 7), (9, 3)]),
    "base5": (11, 13, 10, [(4, 1), (5, 1), (6, 1), (4, 2), (5, 2),
                           (8, 6), (8, 7), (10, 7)]),
    "base6": (11, 11, 9,  [(3, 1), (4, 2), (5, 3), (6, 1), (7, 2),
                           (10, 5), (10, 6)]),
}

PRACTICE = {
    "practice1": """\
S........
.####.##.
.....#...
####.#.#.
.....#.#.
.#####.#.
.......#.
.#######.
........G
""",
    "practice2": """\
S...#....
..#.#.##.
..#...#..
.#####.#.
...#...#.
.#...####
.#.#.....
.#.#####.
...#....G
""",
}


def check_base(maze: Maze) -> tuple[bool, str]:
    """Validate one base across all 8 transforms; returns (ok, summary)."""
    lines = []
    ok = True
    for t in ALL_TRANSFORMS:
        tm = apply_transform(maze, t)
        fav = transform_state(FAVORABLE_SUBGOAL, t, maze.size)
        rep = validate_design(tm)
        det = select_subtask(tm)
        mc = select_subtask(tm, TieBreakPolicy("stochastic", seed=2024), samples=64)
        det_ok = det.chosen.subtask.subgoal == fav and det.margin >= 3
        mc_ok = mc.chosen.subtask.subgoal == fav
        ok &= rep.passes and det_ok and mc_ok
        lines.append(
            f"    {t.value:<20} design={'ok' if rep.passes else 'FAIL'}"
            f" det margin {det.margin:5.1f}{'' if det_ok else ' <-- BAD'}"
            f" mc margin {mc.margin:5.1f}{'' if mc_ok else ' <-- BAD'}"
        )
    return ok, "\n".join(lines)


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    index = OUT / "index"
    if index.exists():
        index.unlink()

    favorable_lines = []
    all_ok = True
    for i, (name, (n, s, a, pads)) in enumerate(sorted(BASES.items()), start=1):
        walls = baffle_base(n, s, a, pads)
        base = parse_maze(render(n, walls), name)
        assert validate_maze(base).valid
        ok, summary = check_base(base)
        all_ok &= ok
        print(f"{name} (n={n}, chains at {s}/{s+3}, jog column {a}):"
              f" {'OK' if ok else 'FAILED'}")
        print(summary)

        mazes = expand_set(base)
        write_set(OUT, f"set{i}", name, mazes,
                  [t.value for t in ALL_TRANSFORMS])
        for maze, t in zip(mazes, ALL_TRANSFORMS):
            fav = transform_state(FAVORABLE_SUBGOAL, t, n)
            favorable_lines.append(f"{maze.id} {fav.x} {fav.y}\n")

    for name, text in PRACTICE.items():
        maze = parse_maze(text, name)
        assert validate_maze(maze).valid, f"{name} invalid"
        (OUT / f"{name}.maze").write_text(serialize_maze(maze))
        with open(index, "a") as fh:
            fh.write(f"practice {name} identity {name}.maze\n")

    (OUT / "favorable").write_text("".join(favorable_lines))
    print(f"\nwrote bundle to {OUT}")
    if not all_ok:
        raise SystemExit("some bases failed validation; bundle not usable")


if __name__ == "__main__":
    main()
