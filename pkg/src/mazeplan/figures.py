"""Figure rendering for the CLI report paths (PNG files next to the CSVs)."""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
from matplotlib.patches import Circle, Rectangle

from .analysis import AnalysisReport
from .grid import Maze, State

WALL_COLOR = "#2b2b2b"
OPEN_COLOR = "#f4f2ec"
GOAL_COLOR = "#f2c233"
START_COLOR = "#2a6fdb"


def maze_figure(maze: Maze, path: str | Path, marks: dict[State, str] | None = None) -> Path:
    """Render one maze: walls dark, goal tile yellow, start as a blue dot."""
    n = maze.size
    fig, ax = plt.subplots(figsize=(n / 3, n / 3))
    for y in range(n):
        for x in range(n):
            s = State(x, y)
            color = WALL_COLOR if s in maze.blocked else OPEN_COLOR
            if s == maze.goal:
                color = GOAL_COLOR
            ax.add_patch(Rectangle((x, n - 1 - y), 1, 1, facecolor=color,
                                   edgecolor="#c9c5ba", linewidth=0.5))
    sx, sy = maze.start
    ax.add_patch(Circle((sx + 0.5, n - 1 - sy + 0.5), 0.3, color=START_COLOR))
    for s, color in (marks or {}).items():
        ax.add_patch(Circle((s.x + 0.5, n - 1 - s.y + 0.5), 0.18, color=color))
    ax.set_xlim(0, n)
    ax.set_ylim(0, n)
    ax.set_aspect("equal")
    ax.axis("off")
    ax.set_title(maze.id, fontsize=9)
    path = Path(path)
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)
    return path


def proportions_figure(report: AnalysisReport, path: str | Path) -> Path:
    """Favorable-choice proportion per trial with binomial error bars.

    The fitted learning curve from the trend regression is overlaid when
    that fit converged.
    """
    pts = report.proportions
    trials = [p.trial_number for p in pts]
    props = [p.proportion for p in pts]
    ses = [p.se for p in pts]

    fig, ax = plt.subplots(figsize=(6, 3.6))
    ax.errorbar(trials, props, yerr=ses, fmt="o-", color=START_COLOR,
                capsize=3, markersize=4, linewidth=1.2)
    if report.trend_fit.converged and len(report.trend_fit.coefficients) == 2:
        b0, b1 = report.trend_fit.coefficients
        xs = [t / 10 for t in range(10 * min(trials), 10 * max(trials) + 1)]
        ys = [1.0 / (1.0 + math.exp(-(b0 + b1 * x))) for x in xs]
        ax.plot(xs, ys, "--", color="#888888", linewidth=1, label="fitted curve")
        ax.legend(frameon=False, fontsize=8)
    ax.axhline(0.5, color="#bbbbbb", linewidth=0.8, linestyle=":")
    ax.set_xlabel("trial")
    ax.set_ylabel("proportion favorable")
    ax.set_ylim(0, 1)
    ax.set_xticks(trials)
    ax.spines["top"].set_visible(False)
    ax.spines["right"].set_visible(False)
    path = Path(path)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return path
