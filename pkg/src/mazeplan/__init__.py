"""Resource-rational maze planning: models, stimuli, experiment, analysis."""

from .grid import Maze, State, parse_maze, serialize_maze, validate_maze
from .transforms import Transform, apply_transform, expand_set
from .search import TieBreakPolicy, astar, bfs_oracle, expected_reward, manhattan
from .model import enumerate_subtasks, evaluate_subtask, predict_bundle, select_subtask
from .design import validate_design
from .analysis import fit_logistic, proportions_by_trial, run_paper_analyses, wald_p

__all__ = [
    "Maze", "State", "parse_maze", "serialize_maze", "validate_maze",
    "Transform", "apply_transform", "expand_set",
    "TieBreakPolicy", "astar", "bfs_oracle", "expected_reward", "manhattan",
    "enumerate_subtasks", "evaluate_subtask", "predict_bundle", "select_subtask",
    "validate_design",
    "fit_logistic", "proportions_by_trial", "run_paper_analyses", "wald_p",
]

__version__ = "0.1.0"
