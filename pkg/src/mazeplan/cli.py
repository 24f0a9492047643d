"""Command-line interface: predict | validate | transform | analyze | serve."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .analysis import (
    coefficients_csv,
    proportions_csv,
    read_trials_csv,
    report_text,
    run_paper_analyses,
)
from .bundle import load_bundle, write_set
from .design import validate_design
from .grid import parse_maze, validate_maze
from .model import predict_bundle, prediction_table
from .search import TieBreakPolicy
from .session import ExperimentConfig, SessionStore
from .transforms import ALL_TRANSFORMS, expand_set

DEFAULT_BUNDLE = Path(__file__).parent / "data" / "stimuli"


def _policy(args: argparse.Namespace) -> TieBreakPolicy:
    if args.mode == "mc":
        return TieBreakPolicy("stochastic", seed=args.seed)
    return TieBreakPolicy("deterministic")


def _add_model_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--mode", choices=("det", "mc"), default="det",
                        help="tie-break policy: deterministic or Monte Carlo")
    parser.add_argument("--samples", type=int, default=128,
                        help="Monte Carlo samples per search segment")
    parser.add_argument("--seed", type=int, default=0, help="random seed")


def cmd_predict(args: argparse.Namespace) -> int:
    bundle = load_bundle(args.bundle)
    mazes = bundle.scored_mazes()
    result = predict_bundle(mazes, _policy(args),
                            args.samples if args.mode == "mc" else 1)
    table = prediction_table(result.predictions, include_se=args.mode == "mc")
    if args.output:
        Path(args.output).write_text(table)
    else:
        sys.stdout.write(table)
    for maze_id, message in result.errors:
        print(f"error: {maze_id}: {message}", file=sys.stderr)
    return 1 if result.errors else 0


def cmd_validate(args: argparse.Namespace) -> int:
    bundle = load_bundle(args.bundle)
    failures = 0
    out_dir = Path(args.output) if args.output else None
    if out_dir:
        out_dir.mkdir(parents=True, exist_ok=True)
    print(f"{'maze':<32} {'structural':<12} {'design':<8} walls(U/L) length(U/L)")
    for maze in bundle.scored_mazes() + bundle.practice:
        structural = validate_maze(maze)
        is_practice = maze in bundle.practice
        line = f"{maze.id:<32} {'ok' if structural.valid else 'FAIL':<12}"
        if structural.valid and not is_practice:
            report = validate_design(maze)
            line += (f" {'ok' if report.passes else 'FAIL':<8}"
                     f" {report.walls_upper_triangle}/{report.walls_lower_triangle}"
                     f"       {report.optimal_length_upper}/{report.optimal_length_lower}")
            if not report.passes:
                failures += 1
                line += "  [" + "; ".join(report.failures()) + "]"
        elif is_practice:
            line += " -"
        if not structural.valid:
            failures += 1
            line += "  [" + "; ".join(structural.failures) + "]"
        print(line)
        if out_dir and args.figures:
            from .figures import maze_figure
            maze_figure(maze, out_dir / f"{maze.id}.png")
    if failures:
        print(f"{failures} maze(s) failed", file=sys.stderr)
    return 1 if failures else 0


def cmd_transform(args: argparse.Namespace) -> int:
    text = Path(args.maze).read_text()
    base = parse_maze(text, maze_id=Path(args.maze).stem)
    report = validate_maze(base)
    if not report.valid:
        print(f"error: {base.id}: " + "; ".join(report.failures), file=sys.stderr)
        return 1
    mazes = expand_set(base)
    written = write_set(args.output, args.set_id or base.id,
                        args.base_id or base.id, mazes,
                        [t.value for t in ALL_TRANSFORMS])
    print(f"wrote {len(written)} mazes + index entries to {args.output}")
    return 0


def cmd_analyze(args: argparse.Namespace) -> int:
    records = read_trials_csv(Path(args.trials))
    report = run_paper_analyses(records)
    out_dir = Path(args.output)
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "coefficients.csv").write_text(coefficients_csv(report))
    (out_dir / "proportions.csv").write_text(proportions_csv(report.proportions))
    text = report_text(report)
    (out_dir / "report.txt").write_text(text)
    sys.stdout.write(text)
    if not args.no_figures:
        from .figures import proportions_figure
        proportions_figure(report, out_dir / "proportions.png")
    print(f"\nwrote report files to {out_dir}")
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .server import create_app

    bundle = load_bundle(args.bundle)
    bundle.require_experiment_shape()
    config = ExperimentConfig(
        bundle_dir=str(args.bundle),
        out_dir=args.out,
        planning_cap_ms=args.planning_cap_ms,
        rng_seed=args.seed,
    )
    store = SessionStore(bundle, config, bundle.favorable)
    static = args.static
    if static is None:
        candidate = Path(__file__).parent.parent.parent.parent / "frontend" / "dist"
        static = candidate if candidate.is_dir() else None
    app = create_app(store, static)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mazeplan",
        description="Maze planning model, stimulus tooling, experiment service, "
                    "and behavioral analysis.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("predict", help="model predictions for a stimulus bundle")
    p.add_argument("bundle", nargs="?", default=DEFAULT_BUNDLE,
                   help="bundle directory (default: shipped stimuli)")
    p.add_argument("-o", "--output", help="write CSV here instead of stdout")
    _add_model_flags(p)
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("validate", help="structural and design validation")
    p.add_argument("bundle", nargs="?", default=DEFAULT_BUNDLE)
    p.add_argument("-o", "--output", help="directory for figures")
    p.add_argument("--figures", action="store_true",
                   help="render each maze to PNG (needs -o)")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("transform", help="expand one base maze into its 8 variants")
    p.add_argument("maze", help="path to a .maze file")
    p.add_argument("-o", "--output", required=True, help="output bundle directory")
    p.add_argument("--set-id", help="set id for index entries")
    p.add_argument("--base-id", help="base id for index entries")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("analyze", help="run the behavioral analyses on a trial CSV")
    p.add_argument("trials", help="trial CSV path")
    p.add_argument("-o", "--output", default="analysis_out",
                   help="directory for report files (default: analysis_out)")
    p.add_argument("--no-figures", action="store_true", help="skip PNG rendering")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("serve", help="run the experiment session service")
    p.add_argument("--bundle", default=DEFAULT_BUNDLE, help="stimulus bundle directory")
    p.add_argument("--out", default="experiment_out", help="session persistence directory")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--seed", type=int, default=0, help="scheduling seed")
    p.add_argument("--planning-cap-ms", type=int, default=60_000)
    p.add_argument("--static", help="static UI directory (default: frontend/dist if present)")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
