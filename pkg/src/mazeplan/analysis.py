"""Behavioral-data analysis: choice coding, proportions, logistic regression.

The regression is a from-scratch maximum-likelihood fit (Newton iterations
with step-halving) with Wald standard errors from the inverse observed
information, matching the coefficient/sd/p reporting convention of the
experiment writeup. Proportion series and coefficient tables are emitted as
CSV for downstream plotting.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .grid import Maze, State
from .model import Subtask, enumerate_subtasks
from .search import Plan

TRIAL_CSV_HEADER = [
    "participant_id", "trial_number", "maze_id", "first_move_x", "first_move_y",
    "favorable", "path_steps", "planning_ms", "total_ms",
]

GRADIENT_TOL = 1e-10
MAX_ITERATIONS = 100
SEPARATION_BOUND = 30.0


@dataclass(frozen=True)
class TrialRecord:
    participant_id: str
    trial_number: int
    maze_id: str
    first_move: State
    favorable: int
    path_steps: int
    planning_ms: int
    total_ms: int

    def __post_init__(self) -> None:
        if self.favorable not in (0, 1):
            raise ValueError(f"favorable must be 0/1, got {self.favorable}")
        if self.trial_number < 1:
            raise ValueError(f"trial_number must be >= 1, got {self.trial_number}")


@dataclass(frozen=True)
class RegressionResult:
    coefficients: tuple[float, ...]
    standard_errors: tuple[float, ...]
    z_values: tuple[float, ...]
    p_values: tuple[float, ...]
    log_likelihood: float
    iterations: int
    converged: bool
    diagnostic: str = ""


@dataclass(frozen=True)
class ProportionPoint:
    trial_number: int
    n: int
    proportion: float
    se: float


def infer_choice(maze: Maze, path: Plan) -> Subtask:
    """Which subtask a navigation path committed to, read off its first move."""
    if len(path.states) < 2:
        raise ValueError("path must contain at least one move")
    if path.states[0] != maze.start:
        raise ValueError(f"path starts at {path.states[0]}, not maze start {maze.start}")
    entered = path.states[1]
    for subtask in enumerate_subtasks(maze, strict=False):
        if subtask.subgoal == entered:
            return subtask
    raise ValueError(f"second state {entered} is not a subgoal of maze {maze.id!r}")


def _log_likelihood(X: np.ndarray, y: np.ndarray, beta: np.ndarray) -> float:
    eta = X @ beta
    return float(y @ eta - np.logaddexp(0.0, eta).sum())


def fit_logistic(design, outcomes) -> RegressionResult:
    """Maximum-likelihood logistic regression by Newton's method.

    `design` is the full predictor matrix including any intercept column;
    `outcomes` is a 0/1 vector. Iterates until the gradient max-norm falls
    below 1e-10 (or 100 iterations), halving the step whenever it would
    decrease the log-likelihood. Standard errors come from the inverse
    observed information at the optimum. Separation (coefficients running
    away or a singular information matrix) yields a non-converged result
    with a diagnostic rather than an exception.
    """
    X = np.atleast_2d(np.asarray(design, dtype=float))
    y = np.asarray(outcomes, dtype=float).ravel()
    if X.shape[0] != y.shape[0]:
        raise ValueError(f"design rows {X.shape[0]} != outcomes {y.shape[0]}")
    if X.shape[0] < X.shape[1]:
        raise ValueError("fewer rows than predictors")
    if not np.all((y == 0) | (y == 1)):
        raise ValueError("outcomes must be 0/1")

    k = X.shape[1]
    beta = np.zeros(k)
    ll = _log_likelihood(X, y, beta)
    diagnostic = ""
    converged = False
    iterations = 0
    info = np.eye(k)

    for iterations in range(1, MAX_ITERATIONS + 1):
        p = 1.0 / (1.0 + np.exp(-(X @ beta)))
        grad = X.T @ (y - p)
        if np.max(np.abs(grad)) < GRADIENT_TOL:
            iterations -= 1
            converged = True
            break
        w = p * (1.0 - p)
        info = X.T @ (X * w[:, None])
        try:
            step = np.linalg.solve(info, grad)
        except np.linalg.LinAlgError:
            diagnostic = "information matrix singular (separation or collinearity)"
            break
        # step-halving: never accept a decrease in log-likelihood
        scale = 1.0
        while scale > 1e-8:
            candidate = beta + scale * step
            cand_ll = _log_likelihood(X, y, candidate)
            if cand_ll >= ll - 1e-12:
                beta = candidate
                ll = cand_ll
                break
            scale /= 2.0
        else:
            diagnostic = "step-halving failed to improve the log-likelihood"
            break
        if np.max(np.abs(beta)) > SEPARATION_BOUND:
            diagnostic = (
                "coefficient magnitude exceeds bound; complete or "
                "quasi-complete separation suspected"
            )
            break
    else:
        diagnostic = f"no convergence within {MAX_ITERATIONS} iterations"

    p = 1.0 / (1.0 + np.exp(-(X @ beta)))
    w = p * (1.0 - p)
    info = X.T @ (X * w[:, None])
    # a vanishing information matrix means the likelihood is flat because
    # the fitted probabilities are pinned at 0/1: separation (or degenerate
    # all-0/all-1 outcomes), not a genuine optimum
    if converged and float(np.min(np.linalg.eigvalsh(info))) < 1e-8:
        converged = False
        diagnostic = (
            "information matrix effectively singular; complete or "
            "quasi-complete separation suspected"
        )
    try:
        cov = np.linalg.inv(info)
        ses = np.sqrt(np.clip(np.diag(cov), 0.0, None))
    except np.linalg.LinAlgError:
        ses = np.full(k, float("nan"))
        converged = False
        diagnostic = diagnostic or "information matrix singular at optimum"

    zs = tuple(
        float(b / s) if s > 0 and math.isfinite(s) else float("nan")
        for b, s in zip(beta, ses)
    )
    ps = tuple(wald_p(b, s) if s > 0 and math.isfinite(s) else float("nan")
               for b, s in zip(beta, ses))
    return RegressionResult(
        coefficients=tuple(float(b) for b in beta),
        standard_errors=tuple(float(s) for s in ses),
        z_values=zs,
        p_values=ps,
        log_likelihood=ll,
        iterations=iterations,
        converged=converged,
        diagnostic=diagnostic,
    )


def wald_p(coefficient: float, standard_error: float) -> float:
    """Two-sided normal p-value for coefficient / standard_error."""
    if standard_error <= 0:
        raise ValueError("standard error must be positive")
    z = abs(coefficient / standard_error)
    # 2*(1 - Phi(z)) computed via the complementary error function, which is
    # accurate in the tail well beyond the 1e-7 needed here.
    return math.erfc(z / math.sqrt(2.0))


def proportions_by_trial(records: list[TrialRecord]) -> list[ProportionPoint]:
    """Mean favorable-choice rate per trial number, with binomial SEs."""
    by_trial: dict[int, list[int]] = {}
    for rec in records:
        by_trial.setdefault(rec.trial_number, []).append(rec.favorable)
    out = []
    for trial in sorted(by_trial):
        values = by_trial[trial]
        n = len(values)
        p = sum(values) / n
        out.append(
            ProportionPoint(
                trial_number=trial, n=n, proportion=p, se=math.sqrt(p * (1 - p) / n)
            )
        )
    return out


@dataclass(frozen=True)
class AnalysisReport:
    last_trial_fit: RegressionResult
    trend_fit: RegressionResult
    proportions: tuple[ProportionPoint, ...]
    last_trial: int
    n_records: int
    n_participants: int


def run_paper_analyses(records: list[TrialRecord]) -> AnalysisReport:
    """The two standard fits plus the per-trial proportion series.

    (a) intercept-only on the final trial's choices, and (b) intercept plus
    trial number over all trials, trial numbers entering untransformed.
    """
    if not records:
        raise ValueError("no trial records")
    last_trial = max(r.trial_number for r in records)
    last = [r for r in records if r.trial_number == last_trial]

    y_last = [r.favorable for r in last]
    fit_last = fit_logistic([[1.0]] * len(last), y_last)

    design = [[1.0, float(r.trial_number)] for r in records]
    y_all = [r.favorable for r in records]
    fit_trend = fit_logistic(design, y_all)

    return AnalysisReport(
        last_trial_fit=fit_last,
        trend_fit=fit_trend,
        proportions=tuple(proportions_by_trial(records)),
        last_trial=last_trial,
        n_records=len(records),
        n_participants=len({r.participant_id for r in records}),
    )


# --- trial CSV round-trip ---------------------------------------------------

def write_trials_csv(records: list[TrialRecord], path: str | Path | None = None) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(TRIAL_CSV_HEADER)
    for r in records:
        writer.writerow([
            r.participant_id, r.trial_number, r.maze_id, r.first_move.x,
            r.first_move.y, r.favorable, r.path_steps, r.planning_ms, r.total_ms,
        ])
    text = buf.getvalue()
    if path is not None:
        Path(path).write_text(text)
    return text


def read_trials_csv(source: str | Path) -> list[TrialRecord]:
    """Parse a trial CSV; `source` may be a path or the CSV text itself."""
    if isinstance(source, Path) or "\n" not in str(source):
        text = Path(source).read_text()
    else:
        text = str(source)
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header != TRIAL_CSV_HEADER:
        raise ValueError(f"unexpected trial CSV header: {header}")
    records = []
    for row in reader:
        if not row:
            continue
        records.append(TrialRecord(
            participant_id=row[0],
            trial_number=int(row[1]),
            maze_id=row[2],
            first_move=State(int(row[3]), int(row[4])),
            favorable=int(row[5]),
            path_steps=int(row[6]),
            planning_ms=int(row[7]),
            total_ms=int(row[8]),
        ))
    return records


# --- report rendering -------------------------------------------------------

def coefficients_csv(report: AnalysisReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["analysis", "term", "estimate", "se", "z", "p", "converged"])
    fits = [
        ("last_trial_intercept_only", ["intercept"], report.last_trial_fit),
        ("trend_intercept_trial", ["intercept", "trial_number"], report.trend_fit),
    ]
    for name, terms, fit in fits:
        for term, b, s, z, p in zip(
            terms, fit.coefficients, fit.standard_errors, fit.z_values, fit.p_values
        ):
            writer.writerow([
                name, term, f"{b:.6f}", f"{s:.6f}", f"{z:.4f}", f"{p:.6f}",
                int(fit.converged),
            ])
    return buf.getvalue()


def proportions_csv(points: list[ProportionPoint] | tuple[ProportionPoint, ...]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["trial", "n", "proportion", "se"])
    for pt in points:
        writer.writerow([pt.trial_number, pt.n, f"{pt.proportion:.6f}", f"{pt.se:.6f}"])
    return buf.getvalue()


def report_text(report: AnalysisReport) -> str:
    lines = [
        f"records: {report.n_records} from {report.n_participants} participants",
        "",
        f"(a) choice ~ intercept, trial {report.last_trial} only",
    ]
    for term, fit in (("intercept", report.last_trial_fit),):
        b, s, p = fit.coefficients[0], fit.standard_errors[0], fit.p_values[0]
        lines.append(f"    {term:<14} {b:7.3f}  (sd={s:.3f}, p={p:.3f})"
                     + ("" if fit.converged else "  [not converged: " + fit.diagnostic + "]"))
    lines.append("")
    lines.append("(b) choice ~ intercept + trial_number, all trials")
    fit = report.trend_fit
    for i, term in enumerate(("intercept", "trial_number")):
        b, s, p = fit.coefficients[i], fit.standard_errors[i], fit.p_values[i]
        lines.append(f"    {term:<14} {b:7.3f}  (sd={s:.3f}, p={p:.3f})"
                     + ("" if fit.converged else "  [not converged: " + fit.diagnostic + "]"))
    lines.append("")
    lines.append("favorable-choice proportion by trial")
    for pt in report.proportions:
        bar = "#" * round(pt.proportion * 40)
        lines.append(
            f"    trial {pt.trial_number:>2}  {pt.proportion:5.3f} +/- {pt.se:.3f}  {bar}"
        )
    return "\n".join(lines) + "\n"
