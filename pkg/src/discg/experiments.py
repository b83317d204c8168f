"""Convergence experiments: network size scaling and packet-loss robustness."""

from __future__ import annotations

import csv
import io
import math
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

from .instances import min_cut_function, random_min_cut, random_selection, selection_function
from .netsim import (
    GraphProcess,
    LossModel,
    NonConvergence,
    RunConfig,
    find_er_with_diameter,
    make_cycle,
    make_empty,
    make_fixed_er,
    run,
)
from .oracles import brute_force_min, centralized_cg

ORACLE_MAX_N = 12


@dataclass
class ExperimentSpec:
    experiment: str  # scaling | losses | verify
    sizes: Sequence[int] = (4, 6, 8, 10, 12)
    loss_probs: Sequence[float] = (0.1, 0.3, 0.5, 0.9)
    instances: int = 30
    seed: int = 0
    out: Optional[str] = None
    max_rounds: Optional[int] = None
    loss_n: int = 12
    p_edge: float = 0.25
    graph_seed: int = 1
    target_diameter: Optional[int] = None
    jobs: int = 1

    def __post_init__(self):
        if self.experiment not in ("scaling", "losses", "verify"):
            raise ValueError(f"unknown experiment {self.experiment!r}")
        if self.instances < 1:
            raise ValueError("instances per cell must be >= 1")


def nearest_rank(sorted_xs: Sequence, p: float):
    """Smallest value with at least p% of the sample at or below it."""
    rank = max(1, math.ceil(p / 100 * len(sorted_xs)))
    return sorted_xs[rank - 1]


@dataclass
class StatSummary:
    cell: object
    runs: int
    converged: int
    nonconverged: int
    mismatches: int
    median: Optional[int] = None
    q1: Optional[int] = None
    q3: Optional[int] = None
    whisker_low: Optional[int] = None
    whisker_high: Optional[int] = None
    outliers: tuple = ()

    @classmethod
    def from_rounds(cls, cell, rounds: Sequence[Optional[int]], mismatches: int = 0) -> "StatSummary":
        xs = sorted(r for r in rounds if r is not None)
        s = cls(cell, len(rounds), len(xs), len(rounds) - len(xs), mismatches)
        if not xs:
            return s
        s.median = nearest_rank(xs, 50)
        s.q1 = nearest_rank(xs, 25)
        s.q3 = nearest_rank(xs, 75)
        iqr = s.q3 - s.q1
        lo, hi = s.q1 - 1.5 * iqr, s.q3 + 1.5 * iqr
        inside = [x for x in xs if lo <= x <= hi]
        s.whisker_low, s.whisker_high = inside[0], inside[-1]
        s.outliers = tuple(x for x in xs if x < lo or x > hi)
        return s

    def row(self) -> list:
        return [
            self.cell, self.runs, self.converged, self.nonconverged, self.mismatches,
            self.median, self.q1, self.q3, self.whisker_low, self.whisker_high,
            " ".join(map(str, self.outliers)),
        ]


SUMMARY_HEADER = [
    "cell", "runs", "converged", "nonconverged", "oracle_mismatch",
    "median", "q1", "q3", "whisker_low", "whisker_high", "outliers",
]


@dataclass
class RunResult:
    cell: object
    seed: int
    n: int
    rounds: Optional[int]
    value: Optional[str]
    reference: Optional[str]
    mismatch: bool


def _run_task(task) -> RunResult:
    cell, seed, n, graph, p_loss, max_rounds = task
    f = min_cut_function(random_min_cut(n, seed))
    cfg = RunConfig(f, graph, LossModel(p_loss, seed), max_rounds=max_rounds, seed=seed)
    try:
        tr = run(cfg)
    except NonConvergence:
        return RunResult(cell, seed, n, None, None, None, False)
    ref = None
    mismatch = False
    if n <= ORACLE_MAX_N:
        _, best = brute_force_min(f)
        ref = str(best)
        mismatch = tr.f_star != best
    return RunResult(cell, seed, n, tr.converged_round, str(tr.f_star), ref, mismatch)


def _map(tasks, jobs):
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as ex:
            return list(ex.map(_run_task, tasks))
    return [_run_task(t) for t in tasks]


@dataclass
class ExperimentReport:
    spec: ExperimentSpec
    summaries: list
    runs: list
    graph: Optional[GraphProcess] = None
    notes: dict = field(default_factory=dict)

    @property
    def mismatches(self) -> int:
        return sum(r.mismatch for r in self.runs)

    def summary_csv(self) -> str:
        out = io.StringIO()
        w = csv.writer(out, lineterminator="\n")
        w.writerow(SUMMARY_HEADER)
        for s in self.summaries:
            w.writerow(s.row())
        return out.getvalue()

    def runs_csv(self) -> str:
        out = io.StringIO()
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["cell", "seed", "n", "rounds", "value", "reference", "mismatch"])
        for r in self.runs:
            w.writerow([r.cell, r.seed, r.n, r.rounds, r.value, r.reference, int(r.mismatch)])
        return out.getvalue()

    def write(self, path) -> None:
        path = Path(path)
        path.write_text(self.summary_csv())
        path.with_suffix(".runs.csv").write_text(self.runs_csv())


def _summarize(cells, runs) -> list:
    out = []
    for cell in cells:
        rs = [r for r in runs if r.cell == cell]
        out.append(StatSummary.from_rounds(cell, [r.rounds for r in rs], sum(r.mismatch for r in rs)))
    return out


def instance_seed(base: int, n: int, k: int) -> int:
    return base * 1_000_003 + n * 1009 + k


def experiment_scaling(spec: ExperimentSpec) -> ExperimentReport:
    """Cycle communication graphs of growing size; one cell per n."""
    tasks = []
    for n in spec.sizes:
        g = make_cycle(n) if n >= 2 else make_empty(n)
        for k in range(spec.instances):
            tasks.append((n, instance_seed(spec.seed, n, k), n, g, 0.0, spec.max_rounds))
    runs = _map(tasks, spec.jobs)
    report = ExperimentReport(spec, _summarize(list(spec.sizes), runs), runs)
    fit = median_fit(report.summaries)
    if fit is not None:
        report.notes["slope"], report.notes["intercept"] = fit
    return report


def median_fit(summaries) -> Optional[tuple]:
    pts = [(s.cell, s.median) for s in summaries if s.median is not None]
    if len(pts) < 2:
        return None
    res = statistics.linear_regression([p[0] for p in pts], [p[1] for p in pts])
    return res.slope, res.intercept


def loss_graph(spec: ExperimentSpec) -> GraphProcess:
    if spec.target_diameter is not None:
        _, g = find_er_with_diameter(spec.loss_n, spec.p_edge, spec.target_diameter,
                                     seeds=range(spec.graph_seed, spec.graph_seed + 10_000))
        return g
    return make_fixed_er(spec.loss_n, spec.p_edge, spec.graph_seed)


def experiment_losses(spec: ExperimentSpec) -> ExperimentReport:
    """Fixed nominal graph, one cell per loss probability, matched seeds across cells."""
    g = loss_graph(spec)
    n = spec.loss_n
    tasks = []
    for p in spec.loss_probs:
        for k in range(spec.instances):
            tasks.append((p, instance_seed(spec.seed, n, k), n, g, p, spec.max_rounds))
    runs = _map(tasks, spec.jobs)
    return ExperimentReport(spec, _summarize(list(spec.loss_probs), runs), runs, graph=g)


@dataclass
class TriangleResult:
    kind: str
    n: int
    seed: int
    brute: object
    centralized: object
    distributed: object
    rounds: Optional[int]

    @property
    def ok(self) -> bool:
        return self.brute == self.centralized == self.distributed


def experiment_verify(spec: ExperimentSpec, distributed: bool = True) -> list:
    """Brute force vs centralized vs distributed (cycle graph) on mixed instances."""
    out = []
    sizes = list(spec.sizes)
    for k in range(spec.instances):
        n = sizes[k % len(sizes)]
        seed = instance_seed(spec.seed, n, k)
        if k % 2 == 0:
            kind, f = "mincut", min_cut_function(random_min_cut(max(n, 2), seed))
        else:
            variant = "pairwise" if k % 4 == 1 else "displayed"
            kind, f = f"selection-{variant}", selection_function(random_selection(n, seed), variant)
        _, best = brute_force_min(f)
        cg = centralized_cg(f)
        dist = rounds = None
        if distributed:
            g = make_cycle(f.n) if f.n >= 2 else make_empty(f.n)
            try:
                tr = run(RunConfig(f, g, max_rounds=spec.max_rounds, seed=seed))
                dist, rounds = tr.f_star, tr.converged_round
            except NonConvergence:
                pass
        else:
            dist = best
        out.append(TriangleResult(kind, f.n, seed, best, cg.value, dist, rounds))
    return out


def verify_csv(results) -> str:
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["kind", "n", "seed", "brute", "centralized", "distributed", "rounds", "ok"])
    for r in results:
        w.writerow([r.kind, r.n, r.seed, r.brute, r.centralized, r.distributed, r.rounds, int(r.ok)])
    return out.getvalue()


FULL_SIZES = (8, 16, 24, 32, 40, 48)
