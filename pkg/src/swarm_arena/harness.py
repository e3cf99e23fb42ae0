"""Evaluation plans, deterministic run matrices, success rates and pairwise comparisons."""
from __future__ import annotations

import dataclasses
import enum
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Callable, Optional

import numpy as np

from . import benchfns, stats
from .benchfns import SearchSpace
from .errors import InvalidConfigError, MissingBaselineError
from .optimizers import ALGORITHM_IDS, OptimizerConfig, RunRecord, algorithm_key, minimize

log = logging.getLogger(__name__)

MASK64 = (1 << 64) - 1
EVAL1_DIMS = (10, 30, 60)
EVAL2_SPACES = ("R1", "R2", "R3")


class EvalKind(enum.IntEnum):
    EVAL1 = 1
    EVAL2 = 2
    EVAL3 = 3


@dataclass(frozen=True)
class Tolerance:
    abs: float = 1e-6
    rel: float = 1e-6


@dataclass(frozen=True)
class Variant:
    """One dimension-or-space setting for a problem: label plus concrete box."""

    label: str
    space: SearchSpace

    @property
    def dim(self) -> int:
        return self.space.dim


@dataclass(frozen=True)
class EvaluationPlan:
    kind: EvalKind
    algorithms: tuple
    problems: tuple
    variants: dict  # problem id -> tuple of Variant
    runs: int = 30
    config: OptimizerConfig = field(default_factory=OptimizerConfig)
    tolerance: Tolerance = field(default_factory=Tolerance)
    master_seed: int = 0
    sources: tuple = ()  # Eval3: the plans whose outputs it aggregates

    def cells(self):
        """Planned ``(problem, algorithm, variant_index, variant, run)`` tuples in key order."""
        for prob in self.problems:
            for alg in self.algorithms:
                for vi, variant in enumerate(self.variants[prob]):
                    for run in range(self.runs):
                        yield prob, alg, vi, variant, run

    def cell_count(self) -> int:
        if self.kind == EvalKind.EVAL3:
            return sum(src.cell_count() for src in self.sources)
        return len(self.algorithms) * self.runs * sum(len(self.variants[p]) for p in self.problems)

    def echo(self) -> dict:
        """JSON-friendly description of the plan."""
        out = {
            "kind": int(self.kind),
            "algorithms": list(self.algorithms),
            "problems": list(self.problems),
            "variants": {p: [{"label": v.label, "lower": list(v.space.lower), "upper": list(v.space.upper)}
                             for v in self.variants[p]] for p in self.problems},
            "runs": self.runs,
            "config": self.config.to_dict(),
            "tolerance": dataclasses.asdict(self.tolerance),
            "master_seed": self.master_seed,
        }
        if self.sources:
            out["sources"] = [src.echo() for src in self.sources]
        return out


def plan_from_echo(data: dict) -> EvaluationPlan:
    variants = {
        p: tuple(Variant(v["label"], SearchSpace(tuple(v["lower"]), tuple(v["upper"]), v["label"])) for v in vs)
        for p, vs in data["variants"].items()
    }
    return EvaluationPlan(
        kind=EvalKind(data["kind"]),
        algorithms=tuple(data["algorithms"]),
        problems=tuple(data["problems"]),
        variants=variants,
        runs=int(data["runs"]),
        config=OptimizerConfig.from_dict(data["config"]),
        tolerance=Tolerance(**data["tolerance"]),
        master_seed=int(data["master_seed"]),
        sources=tuple(plan_from_echo(s) for s in data.get("sources", ())),
    )


def _eval1_variants(prob: str, dims) -> tuple:
    spec = benchfns.problem(prob)
    if spec.is_variable:
        return tuple(Variant(f"d{d}", benchfns.default_space(prob, d)) for d in dims)
    return (Variant(f"d{spec.fixed_dim}", benchfns.default_space(prob)),)


def _eval2_variants(prob: str, labels) -> tuple:
    return tuple(Variant(lab, benchfns.named_space(lab, 2)) for lab in labels)


_OVERRIDES = {"algorithms", "problems", "runs", "iterations", "population_size", "master_seed",
              "tol_abs", "tol_rel", "dims", "spaces", "config"}


def plan_evaluation(kind, overrides: Optional[dict] = None) -> EvaluationPlan:
    """Build the plan for Evaluation 1, 2 or 3.

    Evaluation 1 runs variable-dimension problems at 10/30/60 variables and
    fixed-dimension problems at their native size, all on default bounds.
    Evaluation 2 runs every problem in two variables on R1, R2 and R3.
    Evaluation 3 runs nothing itself; it carries both plans as ``sources``.
    """
    kind = EvalKind(int(kind))
    ov = dict(overrides or {})
    unknown = set(ov) - _OVERRIDES
    if unknown:
        raise InvalidConfigError(f"unknown plan overrides: {', '.join(sorted(unknown))}")

    algorithms = tuple(algorithm_key(a) for a in ov.get("algorithms", ALGORITHM_IDS))
    problems = tuple(benchfns.problem(p).id for p in ov.get("problems", benchfns.PROBLEM_IDS))
    if not algorithms or not problems:
        raise InvalidConfigError("a plan needs at least one algorithm and one problem")
    if len(set(algorithms)) != len(algorithms) or len(set(problems)) != len(problems):
        raise InvalidConfigError("algorithms and problems must not repeat")
    runs = ov.get("runs", 30)
    if not isinstance(runs, (int, np.integer)) or runs < 1:
        raise InvalidConfigError(f"runs must be an integer >= 1, got {runs!r}")
    base = ov.get("config", OptimizerConfig())
    if not isinstance(base, OptimizerConfig):
        base = OptimizerConfig.from_dict(base)
    config = dataclasses.replace(
        base,
        iterations=ov.get("iterations", base.iterations),
        population_size=ov.get("population_size", base.population_size),
    )
    tol = Tolerance(ov.get("tol_abs", 1e-6), ov.get("tol_rel", 1e-6))
    if tol.abs < 0 or tol.rel < 0:
        raise InvalidConfigError("tolerances must be non-negative")
    seed = int(ov.get("master_seed", 0))
    if not 0 <= seed <= MASK64:
        raise InvalidConfigError("master_seed must fit in an unsigned 64-bit integer")

    common = dict(algorithms=algorithms, problems=problems, runs=int(runs), config=config,
                  tolerance=tol, master_seed=seed)
    if kind == EvalKind.EVAL1:
        dims = tuple(ov.get("dims", EVAL1_DIMS))
        if not dims or any(int(d) < 1 for d in dims):
            raise InvalidConfigError("dims must be a non-empty list of positive integers")
        return EvaluationPlan(kind, variants={p: _eval1_variants(p, dims) for p in problems}, **common)
    if kind == EvalKind.EVAL2:
        labels = tuple(ov.get("spaces", EVAL2_SPACES))
        if not labels or any(lab not in benchfns.NAMED_RANGES for lab in labels):
            raise InvalidConfigError(f"spaces must be drawn from {', '.join(benchfns.NAMED_RANGES)}")
        return EvaluationPlan(kind, variants={p: _eval2_variants(p, labels) for p in problems}, **common)
    sources = (plan_evaluation(EvalKind.EVAL1, ov), plan_evaluation(EvalKind.EVAL2, ov))
    return EvaluationPlan(kind, variants={p: () for p in problems}, sources=sources, **common)


def splitmix64(x: int) -> int:
    """One SplitMix64 step: add the golden gamma, then the two xor-shift-multiply rounds."""
    z = (x + 0x9E3779B97F4A7C15) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def mix_seed(*values: int) -> int:
    """``h = splitmix64(values[0])``, then ``h = splitmix64(h ^ v)`` for each later value."""
    h = splitmix64(int(values[0]) & MASK64)
    for value in values[1:]:
        h = splitmix64(h ^ (int(value) & MASK64))
    return h


def trial_seed(master_seed: int, algorithm_id: str, problem_id: str, variant_index: int, run_index: int) -> int:
    """Seed for one trial: :func:`mix_seed` over, in order, the master seed, the
    algorithm code (position in woa, bsa, fdo, pso, ff), the problem number
    (P7 -> 7), the variant index and the run index.
    """
    return mix_seed(master_seed, ALGORITHM_IDS.index(algorithm_key(algorithm_id)),
                    benchfns.problem(problem_id).index, variant_index, run_index)


@dataclass
class RunMatrix:
    plan: EvaluationPlan
    records: list
    created: str = ""

    def key(self, rec: RunRecord):
        return rec.problem_id, rec.algorithm_id, rec.variant, rec.run_index

    def __len__(self):
        return len(self.records)

    def select(self, problem=None, algorithm=None, variant=None):
        return [r for r in self.records
                if (problem is None or r.problem_id == problem)
                and (algorithm is None or r.algorithm_id == algorithm)
                and (variant is None or r.variant == variant)]

    def variant_labels(self, problem):
        return [v.label for v in self.plan.variants[problem]]


class CellError(RuntimeError):
    """An optimizer failure annotated with the cell that raised it."""


def _run_cell(args):
    prob, alg, vi, variant, run, config, master_seed, measure_time, measure_memory = args
    seed = trial_seed(master_seed, alg, prob, vi, run)
    try:
        rec = minimize(alg, prob, variant.space, config, seed,
                       measure_time=measure_time, measure_memory=measure_memory)
    except Exception as exc:
        raise CellError(f"cell (problem={prob}, algorithm={alg}, variant={variant.label}, run={run}): {exc}") from exc
    rec.variant = variant.label
    rec.run_index = run
    return rec


def _sort_key(plan: EvaluationPlan):
    def key(rec):
        labels = [v.label for v in plan.variants[rec.problem_id]]
        return (plan.problems.index(rec.problem_id), plan.algorithms.index(rec.algorithm_id),
                labels.index(rec.variant), rec.run_index)
    return key


def execute(plan: EvaluationPlan, progress: Optional[Callable] = None, parallel: int = 1,
            measure_time: bool = False, measure_memory: bool = False) -> RunMatrix:
    """Run every planned cell and return the sorted matrix.

    ``progress(done, total, record)`` is called after each finished cell.
    Memory profiling forces sequential execution.
    """
    if plan.kind == EvalKind.EVAL3:
        raise InvalidConfigError("Evaluation 3 aggregates Evaluation 1/2 matrices; use success_rates on them")
    jobs = [(prob, alg, vi, variant, run, plan.config, plan.master_seed, measure_time, measure_memory)
            for prob, alg, vi, variant, run in plan.cells()]
    total = len(jobs)
    workers = 1 if measure_memory else max(1, int(parallel))
    records = []
    if workers == 1:
        results = map(_run_cell, jobs)
        pool = None
    else:
        pool = ProcessPoolExecutor(max_workers=workers)
        results = pool.map(_run_cell, jobs, chunksize=max(1, total // (workers * 8)))
    try:
        for done, rec in enumerate(results, 1):
            records.append(rec)
            if progress is not None:
                progress(done, total, rec)
    finally:
        if pool is not None:
            pool.shutdown()
    records.sort(key=_sort_key(plan))
    return RunMatrix(plan, records, datetime.now(timezone.utc).isoformat())


def success(record: RunRecord, spec: benchfns.ProblemSpec = None, tol: Tolerance = Tolerance()) -> bool:
    """``|best - global minimum| <= tol.abs + tol.rel * |global minimum|``."""
    spec = spec or benchfns.problem(record.problem_id)
    if spec.id != record.problem_id:
        raise ValueError(f"record is for {record.problem_id}, spec is {spec.id}")
    target = spec.minimum(record.dim)
    return bool(abs(record.best_fitness - target) <= tol.abs + tol.rel * abs(target))


@dataclass
class SuccessTable:
    fractions: dict  # (problem, algorithm, variant) -> fraction in [0, 1]
    minimized_by_any: dict  # (problem, variant) -> bool

    def by_problem(self) -> dict:
        """Pooled success fraction per problem across algorithms and variants."""
        return _pool(self.fractions, 0)

    def by_algorithm(self) -> dict:
        return _pool(self.fractions, 1)


def _pool(fractions, axis):
    acc = {}
    for key, frac in fractions.items():
        acc.setdefault(key[axis], []).append(frac)
    return {k: float(np.mean(v)) for k, v in acc.items()}


def success_rates(matrix: RunMatrix, tol: Optional[Tolerance] = None) -> SuccessTable:
    tol = tol or matrix.plan.tolerance
    hits = {}
    for rec in matrix.records:
        hits.setdefault((rec.problem_id, rec.algorithm_id, rec.variant), []).append(success(rec, tol=tol))
    fractions = {k: float(np.mean(v)) for k, v in hits.items()}
    any_hit = {}
    for (prob, _alg, var), frac in fractions.items():
        any_hit[prob, var] = any_hit.get((prob, var), False) or frac > 0
    return SuccessTable(fractions, any_hit)


def evaluation3(matrices, tol: Optional[Tolerance] = None) -> SuccessTable:
    """Success table over completed Evaluation 1/2 matrices (variant labels never collide)."""
    fractions, any_hit = {}, {}
    for m in matrices:
        table = success_rates(m, tol)
        fractions.update(table.fractions)
        any_hit.update(table.minimized_by_any)
    return SuccessTable(fractions, any_hit)


@dataclass(frozen=True)
class ComparisonRow:
    variant: str
    problem: str
    rival: str
    result: stats.WilcoxonResult


def compare(matrix: RunMatrix, baseline: str, alpha: float = 0.05, metric: str = "fitness", rivals=None):
    """Pair the baseline's runs with each rival's, run by run, per (variant, problem).

    Returns ``(rows, summaries)`` where summaries hold the +/=/- footers per
    (rival, variant). ``metric`` is ``"fitness"`` (final best) or ``"time"``.
    ``rivals`` defaults to every other planned algorithm.
    """
    baseline = algorithm_key(baseline)
    if baseline not in matrix.plan.algorithms or not matrix.select(algorithm=baseline):
        raise MissingBaselineError(f"baseline {baseline!r} has no runs in this matrix")
    if metric not in ("fitness", "time"):
        raise ValueError("metric must be 'fitness' or 'time'")
    field_name = "best_fitness" if metric == "fitness" else "wall_time_s"

    def values(prob, alg, var):
        recs = sorted(matrix.select(prob, alg, var), key=lambda r: r.run_index)
        return [getattr(r, field_name) for r in recs]

    rows = []
    variant_order = []
    for prob in matrix.plan.problems:
        for v in matrix.plan.variants[prob]:
            if v.label not in variant_order:
                variant_order.append(v.label)
    if rivals is None:
        rivals = [a for a in matrix.plan.algorithms if a != baseline] or [baseline]
    else:
        rivals = [algorithm_key(a) for a in rivals]
    for var in variant_order:
        for prob in matrix.plan.problems:
            if var not in matrix.variant_labels(prob):
                continue
            base_vals = values(prob, baseline, var)
            for rival in rivals:
                res = stats.wilcoxon_signed_rank(base_vals, values(prob, rival, var), alpha)
                rows.append(ComparisonRow(var, prob, rival, res))

    summaries = []
    for rival in rivals:
        for var in variant_order:
            verdicts = {r.problem: r.result.verdict for r in rows if r.rival == rival and r.variant == var}
            if not verdicts:
                continue
            plus, equal, minus = stats.tally(verdicts.values())
            summaries.append(stats.ComparisonSummary(rival, var, verdicts, plus, equal, minus))
    return rows, summaries
