"""Wall-time and peak-memory measurement, plus per-problem cost reports."""
from __future__ import annotations

import time
import tracemalloc
import warnings
from collections import defaultdict
from dataclasses import dataclass
from typing import Callable

import numpy as np


@dataclass(frozen=True)
class CostSample:
    wall_time_s: float = 0.0
    peak_memory_bytes: int = 0
    profiling_enabled: bool = False


def timed(task: Callable):
    """Run ``task()`` and return ``(result, seconds)`` on the monotonic clock."""
    start = time.perf_counter()
    result = task()
    return result, time.perf_counter() - start


def peak_memory(task: Callable, enabled: bool = True):
    """Run ``task()`` and return ``(result, peak_bytes)``.

    The peak is the high-water mark of bytes allocated while the task ran,
    net of what was live before it started. tracemalloc sees numpy buffers;
    the compiled kernels write into caller-allocated arrays, so they are
    covered too. Returns 0 when disabled or when tracing cannot be started.
    Not meaningful under concurrent trials; the harness runs profiled
    trials one at a time. A trace already running is reused, but its peak
    is reset.
    """
    if not enabled:
        return task(), 0
    owner = not tracemalloc.is_tracing()
    try:
        if owner:
            tracemalloc.start()
    except Exception as exc:  # pragma: no cover - platform dependent
        warnings.warn(f"allocation tracing unavailable ({exc}); reporting 0 bytes")
        return task(), 0
    try:
        tracemalloc.reset_peak()
        baseline = tracemalloc.get_traced_memory()[0]
        result = task()
        peak = tracemalloc.get_traced_memory()[1]
    finally:
        if owner:
            tracemalloc.stop()
    return result, max(0, int(peak - baseline))


def _mean(values):
    return float(np.mean(values)) if values else 0.0


@dataclass(frozen=True)
class CostRow:
    problem: str
    metric: str  # "running_time" or "memory_usage"
    means: dict  # algorithm -> mean cost
    winner: str


def cost_report(records, algorithm_order=None) -> list:
    """Mean wall time and mean peak memory per (problem, algorithm).

    ``records`` is a RunMatrix or any iterable of RunRecords. Emits two rows
    per problem (running time, then memory usage). The winner is the
    algorithm with the smallest mean; ties go to the earliest algorithm in
    ``algorithm_order`` (default: the matrix's plan order, else order of
    first appearance).
    """
    plan = getattr(records, "plan", None)
    if plan is not None:
        algorithm_order = algorithm_order if algorithm_order is not None else plan.algorithms
        records = records.records
    records = list(records)
    times = defaultdict(list)
    mems = defaultdict(list)
    problems = []
    algorithms = list(algorithm_order) if algorithm_order is not None else []
    for rec in records:
        if rec.problem_id not in problems:
            problems.append(rec.problem_id)
        if rec.algorithm_id not in algorithms:
            algorithms.append(rec.algorithm_id)
        times[rec.problem_id, rec.algorithm_id].append(rec.wall_time_s)
        mems[rec.problem_id, rec.algorithm_id].append(rec.peak_memory_bytes)

    rows = []
    for prob in sorted(problems, key=lambda p: int(p[1:])):
        for metric, table in (("running_time", times), ("memory_usage", mems)):
            means = {alg: _mean(table[prob, alg]) for alg in algorithms if (prob, alg) in table}
            winner = min(means, key=lambda alg: (means[alg], algorithms.index(alg)))
            rows.append(CostRow(prob, metric, means, winner))
    return rows
