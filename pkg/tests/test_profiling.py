import time

import numpy as np
import pytest

from swarm_arena import benchfns, profiling
from swarm_arena.harness import EvalKind, EvaluationPlan, RunMatrix, Variant
from swarm_arena.optimizers import ALGORITHM_IDS, RunRecord

MiB = 1 << 20


def busy(seconds):
    end = time.perf_counter() + seconds
    while time.perf_counter() < end:
        pass


def test_timed_noop():
    result, t = profiling.timed(lambda: 42)
    assert result == 42
    assert 0 <= t < 0.1


def test_timed_busy_loop():
    _, t = profiling.timed(lambda: busy(0.05))
    assert 0.04 <= t <= 1.0


def test_timed_nesting():
    (_, inner), outer = profiling.timed(lambda: profiling.timed(lambda: busy(0.01)))
    assert outer >= inner


def test_peak_one_buffer():
    _, peak = profiling.peak_memory(lambda: np.ones(MiB // 8).sum())
    assert peak >= MiB


def test_peak_sequential_buffers_do_not_stack():
    _, slack = profiling.peak_memory(lambda: None)

    def task():
        a = np.ones(MiB // 8)
        del a
        b = np.ones(MiB // 8)
        del b

    _, peak = profiling.peak_memory(task)
    assert MiB <= peak < 2 * MiB + slack + 4096


def test_peak_disabled():
    assert profiling.peak_memory(lambda: 7, enabled=False) == (7, 0)


def test_peak_reuses_running_trace():
    import tracemalloc
    tracemalloc.start()
    try:
        _, peak = profiling.peak_memory(lambda: np.ones(MiB // 8).sum())
        assert peak >= MiB
        assert tracemalloc.is_tracing()
    finally:
        tracemalloc.stop()


def _records(times, mems, problems=benchfns.PROBLEM_IDS, runs=3):
    recs = []
    for p in problems:
        space = benchfns.default_space(p, benchfns.problem(p).fixed_dim or 10)
        for a in ALGORITHM_IDS:
            for r in range(runs):
                recs.append(RunRecord(a, p, space.dim, space, 0, 0.0, None, np.zeros(1), 1,
                                      wall_time_s=times(p, a, r), peak_memory_bytes=mems(p, a, r), run_index=r))
    return recs


def test_report_shape_and_means():
    rng = np.random.default_rng(0)
    table_t = {(p, a, r): float(rng.random()) for p in benchfns.PROBLEM_IDS for a in ALGORITHM_IDS for r in range(3)}
    table_m = {k: int(rng.integers(1, 10_000)) for k in table_t}
    recs = _records(lambda *k: table_t[k], lambda *k: table_m[k])
    report = profiling.cost_report(recs)
    assert len(report) == 16 * 2
    assert [r.metric for r in report[:2]] == ["running_time", "memory_usage"]
    for row in report:
        table = table_t if row.metric == "running_time" else table_m
        means = {a: np.mean([table[row.problem, a, r] for r in range(3)]) for a in ALGORITHM_IDS}
        assert row.means == pytest.approx(means)
        assert row.winner == min(ALGORITHM_IDS, key=lambda a: (means[a], ALGORITHM_IDS.index(a)))


def test_report_ties_go_to_first_algorithm():
    report = profiling.cost_report(_records(lambda *k: 1.0, lambda *k: 100))
    assert {r.winner for r in report} == {"woa"}


def test_report_half_time_wins():
    report = profiling.cost_report(_records(lambda p, a, r: 0.5 if a == "fdo" else 1.0 + r, lambda *k: 100))
    assert all(r.winner == "fdo" for r in report if r.metric == "running_time")


def test_report_winners_invariant_under_rescaling():
    rng = np.random.default_rng(1)
    base = {(p, a, r): float(rng.random()) for p in benchfns.PROBLEM_IDS for a in ALGORITHM_IDS for r in range(3)}
    one = profiling.cost_report(_records(lambda *k: base[k], lambda *k: int(base[k] * 1000)))
    ten = profiling.cost_report(_records(lambda *k: 10 * base[k], lambda *k: int(base[k] * 1000) * 10))
    assert [r.winner for r in one] == [r.winner for r in ten]


def test_report_accepts_matrix_in_plan_order():
    recs = _records(lambda *k: 1.0, lambda *k: 1, problems=("P14",))
    order = ("pso", "woa", "bsa", "fdo", "ff")
    plan = EvaluationPlan(EvalKind.EVAL1, order, ("P14",), {"P14": (Variant("d2", benchfns.default_space("P14")),)})
    report = profiling.cost_report(RunMatrix(plan, recs))
    assert [r.winner for r in report] == ["pso", "pso"]
