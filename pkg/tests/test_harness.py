import numpy as np
import pytest

from swarm_arena import benchfns
from swarm_arena.errors import InvalidConfigError, MissingBaselineError
from swarm_arena.harness import (
    EvalKind,
    EvaluationPlan,
    RunMatrix,
    Tolerance,
    Variant,
    compare,
    evaluation3,
    execute,
    mix_seed,
    plan_evaluation,
    plan_from_echo,
    splitmix64,
    success,
    success_rates,
    trial_seed,
)
from swarm_arena.optimizers import ALGORITHM_IDS, RunRecord
from swarm_arena.stats import Verdict


def record(pid, best, alg="woa", variant="d2", run=0, dim=None, wall=0.0):
    dim = dim or benchfns.problem(pid).fixed_dim or 10
    space = benchfns.default_space(pid, dim)
    return RunRecord(alg, pid, dim, space, 0, best, None, np.array([best]), 1, wall_time_s=wall,
                     variant=variant, run_index=run)


# --- plans ---------------------------------------------------------------

def test_eval1_plan_shape():
    plan = plan_evaluation(1)
    assert plan.cell_count() == 3900
    assert [v.label for v in plan.variants["P9"]] == ["d10", "d30", "d60"]
    assert [v.dim for v in plan.variants["P9"]] == [10, 30, 60]
    assert [v.label for v in plan.variants["P14"]] == ["d2"]
    assert plan.variants["P14"][0].space == benchfns.default_space("P14")
    assert plan.runs == 30 and plan.config.iterations == 2000 and plan.config.population_size == 30


def test_eval2_plan_shape():
    plan = plan_evaluation(2)
    assert plan.cell_count() == 7200
    labels = {tuple(v.label for v in vs) for vs in plan.variants.values()}
    assert labels == {("R1", "R2", "R3")}
    r3 = plan.variants["P1"][2].space
    assert (r3.lower, r3.upper) == ((-500.0, -500.0), (500.0, 500.0))


def test_eval3_plan_carries_sources():
    plan = plan_evaluation(3, {"runs": 2})
    assert [s.kind for s in plan.sources] == [EvalKind.EVAL1, EvalKind.EVAL2]
    assert plan.cell_count() == (3900 + 7200) // 15


def test_overrides_are_echoed():
    plan = plan_evaluation(2, {"runs": 3, "iterations": 50, "problems": ["p14", "P3"], "algorithms": ["PSO"]})
    echo = plan.echo()
    assert echo["runs"] == 3
    assert echo["config"]["iterations"] == 50
    assert echo["problems"] == ["P14", "P3"]
    assert echo["algorithms"] == ["pso"]
    assert plan_from_echo(echo) == plan


@pytest.mark.parametrize("overrides", [
    {"runs": 0}, {"runs": 2.5}, {"algorithms": []}, {"algorithms": ["woa", "woa"]},
    {"problems": ["P99"]}, {"spaces": ["R9"]}, {"tol_abs": -1.0}, {"speed": 1}, {"iterations": 0},
])
def test_invalid_overrides(overrides):
    with pytest.raises((InvalidConfigError, KeyError)):
        plan_evaluation(2, overrides)


# --- seeding ---------------------------------------------------------------

def test_splitmix64_reference_vector():
    assert splitmix64(0) == 0xE220A8397B1DCDAF


def test_seed_golden_values():
    assert mix_seed(0, 0, 0, 0, 0) == 0x78AE5A9A6B5FD45E
    assert trial_seed(0, "woa", "P1", 0, 0) == mix_seed(0, 0, 1, 0, 0)
    assert trial_seed(9, "ff", "P16", 2, 29) == mix_seed(9, 4, 16, 2, 29)


def test_trial_seeds_are_distinct():
    seeds = {trial_seed(0, a, p, v, r) for a in ALGORITHM_IDS for p in benchfns.PROBLEM_IDS
             for v in range(3) for r in range(30)}
    assert len(seeds) == 5 * 16 * 3 * 30
    assert trial_seed(0, "woa", "P1", 0, 0) != trial_seed(1, "woa", "P1", 0, 0)


# --- execution ---------------------------------------------------------------

SMOKE = {"algorithms": ["woa", "pso"], "problems": ["P14"], "runs": 2, "iterations": 50, "population_size": 10}


def test_execute_smoke():
    plan = plan_evaluation(1, SMOKE)
    m = execute(plan)
    assert len(m) == 4
    assert all(r.trace.shape == (50,) for r in m.records)
    assert [(r.algorithm_id, r.run_index) for r in m.records] == [("woa", 0), ("woa", 1), ("pso", 0), ("pso", 1)]
    assert all(r.variant == "d2" for r in m.records)
    assert m.records[1].seed == trial_seed(0, "woa", "P14", 0, 1)


def test_execute_is_reproducible_and_parallel_safe():
    plan = plan_evaluation(1, SMOKE)
    a, b, c = execute(plan), execute(plan), execute(plan, parallel=2)
    for x, y, z in zip(a.records, b.records, c.records):
        assert x.same_outcome(y) and x.same_outcome(z)


def test_execute_progress_and_eval3_refusal():
    seen = []
    execute(plan_evaluation(1, SMOKE), progress=lambda done, total, rec: seen.append((done, total)))
    assert seen[-1] == (4, 4)
    with pytest.raises(InvalidConfigError):
        execute(plan_evaluation(3, SMOKE))


# --- success ------------------------------------------------------------------

def test_success_examples():
    assert success(record("P14", 0.0))
    assert success(record("P14", 9e-7))
    assert not success(record("P14", 2e-6))
    assert success(record("P3", -106.76448))
    assert not success(record("P3", -106.7))
    assert success(record("P15", -39.16616570377142 * 10, dim=10))
    assert not success(record("P15", -39.16616570377142 * 2, dim=10))


def test_success_spec_mismatch():
    with pytest.raises(ValueError):
        success(record("P14", 0.0), benchfns.problem("P1"))


@pytest.mark.parametrize("best", [0.0, 5e-7, 1e-5, 0.3])
def test_success_monotone_in_tolerance(best):
    rec = record("P6", -1.0 + best)
    tight = [success(rec, tol=Tolerance(t, t)) for t in (1e-9, 1e-6, 1e-3, 1.0)]
    assert tight == sorted(tight)


def _matrix(records, algorithms=("woa", "pso"), problems=("P14",)):
    variants = {p: (Variant("d2", benchfns.default_space(p)),) for p in problems}
    plan = EvaluationPlan(EvalKind.EVAL1, tuple(algorithms), tuple(problems), variants, runs=4)
    return RunMatrix(plan, records)


def test_success_rates_fractions():
    recs = [record("P14", v, "woa", run=i) for i, v in enumerate([0.0, 0.0, 0.5, 0.0])]
    recs += [record("P14", 0.5, "pso", run=i) for i in range(4)]
    table = success_rates(_matrix(recs))
    assert table.fractions == {("P14", "woa", "d2"): 0.75, ("P14", "pso", "d2"): 0.0}
    assert table.minimized_by_any == {("P14", "d2"): True}
    assert table.by_problem() == {"P14": 0.375}
    assert table.by_algorithm() == {"woa": 0.75, "pso": 0.0}
    both = evaluation3([_matrix(recs), _matrix(recs)])
    assert both.fractions == table.fractions


# --- comparisons ----------------------------------------------------------------

def _dominance(n=30):
    problems = ("P6", "P13", "P14", "P16")
    recs = []
    for p in problems:
        floor = benchfns.problem(p).global_minimum
        for i in range(n):
            recs.append(record(p, floor + i * 1e-3, "woa", run=i, wall=1.0 + i))
            recs.append(record(p, floor + 1.0 + i, "pso", run=i, wall=0.5 + i))
    return _matrix(recs, problems=problems)


def test_compare_dominance():
    rows, summaries = compare(_dominance(), "woa")
    assert len(rows) == 4
    assert all(r.result.verdict is Verdict.PLUS for r in rows)
    assert [(s.rival, s.variant, s.label) for s in summaries] == [("pso", "d2", "4/0/0")]


def test_compare_time_metric():
    _, summaries = compare(_dominance(), "woa", metric="time")
    assert summaries[0].label == "0/0/4"


def test_compare_baseline_against_itself():
    rows, summaries = compare(_dominance(), "woa", rivals=["woa"])
    assert all(r.result.verdict is Verdict.EQUAL and r.result.p_value == 1.0 for r in rows)
    assert summaries[0].label == "0/4/0"


def test_compare_errors():
    m = _dominance()
    with pytest.raises(MissingBaselineError):
        compare(m, "bsa")
    with pytest.raises(KeyError):
        compare(m, "nope")
    with pytest.raises(ValueError):
        compare(m, "woa", metric="memory")
