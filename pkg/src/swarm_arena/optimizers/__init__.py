"""Five seedable population-based minimizers behind :func:`minimize`."""
import numpy as np

from .. import profiling
from ..benchfns import SearchSpace
from .base import (
    BSAParams,
    FDOParams,
    FFParams,
    Objective,
    OptimizerConfig,
    Population,
    PSOParams,
    RunRecord,
    WOAParams,
    initial_population,
    repair,
)
from .bsa import BSA, bsa_update
from .fdo import FDO, fdo_update
from .ff import FF, ff_update
from .pso import PSO, pso_update
from .woa import WOA, woa_update

ALGORITHMS = {"woa": WOA, "bsa": BSA, "fdo": FDO, "pso": PSO, "ff": FF}
ALGORITHM_IDS = tuple(ALGORITHMS)

__all__ = [
    "ALGORITHMS", "ALGORITHM_IDS", "BSAParams", "FDOParams", "FFParams", "Objective", "OptimizerConfig",
    "PSOParams", "Population", "RunRecord", "WOAParams", "algorithm_key", "bsa_update", "fdo_update",
    "ff_update", "initial_population", "make_rng", "minimize", "pso_update", "repair", "woa_update",
]


def algorithm_key(algorithm_id: str) -> str:
    key = str(algorithm_id).strip().lower()
    if key not in ALGORITHMS:
        raise KeyError(f"unknown algorithm {algorithm_id!r}; expected one of {', '.join(ALGORITHM_IDS)}")
    return key


def make_rng(seed: int) -> np.random.Generator:
    """PCG64 stream for one trial; ``seed`` is an unsigned 64-bit integer."""
    return np.random.Generator(np.random.PCG64(int(seed)))


def _optimize(algo_cls, problem_id, space, config, seed):
    rng = make_rng(seed)
    objective = Objective(problem_id, space)
    runner = algo_cls(objective, config, rng)
    trace = np.empty(config.iterations)
    for t in range(config.iterations):
        runner.step(t)
        trace[t] = runner.population.leader_fitness
    return objective, runner, trace


def minimize(algorithm_id, problem_id, space: SearchSpace, config: OptimizerConfig = None, seed: int = 0,
             *, measure_time=False, measure_memory=False) -> RunRecord:
    """Run one seeded execution and return its :class:`RunRecord`.

    Cost fields stay 0 unless ``measure_time``/``measure_memory`` are set, so
    records are fully reproducible by default.
    """
    config = config if config is not None else OptimizerConfig()
    key = algorithm_key(algorithm_id)

    def task():
        return _optimize(ALGORITHMS[key], problem_id, space, config, seed)

    (result, peak), elapsed = profiling.timed(lambda: profiling.peak_memory(task, enabled=measure_memory))
    objective, runner, trace = result
    pop = runner.population
    return RunRecord(
        algorithm_id=key,
        problem_id=objective.spec.id,
        dim=space.dim,
        space=space,
        seed=int(seed),
        best_fitness=float(pop.leader_fitness),
        best_position=pop.leader_position.copy(),
        trace=trace,
        evaluations=objective.evaluations,
        wall_time_s=float(elapsed) if measure_time else 0.0,
        peak_memory_bytes=int(peak),
    )
