"""Shared optimizer types: configuration, population state, run records."""
from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np

from .. import benchfns
from ..benchfns import SearchSpace
from ..errors import InvalidConfigError


@dataclass(frozen=True)
class WOAParams:
    spiral_b: float = 1.0
    branch_prob: float = 0.5


@dataclass(frozen=True)
class BSAParams:
    mixrate: float = 1.0
    mutation_scale: float = 3.0  # F = mutation_scale * N(0, 1), drawn once per iteration


@dataclass(frozen=True)
class PSOParams:
    inertia: float = 0.729
    cognitive: float = 1.49445
    social: float = 1.49445
    velocity_clamp: float = 1.0  # fraction of each coordinate's range


@dataclass(frozen=True)
class FFParams:
    alpha: float = 0.25
    beta0: float = 1.0
    gamma: float = 1.0
    alpha_decay: float = 0.97


@dataclass(frozen=True)
class FDOParams:
    weight_factor: float = 0.0


@dataclass(frozen=True)
class OptimizerConfig:
    population_size: int = 30
    iterations: int = 2000
    woa: WOAParams = field(default_factory=WOAParams)
    bsa: BSAParams = field(default_factory=BSAParams)
    pso: PSOParams = field(default_factory=PSOParams)
    ff: FFParams = field(default_factory=FFParams)
    fdo: FDOParams = field(default_factory=FDOParams)

    def __post_init__(self):
        if int(self.population_size) != self.population_size or self.population_size < 2:
            raise InvalidConfigError(f"population_size must be an integer >= 2, got {self.population_size}")
        if int(self.iterations) != self.iterations or self.iterations < 1:
            raise InvalidConfigError(f"iterations must be an integer >= 1, got {self.iterations}")
        checks = [
            ("woa.branch_prob", self.woa.branch_prob, 0.0, 1.0),
            ("bsa.mixrate", self.bsa.mixrate, 0.0, 1.0),
            ("ff.alpha_decay", self.ff.alpha_decay, 0.0, 1.0),
            ("fdo.weight_factor", self.fdo.weight_factor, 0.0, 1.0),
        ]
        for name, value, lo, hi in checks:
            if not (lo <= value <= hi):
                raise InvalidConfigError(f"{name} must lie in [{lo}, {hi}], got {value}")
        if self.bsa.mutation_scale < 0 or self.ff.alpha < 0 or self.ff.beta0 < 0 or self.ff.gamma < 0:
            raise InvalidConfigError("step-size parameters must be non-negative")
        if not (0.0 < self.pso.velocity_clamp):
            raise InvalidConfigError("pso.velocity_clamp must be positive")

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "OptimizerConfig":
        nested = {"woa": WOAParams, "bsa": BSAParams, "pso": PSOParams, "ff": FFParams, "fdo": FDOParams}
        kwargs = {}
        for key, value in data.items():
            if key in nested:
                kwargs[key] = nested[key](**value)
            elif key in ("population_size", "iterations"):
                kwargs[key] = value
            else:
                raise InvalidConfigError(f"unknown optimizer setting {key!r}")
        return cls(**kwargs)


class Objective:
    """Batch objective bound to one problem and search space; counts evaluations."""

    def __init__(self, problem_id: str, space: SearchSpace):
        self.spec = benchfns.problem(problem_id)
        self.spec.check_dim(space.dim)
        self.space = space
        self.lower, self.upper = space.arrays()
        self.evaluations = 0

    @property
    def dim(self) -> int:
        return self.space.dim

    def __call__(self, X: np.ndarray) -> np.ndarray:
        if np.any(X < self.lower) or np.any(X > self.upper):
            raise ValueError("attempted to evaluate an out-of-bounds point")
        self.evaluations += X.shape[0]
        return benchfns.evaluate_batch(self.spec.id, X)


def repair(x, space_or_bounds) -> np.ndarray:
    """Clamp every coordinate into its bounds; in-bound values pass through unchanged."""
    if isinstance(space_or_bounds, SearchSpace):
        lo, hi = space_or_bounds.arrays()
    else:
        lo, hi = space_or_bounds
    return np.clip(np.asarray(x, dtype=np.float64), lo, hi)


@dataclass
class Population:
    positions: np.ndarray
    fitness: np.ndarray
    leader_index: int
    leader_fitness: float
    leader_position: np.ndarray

    @classmethod
    def from_evaluated(cls, positions, fitness) -> "Population":
        idx = int(np.argmin(fitness))
        return cls(positions, fitness, idx, float(fitness[idx]), positions[idx].copy())

    def with_members(self, positions, fitness) -> "Population":
        """New population state; the leader only changes on strict improvement."""
        idx = int(np.argmin(fitness))
        if fitness[idx] < self.leader_fitness:
            return Population(positions, fitness, idx, float(fitness[idx]), positions[idx].copy())
        return Population(positions, fitness, idx, self.leader_fitness, self.leader_position)


def initial_population(objective: Objective, size: int, rng) -> Population:
    lo, hi = objective.lower, objective.upper
    positions = lo + (hi - lo) * rng.random((size, objective.dim))
    return Population.from_evaluated(positions, objective(positions))


@dataclass
class RunRecord:
    algorithm_id: str
    problem_id: str
    dim: int
    space: SearchSpace
    seed: int
    best_fitness: float
    best_position: Optional[np.ndarray]
    trace: np.ndarray
    evaluations: int
    wall_time_s: float = 0.0
    peak_memory_bytes: int = 0
    variant: str = ""
    run_index: int = 0

    def same_outcome(self, other: "RunRecord") -> bool:
        """Equality on everything except the cost fields."""
        pos_equal = (self.best_position is None and other.best_position is None) or (
            self.best_position is not None and other.best_position is not None
            and np.array_equal(self.best_position, other.best_position))
        return (
            self.algorithm_id == other.algorithm_id
            and self.problem_id == other.problem_id
            and self.dim == other.dim
            and self.space == other.space
            and self.seed == other.seed
            and self.best_fitness == other.best_fitness
            and pos_equal
            and np.array_equal(self.trace, other.trace)
            and self.evaluations == other.evaluations
            and self.variant == other.variant
            and self.run_index == other.run_index
        )
