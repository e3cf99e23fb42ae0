"""Whale optimization: shrinking encirclement, random-whale search and spiral bubble-net moves."""
import numpy as np

from ._kernels import woa_move
from .base import initial_population


def control_scalar(iteration, total_iterations):
    """Linear schedule from 2 at the first iteration down to 0 at the last."""
    return 2.0 - 2.0 * iteration / max(total_iterations - 1, 1)


def woa_update(pop, objective, iteration, total_iterations, config, rng):
    if not 0 <= iteration < total_iterations:
        raise ValueError(f"iteration {iteration} outside [0, {total_iterations})")
    X = pop.positions
    n = X.shape[0]
    a = control_scalar(iteration, total_iterations)
    # Draw order: r1, r2, branch, spiral l, random-whale index.
    r1 = rng.random(n)
    r2 = rng.random(n)
    branch = rng.random(n)
    l = 2.0 * rng.random(n) - 1.0
    ridx = np.asarray(rng.integers(0, n, size=n), dtype=np.int64)
    A = 2.0 * a * r1 - a
    C = 2.0 * r2
    out = np.empty_like(X)
    woa_move(X, pop.leader_position, A, C, branch, l, ridx,
             float(config.woa.spiral_b), float(config.woa.branch_prob), out)
    np.clip(out, objective.lower, objective.upper, out=out)
    return pop.with_members(out, objective(out))


class WOA:
    """One evaluation per whale per iteration: pop * (iterations + 1) in total."""

    def __init__(self, objective, config, rng):
        self.objective = objective
        self.config = config
        self.rng = rng
        self.population = initial_population(objective, config.population_size, rng)

    def step(self, iteration):
        self.population = woa_update(self.population, self.objective, iteration,
                                     self.config.iterations, self.config, self.rng)

    @staticmethod
    def expected_evaluations(config):
        return config.population_size * (config.iterations + 1)
