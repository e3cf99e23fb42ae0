"""Firefly algorithm: attraction toward brighter fireflies plus a decaying random walk."""
import numpy as np

from ._kernels import ff_move
from .base import initial_population


def ff_update(pop, objective, iteration, config, rng):
    """Move every firefly once.

    Brightness is judged on the fitness at the start of the iteration, and
    attractors sit at their start-of-iteration positions. The random term
    is ``alpha * decay**iteration * (u - 0.5) * range`` per coordinate.
    """
    params = config.ff
    alpha = params.alpha * params.alpha_decay ** iteration
    X = pop.positions
    u = rng.random(X.shape)
    scale = objective.upper - objective.lower
    out = np.empty_like(X)
    ff_move(X, pop.fitness, float(alpha), float(params.beta0), float(params.gamma), u, scale, out)
    np.clip(out, objective.lower, objective.upper, out=out)
    return pop.with_members(out, objective(out))


class FF:
    """Evaluations: pop * (iterations + 1)."""

    def __init__(self, objective, config, rng):
        self.objective = objective
        self.config = config
        self.rng = rng
        self.population = initial_population(objective, config.population_size, rng)

    def step(self, iteration):
        self.population = ff_update(self.population, self.objective, iteration, self.config, self.rng)

    @staticmethod
    def expected_evaluations(config):
        return config.population_size * (config.iterations + 1)
