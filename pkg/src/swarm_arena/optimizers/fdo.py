"""Fitness dependent optimizer: scout bees step by a fitness-weighted pace."""
import numpy as np

from ._kernels import fdo_pace
from .base import initial_population


def fdo_update(pop, paces, objective, config, rng):
    """One sweep over the scouts; returns ``(pop, paces, retries)``.

    The fitness weight is the ratio of the smaller to the larger of
    ``|best fitness|`` and ``|scout fitness|``, minus the weight factor.
    Inside (0, 1) the pace is ``(x - best) * fw``, sign-flipped per coordinate
    where ``r < 0``. A weight of 0 or 1, or a zero fitness, falls back to the
    random walk ``x * r``. ``r`` is uniform on [-1, 1].

    A scout moves only when its new position strictly improves. Otherwise it
    retries its last accepted pace, if it has one, and stays put when that
    fails too. ``retries`` counts the extra evaluations.
    """
    X = pop.positions
    f = pop.fitness
    r = 2.0 * rng.random(X.shape) - 1.0
    pace = np.empty_like(X)
    fdo_pace(X, f, pop.leader_position, float(pop.leader_fitness), float(config.fdo.weight_factor), r, pace)
    cand = np.clip(X + pace, objective.lower, objective.upper)
    fc = objective(cand)
    better = fc < f
    positions = np.where(better[:, None], cand, X)
    fitness = np.where(better, fc, f)
    new_paces = np.where(better[:, None], pace, paces)

    retry = np.flatnonzero(~better & np.any(paces != 0.0, axis=1))
    if retry.size:
        cand2 = np.clip(X[retry] + paces[retry], objective.lower, objective.upper)
        fc2 = objective(cand2)
        ok = fc2 < f[retry]
        positions[retry[ok]] = cand2[ok]
        fitness[retry[ok]] = fc2[ok]
    return pop.with_members(positions, fitness), new_paces, int(retry.size)


class FDO:
    """Evaluations: pop * (iterations + 1) plus one per pace retry."""

    def __init__(self, objective, config, rng):
        self.objective = objective
        self.config = config
        self.rng = rng
        self.population = initial_population(objective, config.population_size, rng)
        self.paces = np.zeros_like(self.population.positions)
        self.retries = 0

    def step(self, iteration):
        self.population, self.paces, extra = fdo_update(
            self.population, self.paces, self.objective, self.config, self.rng)
        self.retries += extra

    def expected_evaluations(self, config):
        return config.population_size * (config.iterations + 1) + self.retries
