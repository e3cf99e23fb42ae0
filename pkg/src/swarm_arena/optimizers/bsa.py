"""Backtracking search: historical-population mutation, mixrate crossover, greedy survival."""

import numpy as np

from .base import initial_population


def crossover_mask(n, d, mixrate, rng):
    """True where a trial takes the mutant's coordinate.

    Either each row mutates ``ceil(mixrate * rand * d)`` randomly chosen
    coordinates, or each row mutates exactly one random coordinate.
    """
    mask = np.zeros((n, d), dtype=bool)
    if rng.random() < rng.random():
        counts = np.ceil(mixrate * rng.random(n) * d).astype(np.int64)
        ranks = np.argsort(np.argsort(rng.random((n, d)), axis=1), axis=1)
        mask = ranks < counts[:, None]
    else:
        cols = np.asarray(rng.integers(0, d, size=n))
        mask[np.arange(n), cols] = True
    return mask


def bsa_update(pop, historical, objective, config, rng):
    """One generation; returns ``(pop, historical)``."""
    P = pop.positions
    n, d = P.shape
    # Selection-I: maybe refresh the memory, then shuffle its rows.
    if rng.random() < rng.random():
        historical = P.copy()
    historical = historical[np.asarray(rng.permutation(n))]
    F = config.bsa.mutation_scale * rng.standard_normal()
    mutant = P + F * (historical - P)
    mask = crossover_mask(n, d, config.bsa.mixrate, rng)
    trial = np.where(mask, mutant, P)
    np.clip(trial, objective.lower, objective.upper, out=trial)
    f = objective(trial)
    # Selection-II
    better = f < pop.fitness
    positions = np.where(better[:, None], trial, P)
    fitness = np.where(better, f, pop.fitness)
    return pop.with_members(positions, fitness), historical


class BSA:
    """Evaluations: pop * (iterations + 1); the historical population is never evaluated."""

    def __init__(self, objective, config, rng):
        self.objective = objective
        self.config = config
        self.rng = rng
        self.population = initial_population(objective, config.population_size, rng)
        lo, hi = objective.lower, objective.upper
        self.historical = lo + (hi - lo) * rng.random(self.population.positions.shape)

    def step(self, iteration):
        self.population, self.historical = bsa_update(
            self.population, self.historical, self.objective, self.config, self.rng)

    @staticmethod
    def expected_evaluations(config):
        return config.population_size * (config.iterations + 1)
