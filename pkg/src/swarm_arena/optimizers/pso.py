"""Particle swarm with inertia weight and per-coordinate velocity clamping."""
import numpy as np

from .base import initial_population


def pso_update(pop, velocities, personal_bests, objective, config, rng):
    """Move every particle once; returns ``(pop, velocities, personal_bests)``.

    The social attractor is the best personal best so far.
    """
    X = pop.positions
    params = config.pso
    r1 = rng.random(X.shape)
    r2 = rng.random(X.shape)
    vmax = params.velocity_clamp * (objective.upper - objective.lower)
    V = (params.inertia * velocities
         + params.cognitive * r1 * (personal_bests.positions - X)
         + params.social * r2 * (personal_bests.leader_position - X))
    np.clip(V, -vmax, vmax, out=V)
    Xn = np.clip(X + V, objective.lower, objective.upper)
    f = objective(Xn)
    improved = f < personal_bests.fitness
    pb_pos = np.where(improved[:, None], Xn, personal_bests.positions)
    pb_fit = np.where(improved, f, personal_bests.fitness)
    return pop.with_members(Xn, f), V, personal_bests.with_members(pb_pos, pb_fit)


class PSO:
    """Velocities start at zero. Evaluations: pop * (iterations + 1)."""

    def __init__(self, objective, config, rng):
        self.objective = objective
        self.config = config
        self.rng = rng
        self.population = initial_population(objective, config.population_size, rng)
        self.velocities = np.zeros_like(self.population.positions)
        self.personal_bests = self.population

    def step(self, iteration):
        self.population, self.velocities, self.personal_bests = pso_update(
            self.population, self.velocities, self.personal_bests, self.objective, self.config, self.rng)

    @staticmethod
    def expected_evaluations(config):
        return config.population_size * (config.iterations + 1)
