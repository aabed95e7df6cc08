"""
Ant colony search on a per-dimension discretization of the unit box.

Each dimension is split into ``levels_per_dimension`` equal bins; an ant
builds a solution by picking one bin per dimension with probability
proportional to ``tau**alpha * eta**beta`` and then sampling uniformly
inside the bin.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .base import check_population

TINY = 1e-12


@dataclass(frozen=True)
class AcoParams:
    levels_per_dimension: int = 10
    alpha: float = 1.0
    beta: float = 1.0
    evaporation: float = 0.1
    deposit: float = 1.0

    def __post_init__(self):
        if self.levels_per_dimension < 2:
            raise ValueError("levels_per_dimension must be at least 2")
        if self.alpha < 0.0 or self.beta < 0.0:
            raise ValueError("alpha and beta must be non-negative")
        if not 0.0 < self.evaporation <= 1.0:
            raise ValueError("evaporation must lie in (0, 1]")
        if not self.deposit > 0.0:
            raise ValueError("deposit must be positive")


def aco_probabilities(tau, eta, alpha, beta):
    """Row-normalized ``tau**alpha * eta**beta``, one row per dimension."""
    weight = np.power(tau, alpha) * np.power(eta, beta)
    total = weight.sum(axis=1, keepdims=True)
    k = tau.shape[1]
    uniform = np.full_like(weight, 1.0 / k)
    return np.where(total > 0.0, weight / np.where(total > 0.0, total, 1.0), uniform)


def update_pheromone(tau, levels, fitness, params):
    """Evaporate, then reinforce the levels chosen by the iteration-best ant."""
    tau = (1.0 - params.evaporation) * tau
    tau[np.arange(tau.shape[0]), levels] += params.deposit / max(fitness, TINY)
    return tau


def sample_levels(prob, m, rng):
    cdf = np.cumsum(prob, axis=1)
    cdf[:, -1] = 1.0
    u = rng.random((m, prob.shape[0], 1))
    return (u > cdf[None, :, :]).sum(axis=2)


def step_aco(population, params, objective, t, t_max, rng):
    check_population(population)
    m, n = population.positions.shape
    k = params.levels_per_dimension
    state = population.state
    if "pheromone" not in state:
        state["pheromone"] = np.ones((n, k))
        state["visibility"] = np.ones((n, k))

    prob = aco_probabilities(state["pheromone"], state["visibility"], params.alpha, params.beta)
    levels = sample_levels(prob, m, rng)
    X = (levels + rng.random((m, n))) / k
    f = np.asarray(objective(X), dtype=float)

    # Ants are processed in index order, so later ants overwrite the
    # visibility of levels they share with earlier ones.
    eta = state["visibility"]
    for i in range(m):
        eta[np.arange(n), levels[i]] = 1.0 / max(f[i], TINY)

    best = int(np.argmin(f))
    state["pheromone"] = update_pheromone(state["pheromone"], levels[best], f[best], params)

    population.positions = X
    population.fitness = f
    population.aux["levels"] = levels
    population.update_best()
    return population
