from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .base import clamp, check_population


@dataclass(frozen=True)
class BwoParams:
    procreation_rate: float = 0.6
    cannibalism_rate: float = 0.4
    mutation_rate: float = 0.4
    mutation_sigma: float = 0.02

    def __post_init__(self):
        if not 0.0 < self.procreation_rate <= 1.0:
            raise ValueError("procreation_rate must lie in (0, 1]")
        if not 0.0 <= self.cannibalism_rate < 1.0:
            raise ValueError("cannibalism_rate must lie in [0, 1)")
        if not 0.0 <= self.mutation_rate <= 1.0:
            raise ValueError("mutation_rate must lie in [0, 1]")
        if not self.mutation_sigma > 0.0:
            raise ValueError("mutation_sigma must be positive")


def bwo_mutate(x, mutation_rate, noise):
    """``x + mutation_rate * noise``."""
    return x + mutation_rate * noise


def procreate(p1, p2, u):
    """Convex combination and its mirror, ``u`` drawn per component."""
    return u * p1 + (1.0 - u) * p2, (1.0 - u) * p1 + u * p2


def step_bwo(population, params, objective, t, t_max, rng):
    """
    Mating among the best widows, cannibalism, mutation, then truncation
    back to the original size by fitness.
    """
    check_population(population)
    X, f = population.positions, population.fitness
    m, n = X.shape
    order = np.argsort(f, kind="stable")
    n_parents = max(2, int(round(params.procreation_rate * m)))
    n_parents -= n_parents % 2
    parents = order[:n_parents]
    others = order[n_parents:]

    pairs = rng.permutation(parents).reshape(-1, 2)
    u = rng.random((pairs.shape[0], n))
    c1, c2 = procreate(X[pairs[:, 0]], X[pairs[:, 1]], u)
    children = clamp(np.vstack([c1, c2]))
    f_children = np.asarray(objective(children), dtype=float)

    family = np.vstack([X[parents], children])
    f_family = np.concatenate([f[parents], f_children])
    n_eaten = int(np.floor(params.cannibalism_rate * family.shape[0]))
    keep = np.argsort(f_family, kind="stable")[: family.shape[0] - n_eaten]
    family, f_family = family[keep], f_family[keep]

    mutate = rng.random(family.shape[0]) < params.mutation_rate
    noise = params.mutation_sigma * rng.standard_normal((int(mutate.sum()), n))
    mutants = clamp(bwo_mutate(family[mutate], params.mutation_rate, noise))
    f_mutants = np.asarray(objective(mutants), dtype=float) if len(mutants) else np.empty(0)

    pool = np.vstack([X[others], family, mutants])
    f_pool = np.concatenate([f[others], f_family, f_mutants])
    if pool.shape[0] < m:
        fresh = rng.random((m - pool.shape[0], n))
        pool = np.vstack([pool, fresh])
        f_pool = np.concatenate([f_pool, objective(fresh)])
    survivors = np.argsort(f_pool, kind="stable")[:m]

    population.positions = pool[survivors]
    population.fitness = f_pool[survivors]
    population.update_best()
    return population
