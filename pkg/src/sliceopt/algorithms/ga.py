from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .base import clamp, check_population


@dataclass(frozen=True)
class GaParams:
    crossover_rate: float = 0.9
    mutation_rate: float = 0.1
    mutation_sigma: float = 0.1
    tournament_size: int = 3
    elitism_count: int = 2

    def __post_init__(self):
        if not 0.0 <= self.crossover_rate <= 1.0:
            raise ValueError("crossover_rate must lie in [0, 1]")
        if not 0.0 <= self.mutation_rate <= 1.0:
            raise ValueError("mutation_rate must lie in [0, 1]")
        if not self.mutation_sigma > 0.0:
            raise ValueError("mutation_sigma must be positive")
        if self.tournament_size < 2:
            raise ValueError("tournament_size must be at least 2")
        if self.elitism_count < 0:
            raise ValueError("elitism_count must be non-negative")


def tournament(fitness, size, count, rng):
    """Winners of ``count`` tournaments, entrants drawn with replacement."""
    entrants = rng.integers(0, fitness.size, size=(count, size))
    return entrants[np.arange(count), np.argmin(fitness[entrants], axis=1)]


def arithmetic_crossover(p1, p2, u):
    return u * p1 + (1.0 - u) * p2


def step_ga(population, params, objective, t, t_max, rng):
    """
    One generation: tournament selection, arithmetic crossover, Gaussian
    mutation. The ``elitism_count`` best parents keep their slots unchanged;
    every other slot receives an offspring.
    """
    check_population(population)
    m, n = population.positions.shape
    if params.elitism_count > m:
        raise ValueError("elitism_count cannot exceed the population size")

    X, f = population.positions, population.fitness
    elites = np.argsort(f, kind="stable")[: params.elitism_count]
    slots = np.setdiff1d(np.arange(m), elites)
    if slots.size == 0:
        return population

    c = slots.size
    p1 = X[tournament(f, params.tournament_size, c, rng)]
    p2 = X[tournament(f, params.tournament_size, c, rng)]
    cross = rng.random((c, 1)) < params.crossover_rate
    u = rng.random((c, 1))
    children = np.where(cross, arithmetic_crossover(p1, p2, u), p1)
    mask = rng.random((c, n)) < params.mutation_rate
    children = children + mask * rng.normal(0.0, params.mutation_sigma, (c, n))
    children = clamp(children)
    population.positions = X.copy()
    population.fitness = f.copy()
    population.positions[slots] = children
    population.fitness[slots] = objective(children)
    population.update_best()
    return population
