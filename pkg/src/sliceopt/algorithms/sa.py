from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .base import clamp, check_population


@dataclass(frozen=True)
class SaParams:
    initial_temperature: float = 1.0
    cooling_factor: float = 0.95
    step_sigma: float = 0.1

    def __post_init__(self):
        if not self.initial_temperature > 0.0:
            raise ValueError("initial_temperature must be positive")
        if not 0.0 < self.cooling_factor < 1.0:
            raise ValueError("cooling_factor must lie in (0, 1)")
        if not self.step_sigma > 0.0:
            raise ValueError("step_sigma must be positive")


def acceptance_probability(delta_e, temperature):
    """Metropolis rule: 1 for non-worsening moves, else exp(-dE / T)."""
    if delta_e <= 0.0:
        return 1.0
    return math.exp(-delta_e / temperature)


def step_sa(population, params, objective, t, t_max, rng):
    """
    Advance every member as an independent annealing chain, then cool once.
    """
    check_population(population)
    state = population.state
    if "temperature" not in state:
        state["temperature"] = float(params.initial_temperature)
    T = state["temperature"]

    X, f = population.positions, population.fitness
    m, n = X.shape
    proposal = clamp(X + rng.normal(0.0, params.step_sigma, (m, n)))
    f_new = np.asarray(objective(proposal), dtype=float)
    delta = f_new - f
    u = rng.random(m)
    with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
        prob = np.where(delta <= 0.0, 1.0, np.exp(-np.maximum(delta, 0.0) / T))
    accept = u < prob

    population.positions = np.where(accept[:, None], proposal, X)
    population.fitness = np.where(accept, f_new, f)
    population.aux["accepted"] = accept
    state["temperature"] = T * params.cooling_factor
    population.update_best()
    return population
