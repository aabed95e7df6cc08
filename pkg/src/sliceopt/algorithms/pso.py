from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .base import clamp, check_population


@dataclass(frozen=True)
class PsoParams:
    inertia: float = 0.729
    c1: float = 1.494
    c2: float = 1.494

    def __post_init__(self):
        for name in ("inertia", "c1", "c2"):
            value = getattr(self, name)
            if not np.isfinite(value) or value < 0.0:
                raise ValueError("%s must be finite and non-negative" % name)


VELOCITY_LIMIT = 1.0


def pso_velocity(v, x, personal_best, global_best, params, r1, r2):
    """Inertia plus cognitive and social pulls; ``r1``, ``r2`` in [0, 1]."""
    return (
        params.inertia * v
        + params.c1 * r1 * (personal_best - x)
        + params.c2 * r2 * (global_best - x)
    )


def step_pso(population, params, objective, t, t_max, rng):
    check_population(population)
    aux = population.aux
    if "velocity" not in aux:
        aux["velocity"] = np.zeros_like(population.positions)
        aux["personal_best"] = population.positions.copy()
        aux["personal_best_fitness"] = population.fitness.copy()

    X = population.positions
    m, n = X.shape
    r1 = rng.random((m, 1))
    r2 = rng.random((m, 1))
    v = pso_velocity(
        aux["velocity"], X, aux["personal_best"], population.best_position, params, r1, r2
    )
    v = np.clip(v, -VELOCITY_LIMIT, VELOCITY_LIMIT)
    X = clamp(X + v)

    f = np.asarray(objective(X), dtype=float)
    improved = f < aux["personal_best_fitness"]
    aux["personal_best"][improved] = X[improved]
    aux["personal_best_fitness"][improved] = f[improved]
    aux["velocity"] = v
    population.positions = X
    population.fitness = f
    population.update_best()
    return population
