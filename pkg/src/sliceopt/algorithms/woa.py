from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .base import clamp, check_population


@dataclass(frozen=True)
class WoaParams:
    spiral_shape: float = 1.0

    def __post_init__(self):
        if not np.isfinite(self.spiral_shape) or self.spiral_shape <= 0.0:
            raise ValueError("spiral_shape must be positive and finite")


def woa_spiral(x, best, b, l):
    """Logarithmic spiral around ``best`` with componentwise ``D = |best - x|``."""
    D = np.abs(best - x)
    return D * np.exp(b * l) * np.cos(2.0 * np.pi * l) + best


def step_woa(population, params, objective, t, t_max, rng):
    """
    Bubble-net update. Each whale takes the spiral branch with probability
    0.5, otherwise it encircles a target with ``A = 2a r - a`` and ``C = 2 r``
    drawn per component: the best whale when every ``|A_j| < 1``, else a
    randomly chosen whale. ``a`` decays linearly from 2 to 0.
    """
    check_population(population)
    X = population.positions
    m, n = X.shape
    best = population.best_position
    a = 2.0 * (1.0 - min(t, t_max) / t_max)

    A = 2.0 * a * rng.random((m, n)) - a
    C = 2.0 * rng.random((m, n))
    p = rng.random(m)
    l = rng.uniform(-1.0, 1.0, size=(m, 1))
    partner = rng.integers(0, m, size=m)

    explore = np.max(np.abs(A), axis=1) >= 1.0
    target = np.where(explore[:, None], X[partner], best)
    encircle = target - A * np.abs(C * target - X)
    spiral = woa_spiral(X, best, params.spiral_shape, l)
    X = clamp(np.where((p < 0.5)[:, None], encircle, spiral))

    population.positions = X
    population.fitness = np.asarray(objective(X), dtype=float)
    population.update_best()
    return population
