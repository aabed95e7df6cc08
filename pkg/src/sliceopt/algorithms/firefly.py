from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .base import clamp, check_population

ALPHA_DECAY = 0.97


@dataclass(frozen=True)
class FireflyParams:
    beta0: float = 1.0
    gamma: float = 1.0
    alpha: float = 0.2

    def __post_init__(self):
        if not self.beta0 > 0.0:
            raise ValueError("beta0 must be positive")
        if self.gamma < 0.0 or self.alpha < 0.0:
            raise ValueError("gamma and alpha must be non-negative")


def firefly_move(xi, xj, beta0, gamma, alpha, noise):
    """
    Attraction of ``xi`` toward brighter ``xj`` plus ``alpha * noise``;
    ``noise`` is uniform on [-0.5, 0.5] per component.
    """
    r2 = np.sum((xj - xi) ** 2, axis=-1, keepdims=True)
    beta = beta0 * np.exp(-gamma * r2)
    return xi + beta * (xj - xi) + alpha * noise


def step_firefly(population, params, objective, t, t_max, rng):
    """
    Every firefly moves toward each brighter one.

    Brightness is compared on the fitness at the start of the step. Sources
    ``j`` are visited in index order and all fireflies dimmer than ``j`` move
    toward its current position together; moved fireflies are evaluated once
    at the end.
    """
    check_population(population)
    state = population.state
    if "alpha" not in state:
        state["alpha"] = float(params.alpha)
    alpha = state["alpha"]

    X = population.positions.copy()
    f = population.fitness
    m, n = X.shape
    moved = np.zeros(m, dtype=bool)
    for j in range(m):
        dimmer = np.flatnonzero(f[j] < f)
        if dimmer.size == 0:
            continue
        noise = rng.random((dimmer.size, n)) - 0.5
        X[dimmer] = clamp(
            firefly_move(X[dimmer], X[j], params.beta0, params.gamma, alpha, noise)
        )
        moved[dimmer] = True

    fit = f.copy()
    if moved.any():
        fit[moved] = objective(X[moved])
    population.positions = X
    population.fitness = fit
    state["alpha"] = alpha * ALPHA_DECAY
    population.update_best()
    return population
