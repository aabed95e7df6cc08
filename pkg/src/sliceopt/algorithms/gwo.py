from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .base import clamp, check_population


@dataclass(frozen=True)
class GwoParams:
    a_initial: float = 2.0

    def __post_init__(self):
        if not np.isfinite(self.a_initial) or self.a_initial <= 0.0:
            raise ValueError("a_initial must be positive and finite")


def gwo_coefficient(a_initial, t, t_max):
    """Linear decay from ``a_initial`` at t=0 to exactly 0 at t=t_max."""
    if t >= t_max:
        return 0.0
    return a_initial * (1.0 - t / t_max)


def gwo_positions(X, leaders, a, rng):
    """
    Move every wolf toward the alpha, beta and delta leaders.

    Each leader L yields ``L - A * |C * L - X|`` with ``A = 2a r - a`` and
    ``C = 2 r``; the new position is the mean of the three. With ``a = 0``
    this is the plain average of the leaders.
    """
    m, n = X.shape
    moves = []
    for leader in leaders:
        A = 2.0 * a * rng.random((m, n)) - a
        C = 2.0 * rng.random((m, n))
        D = np.abs(C * leader - X)
        moves.append(leader - A * D)
    return sum(moves) / len(moves)


def _merge_leaders(state, X, f):
    pos = np.vstack([state["leader_positions"], X])
    fit = np.concatenate([state["leader_fitness"], f])
    order = np.argsort(fit, kind="stable")[:3]
    state["leader_positions"] = pos[order]
    state["leader_fitness"] = fit[order]


def step_gwo(population, params, objective, t, t_max, rng):
    check_population(population)
    state = population.state
    if "leader_positions" not in state:
        state["leader_positions"] = np.empty((0, population.dimension))
        state["leader_fitness"] = np.empty(0)
        _merge_leaders(state, population.positions, population.fitness)

    leaders = state["leader_positions"]
    # Populations of two reuse the beta wolf as delta.
    leaders = [leaders[min(k, len(leaders) - 1)] for k in range(3)]
    a = gwo_coefficient(params.a_initial, t, t_max)
    X = clamp(gwo_positions(population.positions, leaders, a, rng))
    f = np.asarray(objective(X), dtype=float)

    population.positions = X
    population.fitness = f
    _merge_leaders(state, X, f)
    population.update_best()
    return population
