from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .base import clamp, check_population


@dataclass(frozen=True)
class AbcParams:
    abandonment_limit: int = 50

    def __post_init__(self):
        if self.abandonment_limit < 1:
            raise ValueError("abandonment_limit must be at least 1")


def abc_candidate(x, neighbor, j, phi):
    """Perturb component ``j`` of ``x`` relative to a neighbor source."""
    v = np.array(x, dtype=float, copy=True)
    v[j] = x[j] + phi * (x[j] - neighbor[j])
    return v


def _neighbors(sources, m, rng):
    # Uniform over the other m - 1 sources.
    k = rng.integers(0, m - 1, size=sources.size)
    return k + (k >= sources)


def _propose(X, sources, rng):
    m, n = X.shape
    k = _neighbors(sources, m, rng)
    j = rng.integers(0, n, size=sources.size)
    phi = rng.uniform(-1.0, 1.0, size=sources.size)
    V = X[sources].copy()
    rows = np.arange(sources.size)
    V[rows, j] = X[sources, j] + phi * (X[sources, j] - X[k, j])
    return clamp(V)


def onlooker_weights(fitness):
    """Selection probabilities proportional to ``1 / (1 + fitness)``."""
    w = np.where(fitness >= 0.0, 1.0 / (1.0 + fitness), 1.0 + np.abs(fitness))
    return w / w.sum()


def step_abc(population, params, objective, t, t_max, rng):
    """
    Employed, onlooker and scout phases.

    Candidates within a phase are built from the positions at the start of
    that phase and applied greedily in index order.
    """
    check_population(population)
    X = population.positions.copy()
    f = population.fitness.copy()
    m, n = X.shape
    trials = population.aux.get("trials")
    trials = np.zeros(m, dtype=int) if trials is None else trials.copy()

    improved = np.zeros(m, dtype=bool)

    # Employed bees: one candidate per source.
    sources = np.arange(m)
    V = _propose(X, sources, rng)
    fv = np.asarray(objective(V), dtype=float)
    better = fv < f
    X[better], f[better] = V[better], fv[better]
    improved |= better

    # Onlookers: sources picked by roulette on fitness.
    chosen = rng.choice(m, size=m, p=onlooker_weights(f))
    V = _propose(X, chosen, rng)
    fv = np.asarray(objective(V), dtype=float)
    for c, i in enumerate(chosen):
        if fv[c] < f[i]:
            X[i], f[i] = V[c], fv[c]
            improved[i] = True

    # Scouts: a source that has gone more than the limit of steps without
    # improving is abandoned.
    trials = np.where(improved, 0, trials + 1)
    exhausted = np.flatnonzero(trials > params.abandonment_limit)
    if exhausted.size:
        X[exhausted] = rng.random((exhausted.size, n))
        f[exhausted] = objective(X[exhausted])
        trials[exhausted] = 0

    population.positions = X
    population.fitness = f
    population.aux["trials"] = trials
    population.update_best()
    return population
