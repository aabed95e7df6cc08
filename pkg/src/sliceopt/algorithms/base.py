"""Population container and helpers shared by every strategy."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

__all__ = ["Candidate", "Population", "init_population", "clamp", "params_from_dict"]


class Candidate(NamedTuple):
    position: np.ndarray
    fitness: float
    aux: dict


@dataclass
class Population:
    """
    Positions and fitness of a fixed-size population on ``[0, 1]^n``.

    ``aux`` holds per-member arrays (first axis indexed by member) owned by
    the strategy, e.g. PSO velocities or ABC trial counters. ``state`` holds
    population-wide strategy state such as the SA temperature or the ACO
    pheromone matrix.
    """

    positions: np.ndarray
    fitness: np.ndarray
    best_position: np.ndarray
    best_fitness: float
    aux: dict = field(default_factory=dict)
    state: dict = field(default_factory=dict)

    @property
    def size(self):
        return self.positions.shape[0]

    @property
    def dimension(self):
        return self.positions.shape[1]

    @property
    def members(self):
        return [
            Candidate(self.positions[i], float(self.fitness[i]),
                      {k: v[i] for k, v in self.aux.items()})
            for i in range(self.size)
        ]

    @property
    def best_so_far(self):
        return Candidate(self.best_position, self.best_fitness, {})

    def update_best(self):
        i = int(np.argmin(self.fitness))
        if self.fitness[i] < self.best_fitness:
            self.best_fitness = float(self.fitness[i])
            self.best_position = self.positions[i].copy()

    def copy(self):
        return Population(
            self.positions.copy(),
            self.fitness.copy(),
            self.best_position.copy(),
            self.best_fitness,
            {k: np.copy(v) for k, v in self.aux.items()},
            {k: np.copy(v) if isinstance(v, np.ndarray) else v for k, v in self.state.items()},
        )


def clamp(X):
    return np.clip(X, 0.0, 1.0)


def check_population(population):
    if population.size < 2:
        raise ValueError("population size must be at least 2, got %d" % population.size)


def init_population(size, dimension, rng, objective=None):
    """
    Draw ``size`` positions uniformly from ``[0, 1]^dimension``.

    When ``objective`` is given the fitness values are evaluated, otherwise
    they are left at ``inf``.
    """
    if size < 2:
        raise ValueError("population size must be at least 2, got %r" % size)
    if dimension < 1:
        raise ValueError("dimension must be at least 1, got %r" % dimension)
    positions = rng.random((int(size), int(dimension)))
    if objective is None:
        fit = np.full(int(size), np.inf)
    else:
        fit = np.asarray(objective(positions), dtype=float)
    i = int(np.argmin(fit))
    return Population(positions, fit, positions[i].copy(), float(fit[i]))


def params_from_dict(cls, data):
    """Build a parameter dataclass, rejecting keys it does not define."""
    known = {f.name for f in dataclasses.fields(cls)}
    data = dict(data or {})
    unknown = sorted(set(data) - known)
    if unknown:
        raise KeyError(unknown[0])
    return cls(**data)
