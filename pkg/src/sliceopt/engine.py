"""Unified optimization loop with the best-so-far convergence test."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field, replace

import numpy as np

from .algorithms import get_algorithm, init_population, make_params
from .objective import SliceObjective
from .slice_model import PerformanceSample

__all__ = ["RunConfig", "RunRecord", "convergence_check", "minimize", "optimize"]


@dataclass(frozen=True)
class RunConfig:
    algorithm: str = "PSO"
    seed: int = 0
    max_iterations: int = 1000
    tolerance: float = 1e-5
    population_size: int = 30
    stall_window: int = 1

    def __post_init__(self):
        get_algorithm(self.algorithm)
        if int(self.max_iterations) != self.max_iterations or self.max_iterations < 1:
            raise ValueError("max_iterations must be a positive integer, got %r" % self.max_iterations)
        if not (np.isfinite(self.tolerance) and self.tolerance > 0.0):
            raise ValueError("tolerance must be positive, got %r" % self.tolerance)
        if int(self.population_size) != self.population_size or self.population_size < 2:
            raise ValueError("population_size must be an integer >= 2, got %r" % self.population_size)
        if int(self.stall_window) != self.stall_window or self.stall_window < 1:
            raise ValueError("stall_window must be a positive integer, got %r" % self.stall_window)
        if int(self.seed) != self.seed or self.seed < 0:
            raise ValueError("seed must be a non-negative integer, got %r" % self.seed)

    def with_(self, **changes):
        return replace(self, **changes)


@dataclass(eq=False)
class RunRecord:
    algorithm: str
    seed: int
    best_position: np.ndarray
    best_fitness: float
    best_sample: PerformanceSample | None
    fitness_trace: list
    iterations_executed: int
    converged: bool
    wall_time: float = field(default=0.0, compare=False)

    def to_dict(self):
        sample = self.best_sample
        return {
            "algorithm": self.algorithm,
            "seed": int(self.seed),
            "best_fitness": float(self.best_fitness),
            "best_position": [float(v) for v in self.best_position],
            "packet_loss_rate": None if sample is None else sample.packet_loss_rate,
            "delay_ms": None if sample is None else sample.delay,
            "efficiency": None if sample is None else sample.efficiency,
            "iterations": int(self.iterations_executed),
            "converged": bool(self.converged),
            "trace": [float(v) for v in self.fitness_trace],
        }

    def to_json(self, **kwargs):
        return json.dumps(self.to_dict(), **kwargs)

    def __eq__(self, other):
        # Equality is on the serialized content, so wall_time never counts.
        if not isinstance(other, RunRecord):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    @classmethod
    def from_dict(cls, data):
        sample = None
        if data.get("packet_loss_rate") is not None:
            sample = PerformanceSample.from_dict(data)
        return cls(
            algorithm=data["algorithm"],
            seed=int(data["seed"]),
            best_position=np.asarray(data["best_position"], dtype=float),
            best_fitness=float(data["best_fitness"]),
            best_sample=sample,
            fitness_trace=list(data["trace"]),
            iterations_executed=int(data["iterations"]),
            converged=bool(data["converged"]),
        )


def convergence_check(trace, tolerance, window=1):
    """
    True iff each of the last ``window`` successive differences of ``trace``
    is below ``tolerance`` in absolute value. Short traces return False.
    """
    if not tolerance > 0.0:
        raise ValueError("tolerance must be positive")
    if window < 1:
        raise ValueError("window must be at least 1")
    if len(trace) < window + 1:
        return False
    tail = np.asarray(trace[-(window + 1):], dtype=float)
    return bool(np.all(np.abs(np.diff(tail)) < tolerance))


def minimize(objective, dimension, config, params=None):
    """
    Run one strategy on an arbitrary batch objective over ``[0, 1]^dimension``.

    The trace holds the best-so-far fitness after each step; the initial
    population does not count as an iteration.
    """
    algo = get_algorithm(config.algorithm)
    params = make_params(config.algorithm, params)
    rng = np.random.default_rng(config.seed)
    start = time.perf_counter()

    population = init_population(config.population_size, dimension, rng, objective)
    trace = []
    converged = False
    for t in range(1, config.max_iterations + 1):
        population = algo.step(population, params, objective, t, config.max_iterations, rng)
        trace.append(population.best_fitness)
        if convergence_check(trace, config.tolerance, config.stall_window):
            converged = True
            break

    return RunRecord(
        algorithm=config.algorithm,
        seed=config.seed,
        best_position=population.best_position.copy(),
        best_fitness=float(population.best_fitness),
        best_sample=None,
        fitness_trace=trace,
        iterations_executed=len(trace),
        converged=converged,
        wall_time=1000.0 * (time.perf_counter() - start),
    )


def optimize(scenario, weights, bounds, config, params=None):
    """Optimize the allocation on one scenario under the weighted fitness."""
    if scenario.n < 1:
        raise ValueError("scenario has no flows")
    objective = SliceObjective(scenario, weights, bounds)
    record = minimize(objective, scenario.n, config, params)
    record.best_sample = objective.sample(record.best_position)
    return record
