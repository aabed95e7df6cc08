"""
Oracle fixtures and the optimizer validation gates.

The reference problem is a two-flow scenario small enough for an
exhaustive grid search; its optimum and normalization bounds are frozen in
``fixtures/oracle_2flow.json`` and every strategy is checked against them.
A second gate runs the strategies on the 5-D sphere function.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from importlib import resources

import numpy as np

from .algorithms import ALGORITHM_NAMES
from .bench import calibration_objective, grid_oracle
from .engine import RunConfig, minimize, optimize
from .objective import NormalizationBounds, ObjectiveWeights, calibrate_bounds
from .slice_model import ScenarioSpec, SliceType, evaluate_batch

ORACLE_FIXTURE = "oracle_2flow.json"
THRESHOLD_FIXTURE = "calibration_thresholds.json"

ORACLE_STEP = 0.01
ORACLE_WEIGHTS = ObjectiveWeights(0.5, 0.5)
VALIDATION_SEEDS = tuple(range(10))
VALIDATION_BUDGET = 1000
ORACLE_TOLERANCE = {"ACO": 0.05}
DEFAULT_ORACLE_TOLERANCE = 0.02
ORACLE_MIN_PASSES = 9
SPHERE_DIMENSION = 5
SPHERE_MIN_PASSES = 8


def two_flow_scenario():
    """Demands 2 and 1 pkt/ms on a 2.5 pkt/ms link, delays in [1, 20] ms."""
    return ScenarioSpec(
        slice_type=SliceType.EMBB,
        flows=(2.0, 1.0),
        capacity=2.5,
        base_delay=1.0,
        max_delay=20.0,
        seed=0,
    )


def load_fixture(name):
    text = resources.files("sliceopt").joinpath("fixtures", name).read_text()
    return json.loads(text)


def compute_oracle_fixture(step=ORACLE_STEP):
    """Grid optimum, bounds and metric extremes of the two-flow scenario."""
    spec = two_flow_scenario()
    bounds = calibrate_bounds(spec, samples=1000, seed=0)
    x, f = grid_oracle(spec, ORACLE_WEIGHTS, bounds, step)
    axis = np.linspace(0.0, 1.0, int(round(1.0 / step)) + 1)
    grid = np.stack(np.meshgrid(axis, axis, indexing="ij"), axis=-1).reshape(-1, 2)
    loss, delay, _ = evaluate_batch(spec, grid)
    return {
        "scenario": spec.to_dict(),
        "weights": ORACLE_WEIGHTS.to_dict(),
        "bounds": bounds.to_dict(),
        "calibration": {"samples": 1000, "seed": 0},
        "step": step,
        "best_allocation": [float(v) for v in x],
        "best_fitness": f,
        "grid_extremes": {
            "loss_min": float(loss.min()),
            "loss_max": float(loss.max()),
            "delay_min_ms": float(delay.min()),
            "delay_max_ms": float(delay.max()),
        },
    }


def write_fixtures(out_dir, thresholds=None):
    """Store the oracle fixture (and optionally thresholds) as JSON files."""
    os.makedirs(out_dir, exist_ok=True)
    paths = []
    path = os.path.join(out_dir, ORACLE_FIXTURE)
    with open(path, "w") as fh:
        json.dump(compute_oracle_fixture(), fh, indent=2)
        fh.write("\n")
    paths.append(path)
    if thresholds is not None:
        path = os.path.join(out_dir, THRESHOLD_FIXTURE)
        with open(path, "w") as fh:
            json.dump(thresholds, fh, indent=2)
            fh.write("\n")
        paths.append(path)
    return paths


@dataclass
class GateResult:
    name: str
    algorithm: str
    passes: int
    required: int
    values: list
    threshold: float

    @property
    def ok(self):
        return self.passes >= self.required

    def line(self):
        return "%s %-4s %-8s %2d/%d within %.4g  (worst %.4g)" % (
            "PASS" if self.ok else "FAIL", self.name, self.algorithm, self.passes,
            len(self.values), self.threshold, max(self.values),
        )


def _full_budget(algorithm, seed):
    # The window equals the budget, so the run never stops early.
    return RunConfig(algorithm, seed, VALIDATION_BUDGET, population_size=30,
                     stall_window=VALIDATION_BUDGET)


def oracle_gate(algorithm, seeds=VALIDATION_SEEDS, fixture=None):
    """Best fitness within the relative tolerance of the grid optimum."""
    fixture = fixture or load_fixture(ORACLE_FIXTURE)
    spec = ScenarioSpec.from_dict(fixture["scenario"])
    weights = ObjectiveWeights(**fixture["weights"])
    bounds = NormalizationBounds.from_dict(fixture["bounds"])
    target = fixture["best_fitness"]
    tol = ORACLE_TOLERANCE.get(algorithm, DEFAULT_ORACLE_TOLERANCE)
    limit = target * (1.0 + tol)
    values = [optimize(spec, weights, bounds, _full_budget(algorithm, s)).best_fitness
              for s in seeds]
    passes = sum(v <= limit for v in values)
    return GateResult("oracle", algorithm, passes, ORACLE_MIN_PASSES, values, limit)


def sphere_gate(algorithm, seeds=VALIDATION_SEEDS, thresholds=None):
    """Best sphere value under the algorithm's frozen threshold."""
    thresholds = thresholds or load_fixture(THRESHOLD_FIXTURE)["sphere_5d"]
    limit = thresholds[algorithm]
    sphere = calibration_objective("sphere", SPHERE_DIMENSION)
    values = [minimize(sphere, SPHERE_DIMENSION, _full_budget(algorithm, s)).best_fitness
              for s in seeds]
    passes = sum(v <= limit for v in values)
    return GateResult("sphere", algorithm, passes, SPHERE_MIN_PASSES, values, limit)


def run_validation(algorithms=ALGORITHM_NAMES, report=print):
    """Run both gates for every algorithm; True when all pass."""
    ok = True
    for gate in (oracle_gate, sphere_gate):
        for name in algorithms:
            result = gate(name)
            report(result.line())
            ok = ok and result.ok
    return ok
