"""
Evaluation matrix over algorithms, slice types and seeds.

Also hosts the verification oracles: the exhaustive grid search over small
scenarios and the analytic calibration functions.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .algorithms import ALGORITHM_NAMES, get_algorithm, make_params
from .engine import RunConfig, RunRecord, optimize
from .objective import DEFAULT_WEIGHTS, ObjectiveWeights, SliceObjective, calibrate_bounds
from .slice_model import SliceType, evaluate, make_scenario, uniform_allocation

__all__ = [
    "MetricsRow",
    "SuiteConfig",
    "SuiteResult",
    "RunError",
    "packet_loss_reduction",
    "delay_reduction",
    "convergence_rate",
    "baseline_sample",
    "rows_from_records",
    "execute_suite",
    "run_suite",
    "grid_oracle",
    "calibration_objective",
]

CALIBRATION_SAMPLES = 1000
# Bench runs stop after this many consecutive sub-tolerance iterations; a
# single-iteration window ends most runs within a handful of steps.
BENCH_STALL_WINDOW = 50


class RunError(RuntimeError):
    """A single (algorithm, slice, seed) run failed."""

    def __init__(self, algorithm, slice_type, seed, cause):
        super().__init__("%s on %s with seed %s failed: %s" % (algorithm, slice_type, seed, cause))
        self.algorithm = algorithm
        self.slice_type = slice_type
        self.seed = seed


def packet_loss_reduction(baseline, optimized):
    """Percent reduction of the loss rate, or None for a lossless baseline."""
    if baseline <= 0.0:
        return None
    return 100.0 * (baseline - optimized) / baseline


def delay_reduction(baseline, optimized):
    """Delay saved in milliseconds; negative when the delay got worse."""
    return baseline - optimized


def convergence_rate(trace, delta=0.01):
    """
    First iteration index at which the best-so-far trace stabilized.

    Parameters
    ----------
    trace : sequence of float or RunRecord
        Best-so-far fitness per iteration.
    delta : float, default 0.01
        Relative tolerance around the final value; used as an absolute
        threshold when the final value is exactly 0.

    Returns
    -------
    int
        Smallest ``t`` with ``trace[t] <= trace[-1] * (1 + delta)``.
    """
    if isinstance(trace, RunRecord):
        trace = trace.fitness_trace
    if not delta > 0.0:
        raise ValueError("delta must be positive")
    trace = np.asarray(trace, dtype=float)
    if trace.size == 0:
        raise ValueError("convergence rate of an empty trace is undefined")
    final = trace[-1]
    if final == 0.0:
        hit = trace < delta
    else:
        hit = trace <= final + abs(final) * delta
    return int(np.argmax(hit))


@dataclass
class MetricsRow:
    algorithm: str
    slice_type: SliceType
    packet_loss_reduction: float | None
    delay_reduction: float
    efficiency: float | None
    convergence_rate: float
    seeds_used: int
    dispersion: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "algorithm": self.algorithm,
            "slice_type": self.slice_type.value,
            "packet_loss_reduction": self.packet_loss_reduction,
            "delay_reduction": self.delay_reduction,
            "efficiency": self.efficiency,
            "convergence_rate": self.convergence_rate,
            "seeds_used": self.seeds_used,
            "dispersion": dict(self.dispersion),
        }


def _mean_std(values):
    values = [v for v in values if v is not None]
    if not values:
        return None, None
    arr = np.asarray(values, dtype=float)
    return float(arr.mean()), float(arr.std())


def rows_from_records(records, baselines, delta=0.01):
    """
    Aggregate run records into one row per (algorithm, slice).

    Parameters
    ----------
    records : iterable of (slice_type, dict)
        Run records in their JSON form, tagged with their slice.
    baselines : dict
        Baseline ``PerformanceSample`` per slice type.
    delta : float, default 0.01
        Relative threshold of ``convergence_rate``.

    Returns
    -------
    list of MetricsRow
        Ordered by slice type, then by algorithm in canonical order.
    """
    groups = {}
    for slice_type, rec in records:
        slice_type = SliceType.parse(slice_type)
        groups.setdefault((slice_type, rec["algorithm"]), []).append(rec)

    slice_order = list(SliceType)
    rows = []
    for (slice_type, name), recs in sorted(
        groups.items(),
        key=lambda kv: (slice_order.index(kv[0][0]), ALGORITHM_NAMES.index(kv[0][1])),
    ):
        recs = sorted(recs, key=lambda r: r["seed"])
        base = baselines[slice_type]
        plr = [packet_loss_reduction(base.packet_loss_rate, r["packet_loss_rate"]) for r in recs]
        dr = [delay_reduction(base.delay, r["delay_ms"]) for r in recs]
        conv = [convergence_rate(r["trace"], delta) for r in recs]
        eff = [100.0 * r["efficiency"] for r in recs] if slice_type is SliceType.MMTC else []

        plr_mean, plr_std = _mean_std(plr)
        dr_mean, dr_std = _mean_std(dr)
        conv_mean, conv_std = _mean_std(conv)
        eff_mean, eff_std = _mean_std(eff)
        dispersion = {"delay_reduction": dr_std, "convergence_rate": conv_std}
        if plr_std is not None:
            dispersion["packet_loss_reduction"] = plr_std
        if eff_std is not None:
            dispersion["efficiency"] = eff_std
        rows.append(MetricsRow(
            algorithm=name,
            slice_type=slice_type,
            packet_loss_reduction=plr_mean,
            delay_reduction=dr_mean,
            efficiency=eff_mean,
            convergence_rate=conv_mean,
            seeds_used=len(recs),
            dispersion=dispersion,
        ))
    return rows


@dataclass
class SuiteConfig:
    """What to run: the matrix axes plus shared run settings."""

    algorithms: tuple = ALGORITHM_NAMES
    slices: tuple = tuple(SliceType)
    seeds: tuple = tuple(range(10))
    run_config: RunConfig = field(
        default_factory=lambda: RunConfig(stall_window=BENCH_STALL_WINDOW)
    )
    weights: ObjectiveWeights | None = None
    algorithm_params: dict = field(default_factory=dict)
    scenario_overrides: dict = field(default_factory=dict)
    convergence_delta: float = 0.01

    def __post_init__(self):
        self.algorithms = tuple(self.algorithms)
        self.slices = tuple(SliceType.parse(s) for s in self.slices)
        self.seeds = tuple(int(s) for s in self.seeds)
        if not self.algorithms:
            raise ValueError("suite needs at least one algorithm")
        if not self.slices:
            raise ValueError("suite needs at least one slice")
        if not self.seeds:
            raise ValueError("suite needs at least one seed")
        for name in self.algorithms:
            get_algorithm(name)
        for name, overrides in self.algorithm_params.items():
            make_params(name, overrides)

    def scenario(self, slice_type):
        over = self.scenario_overrides.get(slice_type.value, {})
        return make_scenario(slice_type, seed=int(over.get("seed", 0)), n=over.get("n"))

    def weights_for(self, slice_type):
        return self.weights if self.weights is not None else DEFAULT_WEIGHTS[slice_type]


@dataclass
class SuiteResult:
    rows: list
    records: list  # (slice_type, RunRecord)
    baselines: dict
    scenarios: dict
    bounds: dict


def baseline_sample(spec):
    return evaluate(spec, uniform_allocation(spec))


def _run_one(job):
    name, slice_type, seed, scenario, weights, bounds, run_config, params = job
    try:
        config = run_config.with_(algorithm=name, seed=seed)
        return optimize(scenario, weights, bounds, config, params)
    except Exception as exc:
        raise RunError(name, slice_type.value, seed, exc) from exc


def execute_suite(suite, workers=1):
    """Run the full matrix and keep every intermediate artifact."""
    scenarios, bounds, baselines = {}, {}, {}
    for s in suite.slices:
        spec = suite.scenario(s)
        scenarios[s] = spec
        bounds[s] = calibrate_bounds(spec, CALIBRATION_SAMPLES, seed=spec.seed)
        baselines[s] = baseline_sample(spec)

    jobs = [
        (name, s, seed, scenarios[s], suite.weights_for(s), bounds[s], suite.run_config,
         suite.algorithm_params.get(name))
        for s, name, seed in itertools.product(suite.slices, suite.algorithms, suite.seeds)
    ]
    if workers is None:
        workers = os.cpu_count() or 1
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_one, jobs))
    else:
        results = [_run_one(job) for job in jobs]

    records = [(job[1], rec) for job, rec in zip(jobs, results)]
    rows = rows_from_records(
        [(s, rec.to_dict()) for s, rec in records], baselines, suite.convergence_delta
    )
    return SuiteResult(rows, records, baselines, scenarios, bounds)


def run_suite(suite, workers=1):
    """One aggregated ``MetricsRow`` per (slice, algorithm)."""
    return execute_suite(suite, workers).rows


def grid_oracle(spec, weights, bounds, step=0.01):
    """
    Exhaustive minimization over the grid ``{0, step, ..., 1}^n``.

    Returns the minimizing allocation and its fitness; ties go to the
    lexicographically smallest allocation.
    """
    if spec.n > 3:
        raise ValueError("grid oracle supports at most 3 flows, got %d" % spec.n)
    if not 0.0 < step <= 0.5:
        raise ValueError("step must lie in (0, 0.5], got %r" % step)
    count = int(np.floor(1.0 / step + 1e-9))
    if abs(count * step - 1.0) < 1e-9:
        axis = np.linspace(0.0, 1.0, count + 1)
    else:
        axis = np.append(np.arange(count + 1) * step, 1.0)

    objective = SliceObjective(spec, weights, bounds)
    # meshgrid with ij indexing enumerates points in lexicographic order, so
    # argmin's first-occurrence rule is the tie-break.
    grid = np.stack(np.meshgrid(*([axis] * spec.n), indexing="ij"), axis=-1).reshape(-1, spec.n)
    values = objective(grid)
    i = int(np.argmin(values))
    return grid[i].copy(), float(values[i])


def calibration_objective(name, dimension):
    """
    Sphere or Rastrigin remapped to ``[0, 1]^d`` through ``z = 10 (x - 0.5)``.

    Both have their minimum 0 at ``x = 0.5`` in every component.
    """
    if dimension < 1:
        raise ValueError("dimension must be at least 1")

    def sphere(X):
        Z = 10.0 * (np.atleast_2d(X) - 0.5)
        return np.sum(Z ** 2, axis=1)

    def rastrigin(X):
        Z = 10.0 * (np.atleast_2d(X) - 0.5)
        return 10.0 * dimension + np.sum(Z ** 2 - 10.0 * np.cos(2.0 * np.pi * Z), axis=1)

    funcs = {"sphere": sphere, "rastrigin": rastrigin}
    try:
        return funcs[name]
    except KeyError:
        raise ValueError("unknown calibration function %r, expected sphere or rastrigin" % name) from None
