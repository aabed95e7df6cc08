"""Metaheuristic allocation of shared capacity across LTE/5G slice flows."""

from .slice_model import (
    SliceType, FlowSpec, ScenarioSpec, PerformanceSample, make_scenario, evaluate,
    uniform_allocation,
)
from .objective import (
    ObjectiveWeights, NormalizationBounds, DEFAULT_WEIGHTS, normalize, fitness,
    calibrate_bounds, SliceObjective,
)
from .algorithms import ALGORITHM_NAMES, make_params
from .engine import RunConfig, RunRecord, convergence_check, minimize, optimize

__version__ = "0.1.0"
