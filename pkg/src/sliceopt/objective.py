"""Min-max normalization and the weighted-sum packet-loss/delay fitness."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .slice_model import SliceType, evaluate_batch, check_allocation, PerformanceSample

__all__ = [
    "ObjectiveWeights",
    "NormalizationBounds",
    "DEFAULT_WEIGHTS",
    "normalize",
    "fitness",
    "calibrate_bounds",
    "SliceObjective",
]


@dataclass(frozen=True)
class ObjectiveWeights:
    w1: float = 0.5
    w2: float = 0.5

    def __post_init__(self):
        if not (np.isfinite(self.w1) and np.isfinite(self.w2)):
            raise ValueError("weights must be finite")
        if self.w1 < 0.0 or self.w2 < 0.0:
            raise ValueError("weights must be non-negative, got w1=%r w2=%r" % (self.w1, self.w2))
        if self.w1 + self.w2 <= 0.0:
            raise ValueError("w1 + w2 must be positive")

    def normalized(self):
        total = self.w1 + self.w2
        return ObjectiveWeights(self.w1 / total, self.w2 / total)

    def to_dict(self):
        return {"w1": self.w1, "w2": self.w2}


DEFAULT_WEIGHTS = {
    SliceType.EMBB: ObjectiveWeights(0.7, 0.3),
    SliceType.URLLC: ObjectiveWeights(0.3, 0.7),
    SliceType.MMTC: ObjectiveWeights(0.5, 0.5),
}


@dataclass(frozen=True)
class NormalizationBounds:
    loss_min: float
    loss_max: float
    delay_min: float
    delay_max: float

    def __post_init__(self):
        if not self.loss_min < self.loss_max:
            raise ValueError("loss_min must be < loss_max")
        if not self.delay_min < self.delay_max:
            raise ValueError("delay_min must be < delay_max")

    def to_dict(self):
        return {
            "loss_min": self.loss_min,
            "loss_max": self.loss_max,
            "delay_min_ms": self.delay_min,
            "delay_max_ms": self.delay_max,
        }

    @classmethod
    def from_dict(cls, data):
        return cls(
            float(data["loss_min"]),
            float(data["loss_max"]),
            float(data["delay_min_ms"]),
            float(data["delay_max_ms"]),
        )


def normalize(p, bounds_min, bounds_max):
    """Min-max scale ``p`` into [0, 1], clamping values outside the bounds.

    Works elementwise on arrays.
    """
    if not bounds_min < bounds_max:
        raise ValueError(
            "normalization needs bounds_min < bounds_max, got %r >= %r" % (bounds_min, bounds_max)
        )
    scaled = (np.asarray(p, dtype=float) - bounds_min) / (bounds_max - bounds_min)
    out = np.clip(scaled, 0.0, 1.0)
    return float(out) if out.ndim == 0 else out


def _weighted(loss, delay, weights, bounds):
    return (
        weights.w1 * normalize(loss, bounds.loss_min, bounds.loss_max)
        + weights.w2 * normalize(delay, bounds.delay_min, bounds.delay_max)
    )


def fitness(sample, weights, bounds):
    """Weighted-sum fitness of one performance sample (lower is better)."""
    return float(_weighted(sample.packet_loss_rate, sample.delay, weights, bounds))


def _widen(lo, hi):
    if hi > lo:
        margin = 0.01 * (hi - lo)
    else:
        margin = 1e-6
    return lo - margin, hi + margin


def calibrate_bounds(spec, samples=1000, seed=0):
    """
    Estimate normalization bounds from uniform-random allocations.

    Parameters
    ----------
    spec : ScenarioSpec
    samples : int, default 1000
        Number of random allocations, at least 2.
    seed : int, default 0
        Seed of the private sampling generator.

    Returns
    -------
    NormalizationBounds
        Observed extremes widened by 1% of their range, or by 1e-6 when a
        metric never varies.
    """
    if samples < 2:
        raise ValueError("calibration needs at least 2 samples, got %r" % samples)
    rng = np.random.default_rng(seed)
    X = rng.random((int(samples), spec.n))
    loss, delay, _ = evaluate_batch(spec, X)
    loss_min, loss_max = _widen(loss.min(), loss.max())
    delay_min, delay_max = _widen(delay.min(), delay.max())
    return NormalizationBounds(
        float(loss_min), float(loss_max), float(delay_min), float(delay_max)
    )


class SliceObjective:
    """
    Fitness of allocations on one scenario, callable on a batch.

    ``objective(X)`` with ``X`` of shape (m, n) returns m fitness values.
    """

    def __init__(self, spec, weights, bounds):
        self.spec = spec
        self.weights = weights
        self.bounds = bounds

    @property
    def dimension(self):
        return self.spec.n

    def __call__(self, X):
        X = np.atleast_2d(X)
        loss, delay, _ = evaluate_batch(self.spec, X)
        return _weighted(loss, delay, self.weights, self.bounds)

    def sample(self, x):
        x = check_allocation(self.spec, x)
        loss, delay, eff = evaluate_batch(self.spec, x[None, :])
        return PerformanceSample(float(loss[0]), float(delay[0]), float(eff[0]))
