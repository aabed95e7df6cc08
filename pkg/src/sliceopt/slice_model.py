"""
Synthetic LTE/5G slice environment.

A scenario is a set of traffic flows sharing one link of fixed capacity. An
allocation vector ``x`` in ``[0, 1]^n`` is projected onto the simplex to give
each flow a share of that capacity; loss follows from the demand deficit and
delay from an M/M/1-style ``1 / (mu - lambda)`` queueing term capped at the
slice's delay budget.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass

import numpy as np

__all__ = [
    "SliceType",
    "FlowSpec",
    "ScenarioSpec",
    "PerformanceSample",
    "SLICE_PROFILES",
    "make_scenario",
    "evaluate",
    "evaluate_batch",
    "uniform_allocation",
]


class SliceType(str, enum.Enum):
    EMBB = "eMBB"
    URLLC = "URLLC"
    MMTC = "mMTC"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        for member in cls:
            if member.value.lower() == str(value).lower():
                return member
        raise ValueError(
            "unknown slice type %r, expected one of %s"
            % (value, ", ".join(m.value for m in cls))
        )

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class SliceProfile:
    """Generator constants for one slice class."""

    n: int
    capacity: float
    load: float
    base_delay: float
    max_delay: float
    demand_model: str


# Capacities are in packets/ms; ``load`` is total demand over capacity.
SLICE_PROFILES = {
    SliceType.EMBB: SliceProfile(
        n=8, capacity=20.0, load=1.2, base_delay=2.0, max_delay=50.0,
        demand_model="pareto",
    ),
    SliceType.URLLC: SliceProfile(
        n=6, capacity=10.0, load=0.7, base_delay=1.0, max_delay=10.0,
        demand_model="uniform",
    ),
    SliceType.MMTC: SliceProfile(
        n=50, capacity=10.0, load=1.1, base_delay=5.0, max_delay=100.0,
        demand_model="jitter",
    ),
}

PARETO_SHAPE = 1.5
PARETO_TRUNCATION = 10.0
UNIFORM_SPREAD = 0.1
JITTER = 0.2


@dataclass(frozen=True)
class FlowSpec:
    demand: float

    def __post_init__(self):
        if not np.isfinite(self.demand) or self.demand <= 0.0:
            raise ValueError("flow demand must be positive and finite, got %r" % self.demand)


@dataclass(frozen=True)
class ScenarioSpec:
    """One slice instance: flows with demands sharing ``capacity``.

    Delays are in milliseconds and rates in packets per millisecond.
    """

    slice_type: SliceType
    flows: tuple
    capacity: float
    base_delay: float
    max_delay: float
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "slice_type", SliceType.parse(self.slice_type))
        flows = tuple(f if isinstance(f, FlowSpec) else FlowSpec(float(f)) for f in self.flows)
        object.__setattr__(self, "flows", flows)
        if len(flows) < 1:
            raise ValueError("a scenario needs at least one flow")
        if not np.isfinite(self.capacity) or self.capacity <= 0.0:
            raise ValueError("capacity must be positive, got %r" % self.capacity)
        if not (0.0 <= self.base_delay < self.max_delay) or not np.isfinite(self.max_delay):
            raise ValueError(
                "need 0 <= base_delay < max_delay, got base_delay=%r max_delay=%r"
                % (self.base_delay, self.max_delay)
            )
        if int(self.seed) < 0:
            raise ValueError("seed must be non-negative")

    @property
    def n(self):
        return len(self.flows)

    @property
    def demands(self):
        return np.array([f.demand for f in self.flows], dtype=float)

    def to_dict(self):
        return {
            "slice_type": self.slice_type.value,
            "flows": [{"demand": f.demand} for f in self.flows],
            "capacity": self.capacity,
            "base_delay_ms": self.base_delay,
            "max_delay_ms": self.max_delay,
            "seed": int(self.seed),
        }

    @classmethod
    def from_dict(cls, data):
        try:
            return cls(
                slice_type=data["slice_type"],
                flows=tuple(FlowSpec(float(f["demand"])) for f in data["flows"]),
                capacity=float(data["capacity"]),
                base_delay=float(data["base_delay_ms"]),
                max_delay=float(data["max_delay_ms"]),
                seed=int(data.get("seed", 0)),
            )
        except KeyError as exc:
            raise ValueError("scenario document is missing key %s" % exc) from None

    def to_json(self, **kwargs):
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class PerformanceSample:
    packet_loss_rate: float
    delay: float
    efficiency: float

    def to_dict(self):
        return {
            "packet_loss_rate": self.packet_loss_rate,
            "delay_ms": self.delay,
            "efficiency": self.efficiency,
        }

    @classmethod
    def from_dict(cls, data):
        return cls(
            float(data["packet_loss_rate"]), float(data["delay_ms"]), float(data["efficiency"])
        )


def _raw_demands(profile, n, rng):
    if profile.demand_model == "pareto":
        # Classical Pareto with unit scale, truncated to keep one flow from
        # swallowing the whole link.
        raw = np.minimum(rng.pareto(PARETO_SHAPE, size=n) + 1.0, PARETO_TRUNCATION)
    elif profile.demand_model == "uniform":
        raw = rng.uniform(1.0 - UNIFORM_SPREAD, 1.0 + UNIFORM_SPREAD, size=n)
    elif profile.demand_model == "jitter":
        raw = 1.0 + rng.uniform(-JITTER, JITTER, size=n)
    else:
        raise ValueError("unknown demand model %r" % profile.demand_model)
    return raw


def make_scenario(slice_type, seed=0, n=None):
    """
    Generate a deterministic scenario from a slice profile.

    Parameters
    ----------
    slice_type : SliceType or str
        Slice class selecting the profile in ``SLICE_PROFILES``.
    seed : int, default 0
        Seed of the demand generator.
    n : int, optional
        Number of flows. Defaults to the profile's size.

    Returns
    -------
    ScenarioSpec
        Demands sum to ``load * capacity``.
    """
    slice_type = SliceType.parse(slice_type)
    profile = SLICE_PROFILES[slice_type]
    if n is None:
        n = profile.n
    if int(n) != n or n < 1:
        raise ValueError("n must be a positive integer, got %r" % (n,))
    if int(seed) < 0:
        raise ValueError("seed must be non-negative")

    rng = np.random.default_rng(int(seed))
    raw = _raw_demands(profile, int(n), rng)
    demands = raw * (profile.load * profile.capacity / raw.sum())
    return ScenarioSpec(
        slice_type=slice_type,
        flows=tuple(FlowSpec(float(d)) for d in demands),
        capacity=profile.capacity,
        base_delay=profile.base_delay,
        max_delay=profile.max_delay,
        seed=int(seed),
    )


def evaluate_batch(spec, X):
    """
    Vectorized model over a batch of allocations.

    Parameters
    ----------
    spec : ScenarioSpec
    X : ndarray of shape (m, n)
        Allocations, assumed already validated.

    Returns
    -------
    loss, delay, efficiency : ndarray of shape (m,)
    """
    X = np.asarray(X, dtype=float)
    demand = spec.demands
    n = demand.size

    total = X.sum(axis=1, keepdims=True)
    zero = total[:, 0] == 0.0
    safe_total = np.where(total == 0.0, 1.0, total)
    share = X / safe_total
    share[zero] = 1.0 / n
    served = share * spec.capacity

    flow_loss = np.maximum(0.0, 1.0 - served / demand)
    weight = demand / demand.sum()
    loss = np.sum(flow_loss * weight, axis=1)

    slack = served - demand
    with np.errstate(divide="ignore"):
        queued = spec.base_delay + 1.0 / np.where(slack > 0.0, slack, 1.0)
    flow_delay = np.where(slack > 0.0, np.minimum(spec.max_delay, queued), spec.max_delay)
    delay = np.sum(flow_delay * weight, axis=1)

    efficiency = np.count_nonzero(flow_loss == 0.0, axis=1) / n
    # Guard against round-off pushing the weighted means past their bounds.
    loss = np.clip(loss, 0.0, 1.0)
    delay = np.clip(delay, spec.base_delay, spec.max_delay)
    return loss, delay, efficiency


def check_allocation(spec, x):
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or x.size != spec.n:
        raise ValueError(
            "allocation has length %d, scenario has %d flows" % (np.size(x), spec.n)
        )
    if not np.all(np.isfinite(x)) or np.any(x < 0.0) or np.any(x > 1.0):
        raise ValueError("allocation components must lie in [0, 1]")
    return x


def evaluate(spec, x):
    """Map one allocation vector to its (loss, delay, efficiency) sample."""
    x = check_allocation(spec, x)
    loss, delay, eff = evaluate_batch(spec, x[None, :])
    return PerformanceSample(float(loss[0]), float(delay[0]), float(eff[0]))


def uniform_allocation(spec):
    return np.full(spec.n, 1.0 / spec.n)
