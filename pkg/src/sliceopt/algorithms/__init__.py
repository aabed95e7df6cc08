"""The nine population-based strategies behind one step interface.

Every ``step_*`` function has the signature
``step(population, params, objective, t, t_max, rng) -> Population`` where
``objective`` maps an (m, n) array of positions to m fitness values and ``t``
is the 1-based iteration index.
"""

from typing import Callable, NamedTuple

from .base import Candidate, Population, init_population, clamp, params_from_dict
from .ga import GaParams, step_ga
from .pso import PsoParams, step_pso
from .gwo import GwoParams, step_gwo
from .aco import AcoParams, step_aco
from .sa import SaParams, step_sa
from .abc import AbcParams, step_abc
from .bwo import BwoParams, step_bwo
from .woa import WoaParams, step_woa
from .firefly import FireflyParams, step_firefly


class Algorithm(NamedTuple):
    name: str
    params_type: type
    step: Callable


ALGORITHM_NAMES = ("GA", "PSO", "GWO", "ACO", "SA", "ABC", "BWO", "WOA", "Firefly")

ALGORITHMS = {
    a.name: a
    for a in (
        Algorithm("GA", GaParams, step_ga),
        Algorithm("PSO", PsoParams, step_pso),
        Algorithm("GWO", GwoParams, step_gwo),
        Algorithm("ACO", AcoParams, step_aco),
        Algorithm("SA", SaParams, step_sa),
        Algorithm("ABC", AbcParams, step_abc),
        Algorithm("BWO", BwoParams, step_bwo),
        Algorithm("WOA", WoaParams, step_woa),
        Algorithm("Firefly", FireflyParams, step_firefly),
    )
}


def get_algorithm(name):
    try:
        return ALGORITHMS[name]
    except KeyError:
        raise ValueError(
            "unknown algorithm %r, valid names are: %s" % (name, ", ".join(ALGORITHM_NAMES))
        ) from None


def make_params(name, overrides=None):
    """Default parameters for ``name`` updated with ``overrides``."""
    algo = get_algorithm(name)
    if overrides is None:
        return algo.params_type()
    if isinstance(overrides, algo.params_type):
        return overrides
    return params_from_dict(algo.params_type, overrides)


__all__ = [
    "Algorithm", "ALGORITHMS", "ALGORITHM_NAMES", "get_algorithm", "make_params",
    "Candidate", "Population", "init_population", "clamp",
    "GaParams", "PsoParams", "GwoParams", "AcoParams", "SaParams", "AbcParams",
    "BwoParams", "WoaParams", "FireflyParams",
    "step_ga", "step_pso", "step_gwo", "step_aco", "step_sa", "step_abc",
    "step_bwo", "step_woa", "step_firefly",
]
