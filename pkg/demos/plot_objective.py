"""
Scalarizing loss and delay
==========================

Loss and delay live on different scales, so each is min-max normalized
using bounds measured on random allocations before the two are blended
with slice-specific weights.
"""

import numpy as np

from sliceopt import (
    DEFAULT_WEIGHTS, ObjectiveWeights, SliceObjective, SliceType, calibrate_bounds,
    make_scenario,
)

spec = make_scenario("eMBB", seed=0)

# %%
# Bounds come from 1000 uniform random allocations and are widened by 1%
# of their range so that typical allocations do not sit on the edge.
bounds = calibrate_bounds(spec, samples=1000, seed=0)
print(bounds)

# %%
# Each slice has its own emphasis: eMBB cares most about loss and URLLC
# about delay.
for s in SliceType:
    print(s.value, DEFAULT_WEIGHTS[s])

# %%
# The objective accepts a batch of allocations and returns one fitness per
# row, which is what the optimizers consume.
objective = SliceObjective(spec, DEFAULT_WEIGHTS[SliceType.EMBB], bounds)
X = np.random.default_rng(1).random((5, spec.n))
print(np.round(objective(X), 4))

# %%
# Moving all the weight to one side turns the fitness into that metric's
# normalized value alone.
loss_only = SliceObjective(spec, ObjectiveWeights(1.0, 0.0), bounds)
for row, f in zip(X, loss_only(X)):
    print("%.4f  loss %.4f" % (f, objective.sample(row).packet_loss_rate))
