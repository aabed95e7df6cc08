"""
The slice model
===============

A scenario is a handful of traffic flows sharing one link. This script
builds one scenario per slice class, evaluates a few allocations and shows
how loss and delay respond.
"""

import numpy as np

from sliceopt import evaluate, make_scenario, uniform_allocation

# %%
# Each slice class has its own generator. eMBB demands are heavy tailed and
# overload the link by 20%, URLLC runs at 70% load, and mMTC has fifty small
# flows at 110%.
for name in ("eMBB", "URLLC", "mMTC"):
    spec = make_scenario(name, seed=0)
    print("%-5s  %2d flows  capacity %.0f  total demand %.1f pkt/ms"
          % (name, spec.n, spec.capacity, spec.demands.sum()))

# %%
# An allocation vector has one entry in [0, 1] per flow. It is normalized
# into capacity shares, so only the ratios matter.
spec = make_scenario("URLLC", seed=0)
x = uniform_allocation(spec)
print(evaluate(spec, x))
print(evaluate(spec, 0.3 * x))

# %%
# Giving each flow a share proportional to its demand removes all loss
# when capacity suffices, and the slack lowers the queueing delay.
proportional = spec.demands / spec.demands.max()
sample = evaluate(spec, proportional)
print("proportional: loss %.3f  delay %.2f ms  satisfied %.0f%%"
      % (sample.packet_loss_rate, sample.delay, 100 * sample.efficiency))

# %%
# Starving a single flow is costly: its delay jumps to the slice budget.
starved = proportional.copy()
starved[0] = 0.0
print("starved flow 0:", evaluate(spec, starved))

# %%
# On an overloaded slice some loss is unavoidable; the question is only
# how it is spread.
embb = make_scenario("eMBB", seed=0)
rng = np.random.default_rng(0)
for _ in range(3):
    print(evaluate(embb, rng.random(embb.n)))
