"""
One optimization run
====================

Run the whale optimizer on a URLLC scenario, look at the convergence trace
and compare the result with the uniform split.
"""

from sliceopt import (
    DEFAULT_WEIGHTS, RunConfig, SliceType, calibrate_bounds, evaluate, make_scenario,
    optimize, uniform_allocation,
)

spec = make_scenario("URLLC", seed=0)
weights = DEFAULT_WEIGHTS[SliceType.URLLC]
bounds = calibrate_bounds(spec, 1000, seed=spec.seed)

# %%
# The default configuration runs up to 1000 iterations and stops as soon as
# the best fitness changes by less than 1e-5. A longer stall window asks
# for that to hold over several consecutive iterations.
config = RunConfig(algorithm="WOA", seed=3, stall_window=50)
record = optimize(spec, weights, bounds, config)
print("iterations %d, converged %s, best fitness %.5f"
      % (record.iterations_executed, record.converged, record.best_fitness))

# %%
# The trace is the best fitness seen so far after every iteration.
trace = record.fitness_trace
for t in (0, 5, 20, len(trace) - 1):
    print("  t=%3d  %.5f" % (t, trace[min(t, len(trace) - 1)]))

# %%
# Against the uniform split:
base = evaluate(spec, uniform_allocation(spec))
best = record.best_sample
print("uniform  loss %.4f  delay %.3f ms" % (base.packet_loss_rate, base.delay))
print("WOA      loss %.4f  delay %.3f ms" % (best.packet_loss_rate, best.delay))

# %%
# Every run is reproducible from its seed.
again = optimize(spec, weights, bounds, config)
print("identical re-run:", again == record)
