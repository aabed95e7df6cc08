"""
Sanity checks on known problems
===============================

Before trusting the optimizers on the slice model, check them where the
answer is known: the sphere function and a two-flow scenario small enough
for exhaustive search.
"""

from sliceopt import ALGORITHM_NAMES, RunConfig, minimize, optimize
from sliceopt.bench import calibration_objective, grid_oracle
from sliceopt.objective import calibrate_bounds
from sliceopt.validation import ORACLE_WEIGHTS, two_flow_scenario

# %%
# The sphere is remapped to the unit box with its minimum 0 at x = 0.5.
sphere = calibration_objective("sphere", 5)
for name in ALGORITHM_NAMES:
    rec = minimize(sphere, 5, RunConfig(name, seed=0, max_iterations=300, stall_window=300))
    print("%-8s %.2e" % (name, rec.best_fitness))

# %%
# Two flows asking for 2 and 1 pkt/ms on a 2.5 pkt/ms link. A grid with
# step 0.01 gives the reference optimum.
spec = two_flow_scenario()
bounds = calibrate_bounds(spec, 1000, seed=0)
x_star, f_star = grid_oracle(spec, ORACLE_WEIGHTS, bounds, 0.01)
print("grid optimum", x_star, round(f_star, 5))

# %%
# How close does each optimizer get?
for name in ALGORITHM_NAMES:
    rec = optimize(spec, ORACLE_WEIGHTS, bounds,
                   RunConfig(name, seed=0, max_iterations=300, stall_window=300))
    print("%-8s %.5f  (%+.2f%%)" % (name, rec.best_fitness,
                                   100 * (rec.best_fitness / f_star - 1)))
