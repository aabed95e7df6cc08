"""
A small benchmark and its tables
================================

Run every optimizer on every slice for a few seeds and pivot the results
into the three comparison tables. The command line does the same at full
scale with ``sliceopt bench``.
"""

from sliceopt.bench import SuiteConfig, execute_suite
from sliceopt.engine import RunConfig
from sliceopt.report import emit_plot_data, emit_tables

suite = SuiteConfig(
    seeds=(0, 1, 2),
    run_config=RunConfig(max_iterations=300, stall_window=50),
)
result = execute_suite(suite)

# %%
# One aggregated row per (slice, algorithm): means over seeds plus their
# standard deviations.
for row in result.rows[:3]:
    print(row.to_dict())

# %%
# Reductions are measured against the uniform split on the same scenario.
for s, base in result.baselines.items():
    print(s.value, base)

# %%
# The tables, rendered as markdown.
for name, text in emit_tables(result.rows, "markdown").items():
    print(name)
    print(text)

# %%
# Figure data is plain CSV drawn from the same values.
print(emit_plot_data(result.rows, "fig3"))
