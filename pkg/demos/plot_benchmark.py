"""
A small benchmark table
=======================

``run_benchmark`` takes a list of configurations and returns one result per
configuration, in order. A configuration that fails yields a row with its
error message instead of stopping the run. ``emit_table`` renders CSV or
markdown. The full grid is available from the command line as
``sbmcluster bench``; this script keeps the grid small so it runs quickly.
"""

from sbmcluster import default_grid, emit_table, run_benchmark

configs = default_grid(
    ("iris", "circles"),
    ("manhattan",),
    k_max=5,
    t_min=0.2,
    t_max=0.6,
    t_step=0.2,
    restarts=3,
)
results = run_benchmark(configs)
print(emit_table(results, "markdown"))
