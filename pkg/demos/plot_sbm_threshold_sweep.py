"""
Choosing a threshold for the Bernoulli block model
==================================================

The plain SBM sees only which edges survive the threshold, so the threshold
and the number of blocks are chosen together by the best silhouette over a
grid. The NMI column is printed next to it to show how well the
internal score tracks agreement with the true classes.
"""

from sbmcluster import ExperimentConfig, gen_two_moons, select_threshold_and_k, sweep_report

ds = gen_two_moons(120, 0.05, seed=1)
cfg = ExperimentConfig("two_moons", "sbm", k_max=6, t_min=0.1, t_max=0.7, t_step=0.2, restarts=5)

# %%
rows = sweep_report(ds, cfg)
print("   t  K  silhouette    NMI")
for r in rows:
    print(f"{r['t']:.2f} {r['k']:2d}  {r['silhouette']:10.4f} {r['nmi']:.4f}")

# %%
# Selection reuses the sweep: best silhouette, ties to smaller K then smaller t.
best = select_threshold_and_k(ds, cfg, rows)
print(f"chosen t={best.threshold} K={best.k} silhouette={best.silhouette:.4f} NMI={best.nmi:.4f}")
