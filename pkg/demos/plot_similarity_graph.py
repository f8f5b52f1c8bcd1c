"""
From a feature table to a similarity graph
==========================================

Every data point becomes a vertex and every pair of points is joined by an
edge weighted with ``exp(-D(x, y))``. A global threshold then turns the
complete weighted graph into a binary one for the plain block model.
"""

import numpy as np

from sbmcluster import apply_threshold, induce_graph, load_iris, similarity, threshold_grid

# %%
# The three distances order the similarities pointwise: Chebyshev is never
# larger than Euclidean, which is never larger than Manhattan, so the
# similarities run the other way.
x, y = (0.0, 0.0), (1.0, 2.0)
for metric in ("chebyshev", "euclidean", "manhattan"):
    print(f"{metric:>10}: {similarity(x, y, metric):.6f}")

# %%
# Iris gives a 150 x 150 weight matrix with a zero diagonal.
iris = load_iris()
g = induce_graph(iris, "manhattan")
print(g.weights.shape, g.weights.max(), np.allclose(g.weights, g.weights.T))

# %%
# Raising the threshold only ever removes edges.
for t in threshold_grid(0.05, 0.95, 0.15):
    b = apply_threshold(g, t)
    print(f"t={t:.2f}  edges={b.n_edges:5d}  density={b.n_edges / (150 * 149 / 2):.3f}")

# %%
# The first few lines of the edge-list export.
print("\n".join(g.to_edge_list().splitlines()[:4]))
