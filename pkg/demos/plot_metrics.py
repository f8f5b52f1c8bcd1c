"""
Silhouette, NMI and ARI in detail
=================================

The scores come with their intermediate quantities so small cases can be
checked by hand.
"""

import numpy as np

from sbmcluster import Dataset, ari, contingency, nmi, silhouette

t, c = (0, 0, 1, 1), (0, 1, 1, 1)
print(contingency(t, c))
r = nmi(t, c)
print(f"I={r.mutual_information:.6f} H(T)={r.entropy_true:.6f} H(C)={r.entropy_pred:.6f} NMI={r.nmi:.6f}")
print("geometric NMI:", round(nmi(t, c, "geometric").nmi, 6))

# %%
# ARI can go negative when two labelings disagree more than chance would.
r = ari((0, 0, 1, 1), (0, 1, 0, 1))
print(f"RI={r.ri:.4f} expected={r.expected_ri:.4f} max={r.max_ri:.4f} ARI={r.ari:.4f}")

# %%
# Silhouette on four points on a line, split the wrong way.
ds = Dataset("line", np.array([[0.0], [1.0], [4.0], [5.0]]))
s = silhouette(ds, [0, 1, 0, 1])
print("a", s.a, "b", s.b, "s", s.s, "mean", s.mean_s)
