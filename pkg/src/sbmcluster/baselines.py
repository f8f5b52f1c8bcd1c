"""Reference clusterers: Lloyd's k-means and Ward agglomerative clustering."""

from __future__ import annotations

import numpy as np
from scipy.spatial.distance import cdist

from .data import Dataset
from .errors import ConfigError
from .partition import Partition, canonical_labels

KMEANS_DEFAULTS = {"restarts": 10, "max_iters": 300, "tol": 1e-4}


def _kmeanspp(X, K, rng):
    n = X.shape[0]
    centers = np.empty((K, X.shape[1]))
    centers[0] = X[rng.integers(n)]
    d2 = ((X - centers[0]) ** 2).sum(axis=1)
    for k in range(1, K):
        total = d2.sum()
        if total > 0:
            idx = rng.choice(n, p=d2 / total)
        else:
            idx = rng.integers(n)
        centers[k] = X[idx]
        d2 = np.minimum(d2, ((X - centers[k]) ** 2).sum(axis=1))
    return centers


def lloyd(X, centers, max_iters=300, tol=1e-4):
    """Run Lloyd iterations from ``centers``.

    Returns ``(labels, centers, sse_history)``; the history holds the
    within-cluster sum of squares after every assignment step.
    """
    centers = np.array(centers, dtype=np.float64)
    K = centers.shape[0]
    history = []
    for _ in range(max_iters):
        d2 = cdist(X, centers, "sqeuclidean")
        labels = d2.argmin(axis=1)
        history.append(float(d2[np.arange(len(X)), labels].sum()))
        new = centers.copy()
        counts = np.bincount(labels, minlength=K)
        closest = d2[np.arange(len(X)), labels]
        for k in range(K):
            if counts[k] > 0:
                new[k] = X[labels == k].mean(axis=0)
            else:
                far = int(closest.argmax())
                new[k] = X[far]
                closest[far] = 0.0
        shift = np.sqrt(((new - centers) ** 2).sum(axis=1)).max()
        centers = new
        if shift < tol:
            break
    d2 = cdist(X, centers, "sqeuclidean")
    labels = d2.argmin(axis=1)
    history.append(float(d2[np.arange(len(X)), labels].sum()))
    return labels, centers, history


def kmeans_fit(ds: Dataset, K, restarts=10, max_iters=300, tol=1e-4, seed=0) -> Partition:
    """Best-of-``restarts`` k-means with k-means++ seeding (lowest SSE wins)."""
    if not 2 <= K <= ds.n:
        raise ConfigError(f"k-means needs 2 <= K <= {ds.n}, got {K}")
    if restarts < 1:
        raise ConfigError("restarts must be >= 1")
    X = ds.features
    best = None
    for child in np.random.SeedSequence(seed).spawn(restarts):
        rng = np.random.default_rng(child)
        labels, _, hist = lloyd(X, _kmeanspp(X, K, rng), max_iters, tol)
        if best is None or hist[-1] < best[1]:
            best = (labels, hist[-1])
    return Partition(canonical_labels(best[0]), K)


def ward_merges(X) -> list[tuple[int, int]]:
    """Full Ward merge sequence as pairs of cluster slots ``(i, j)``, ``i < j``.

    Slot ``i`` holds the merged cluster afterwards. Dissimilarities start as
    squared Euclidean distances and follow the Lance-Williams update, so at
    every step the pair with the smallest increase in within-cluster variance
    merges; ties go to the lexicographically smallest pair.
    """
    X = np.asarray(X, dtype=np.float64)
    n = X.shape[0]
    D = cdist(X, X, "sqeuclidean")
    D[np.tril_indices(n)] = np.inf
    size = np.ones(n)
    active = np.ones(n, dtype=bool)
    merges = []
    for _ in range(n - 1):
        flat = int(np.argmin(D))
        i, j = divmod(flat, n)
        merges.append((i, j))
        ni, nj = size[i], size[j]
        # symmetric view of the upper-triangular store
        d_i = np.minimum(D[i, :], D[:, i])
        d_j = np.minimum(D[j, :], D[:, j])
        nk = size
        upd = ((ni + nk) * d_i + (nj + nk) * d_j - nk * D[i, j]) / (ni + nj + nk)
        upd[~active] = np.inf
        upd[i] = upd[j] = np.inf
        D[i, i + 1 :] = upd[i + 1 :]
        D[:i, i] = upd[:i]
        D[j, :] = np.inf
        D[:, j] = np.inf
        size[i] = ni + nj
        active[j] = False
    return merges


def cut_merges(merges, n, K) -> np.ndarray:
    """Labels after applying the first ``n - K`` merges (canonical order)."""
    if not 1 <= K <= n:
        raise ConfigError(f"Ward needs 1 <= K <= {n}, got {K}")
    owner = np.arange(n)
    for i, j in merges[: n - K]:
        owner[owner == j] = i
    return canonical_labels(owner)


def ward_fit(ds: Dataset, K) -> Partition:
    if not 1 <= K <= ds.n:
        raise ConfigError(f"Ward needs 1 <= K <= {ds.n}, got {K}")
    return Partition(cut_merges(ward_merges(ds.features), ds.n, K), K)
