"""Clustering quality scores: silhouette, NMI and adjusted Rand index."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .data import Dataset
from .errors import ConfigError
from .partition import Partition, canonical_labels
from .simgraph import METRICS, pairwise_distances


class UndefinedScoreError(ValueError):
    """Silhouette requested for a labeling with fewer than two clusters."""


@dataclass(frozen=True)
class SilhouetteDetail:
    a: np.ndarray
    b: np.ndarray
    s: np.ndarray
    mean_s: float


@dataclass(frozen=True)
class MetricBreakdown:
    mutual_information: float
    entropy_true: float
    entropy_pred: float
    nmi: float
    ri: float
    expected_ri: float
    max_ri: float
    ari: float


def _labels(p):
    return p.z if isinstance(p, Partition) else np.asarray(p)


def silhouette_from_distances(D, labels) -> SilhouetteDetail:
    labels = canonical_labels(_labels(labels))
    n = labels.size
    if D.shape != (n, n):
        raise ValueError(f"distance matrix {D.shape} does not match {n} labels")
    k = int(labels.max()) + 1
    if k < 2:
        raise UndefinedScoreError("silhouette needs at least two non-empty clusters")
    Z = np.zeros((n, k))
    Z[np.arange(n), labels] = 1.0
    sizes = Z.sum(axis=0)
    sums = D @ Z
    own = sizes[labels]
    idx = np.arange(n)
    a = np.zeros(n)
    multi = own > 1
    a[multi] = sums[idx, labels][multi] / (own[multi] - 1)
    means = sums / sizes
    means[idx, labels] = np.inf
    b = means.min(axis=1)
    denom = np.maximum(a, b)
    s = np.zeros(n)
    ok = multi & (denom > 0)
    s[ok] = (b[ok] - a[ok]) / denom[ok]
    return SilhouetteDetail(a, b, s, float(s.mean()))


def silhouette(ds: Dataset, p, distance="euclidean") -> SilhouetteDetail:
    """Mean silhouette of a labeling in feature space.

    ``a(i)`` is the mean distance from point i to the rest of its cluster,
    ``b(i)`` the smallest mean distance to any other cluster. Points in
    singleton clusters score 0.
    """
    if distance not in METRICS:
        raise ConfigError(f"unknown distance {distance!r}")
    labels = _labels(p)
    if labels.size != ds.n:
        raise ValueError(f"{labels.size} labels for {ds.n} points")
    return silhouette_from_distances(pairwise_distances(ds.features, distance), labels)


def contingency(t, c) -> np.ndarray:
    """Counts of items per (true class, predicted cluster) in first-seen order."""
    t = np.asarray(t)
    c = np.asarray(c)
    if t.shape != c.shape or t.ndim != 1:
        raise ValueError(f"label vectors differ in shape: {t.shape} vs {c.shape}")
    _, ti = np.unique(t, return_inverse=True)
    _, ci = np.unique(c, return_inverse=True)
    C = np.zeros((ti.max() + 1 if ti.size else 0, ci.max() + 1 if ci.size else 0), dtype=np.int64)
    np.add.at(C, (ti, ci), 1)
    return C


def _entropy(counts, n):
    p = counts[counts > 0] / n
    return float(-(p * np.log(p)).sum())


def _comb2(x):
    x = np.asarray(x, dtype=np.float64)
    return x * (x - 1) / 2.0


def _breakdown(t, c, normalization="arithmetic") -> MetricBreakdown:
    C = contingency(t, c)
    n = int(C.sum())
    if n == 0:
        raise ValueError("empty label vectors")
    rows = C.sum(axis=1)
    cols = C.sum(axis=0)

    h_t = _entropy(rows, n)
    h_c = _entropy(cols, n)
    nz = C > 0
    pij = C[nz] / n
    outer = np.outer(rows, cols)[nz] / (n * n)
    mi = float(max((pij * np.log(pij / outer)).sum(), 0.0))
    if h_t == 0.0 and h_c == 0.0:
        nmi = 1.0
    elif h_t == 0.0 or h_c == 0.0:
        nmi = 0.0
    else:
        if normalization == "arithmetic":
            denom = (h_t + h_c) / 2.0
        elif normalization == "geometric":
            denom = np.sqrt(h_t * h_c)
        else:
            raise ConfigError(f"unknown NMI normalization {normalization!r}")
        nmi = float(min(mi / denom, 1.0))

    pairs = n * (n - 1) / 2.0
    sum_ij = float(_comb2(C).sum())
    sum_a = float(_comb2(rows).sum())
    sum_b = float(_comb2(cols).sum())
    if pairs > 0:
        ri = (pairs + 2 * sum_ij - sum_a - sum_b) / pairs
        expected_index = sum_a * sum_b / pairs
    else:
        ri, expected_index = 1.0, 0.0
    max_index = (sum_a + sum_b) / 2.0
    # Rand-index scale: RI = (pairs - sum_a - sum_b + 2 * index) / pairs
    to_ri = (lambda x: (pairs - sum_a - sum_b + 2 * x) / pairs) if pairs > 0 else (lambda x: 1.0)
    expected_ri = to_ri(expected_index)
    max_ri = to_ri(max_index)
    if max_index == expected_index:
        ari = 1.0
    else:
        ari = (sum_ij - expected_index) / (max_index - expected_index)
    return MetricBreakdown(mi, h_t, h_c, nmi, float(ri), float(expected_ri), float(max_ri), float(ari))


def nmi(t, c, normalization="arithmetic") -> MetricBreakdown:
    """Normalized mutual information, ``2 I(T, C) / (H(T) + H(C))`` in nats.

    ``normalization="geometric"`` divides by ``sqrt(H(T) H(C))`` instead.
    Two single-cluster labelings score 1; if only one is constant, 0.
    """
    return _breakdown(_labels(t), _labels(c), normalization)


def ari(t, c) -> MetricBreakdown:
    """Adjusted Rand index from pair counts of the contingency table.

    The degenerate case where the maximum equals the chance expectation
    (both labelings trivial) is defined as 1.
    """
    t, c = _labels(t), _labels(c)
    if np.asarray(t).size < 2:
        raise ValueError("ARI needs at least two items")
    return _breakdown(t, c)
