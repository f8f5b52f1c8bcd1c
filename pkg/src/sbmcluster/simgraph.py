"""Complete similarity graphs induced from feature matrices, and global thresholding."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import pdist, squareform

from .data import Dataset
from .errors import ConfigError

METRICS = ("chebyshev", "manhattan", "euclidean")
_SCIPY_NAMES = {"chebyshev": "chebyshev", "manhattan": "cityblock", "euclidean": "euclidean"}


def _check_metric(metric):
    if metric not in METRICS:
        raise ConfigError(f"unknown metric {metric!r}; expected one of {METRICS}")
    return metric


@dataclass(frozen=True)
class SimilarityGraph:
    """Complete weighted graph; ``weights[i, j] = exp(-D(x_i, x_j))``, zero diagonal."""

    weights: np.ndarray
    metric: str

    @property
    def n(self) -> int:
        return self.weights.shape[0]

    def to_edge_list(self, path=None) -> str:
        """``i,j,weight`` lines for every pair ``i < j`` (0-based ids)."""
        iu, ju = np.triu_indices(self.n, k=1)
        lines = ["i,j,weight"]
        lines += [f"{i},{j},{float(self.weights[i, j])!r}" for i, j in zip(iu.tolist(), ju.tolist())]
        text = "\n".join(lines) + "\n"
        if path is not None:
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(text)
        return text


@dataclass(frozen=True)
class BinaryGraph:
    adjacency: np.ndarray
    threshold: float | None = None

    @property
    def n(self) -> int:
        return self.adjacency.shape[0]

    @property
    def n_edges(self) -> int:
        return int(np.triu(self.adjacency, k=1).sum())

    @classmethod
    def from_edges(cls, n, edges, threshold=None):
        A = np.zeros((n, n), dtype=bool)
        for i, j in edges:
            if i != j:
                A[i, j] = A[j, i] = True
        return cls(A, threshold)


def distance(x, y, metric) -> float:
    _check_metric(metric)
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.ndim != 1 or x.shape != y.shape or x.size == 0:
        raise ValueError(f"vectors must be 1-D with equal nonzero length, got {x.shape} and {y.shape}")
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
        raise ValueError("vectors must be finite")
    diff = np.abs(x - y)
    if metric == "chebyshev":
        return float(diff.max())
    if metric == "manhattan":
        return float(diff.sum())
    return float(math.sqrt(float(np.dot(diff, diff))))


def similarity(x, y, metric) -> float:
    """Exponential similarity ``exp(-D(x, y))`` in (0, 1]."""
    return math.exp(-distance(x, y, metric))


def pairwise_distances(X, metric) -> np.ndarray:
    return squareform(pdist(np.asarray(X, dtype=np.float64), _SCIPY_NAMES[_check_metric(metric)]))


def induce_graph(ds: Dataset, metric="manhattan") -> SimilarityGraph:
    W = np.exp(-pairwise_distances(ds.features, metric))
    np.fill_diagonal(W, 0.0)
    return SimilarityGraph(W, metric)


def apply_threshold(g: SimilarityGraph, t: float) -> BinaryGraph:
    """Keep the edges with weight ``>= t``; isolated vertices stay in the graph."""
    if not 0.0 < t < 1.0:
        raise ConfigError(f"threshold must lie in (0, 1), got {t}")
    A = g.weights >= t
    np.fill_diagonal(A, False)
    return BinaryGraph(A, float(t))


def threshold_grid(lo=0.05, hi=0.95, step=0.05) -> list[float]:
    """Arithmetic grid ``lo, lo + step, ...`` up to ``hi`` (inclusive, within rounding)."""
    if not (0.0 < lo <= hi < 1.0) or not step > 0:
        raise ConfigError(f"invalid threshold grid lo={lo}, hi={hi}, step={step}")
    count = int(math.floor((hi - lo) / step + 1e-9)) + 1
    # rounding keeps 0.1 + 2 * 0.1 printing as 0.3
    return [round(lo + i * step, 12) for i in range(count)]
