"""Bernoulli stochastic block model on a thresholded graph."""

from __future__ import annotations

import numpy as np

from ._search import run_restarts
from .errors import ConfigError
from .partition import FitResult, Partition, SbmParams, enumerate_partitions
from .simgraph import BinaryGraph


def block_counts(X, p: Partition):
    """Per block pair totals of the symmetric matrix ``X`` (diagonal ignored)
    and the number of node pairs, ``(totals, n_pairs)``.

    Diagonal entries count pairs inside a block once.
    """
    Z = p.one_hot()
    X = np.array(X, dtype=np.float64)
    np.fill_diagonal(X, 0.0)
    totals = Z.T @ X @ Z
    totals[np.diag_indices_from(totals)] /= 2.0
    sizes = Z.sum(axis=0)
    n_pairs = np.outer(sizes, sizes)
    n_pairs[np.diag_indices_from(n_pairs)] = sizes * (sizes - 1) / 2.0
    return totals, n_pairs


def _xlogy(x, y):
    out = np.zeros_like(x, dtype=np.float64)
    mask = x > 0
    out[mask] = x[mask] * np.log(y[mask])
    return out


def bernoulli_terms(m, N):
    """``m log(m/N) + (N-m) log(1-m/N)`` elementwise with ``0 log 0 = 0``."""
    N_safe = np.where(N > 0, N, 1.0)
    return _xlogy(m, m / N_safe) + _xlogy(N - m, (N - m) / N_safe)


def _check_length(n, p):
    if p.n != n:
        raise ValueError(f"partition has {p.n} entries for a graph on {n} vertices")


def sbm_log_likelihood(g: BinaryGraph, p: Partition) -> float:
    """Profile log-likelihood with each block-pair probability at its MLE."""
    _check_length(g.n, p)
    m, N = block_counts(g.adjacency, p)
    return float(np.triu(bernoulli_terms(m, N)).sum())


def sbm_params(g: BinaryGraph, p: Partition) -> SbmParams:
    m, N = block_counts(g.adjacency, p)
    with np.errstate(invalid="ignore", divide="ignore"):
        theta = np.where(N > 0, m / N, np.nan)
    return SbmParams(theta)


def _check_k(n, K):
    if not 1 <= K <= n:
        raise ConfigError(f"block count must satisfy 1 <= K <= {n}, got {K}")


def sbm_fit(g: BinaryGraph, K, restarts=10, max_sweeps=100, seed=0, record_moves=False) -> FitResult:
    """Greedy maximum-likelihood block assignment, best of ``restarts`` starts.

    With ``record_moves`` the result carries ``moves``: the starting vector
    and the accepted ``(node, from, to)`` moves of the winning restart.
    """
    _check_k(g.n, K)
    if restarts < 1 or max_sweeps < 1:
        raise ConfigError("restarts and max_sweeps must be >= 1")
    if K == 1:
        p = Partition(np.zeros(g.n, dtype=np.int64), 1)
        return FitResult(p, sbm_params(g, p), sbm_log_likelihood(g, p), 0, seed)
    A = g.adjacency.astype(np.float64)
    z, _, n_moves, rec = run_restarts(A, A, K, 0.0, 1.0, restarts, max_sweeps, seed, record_moves)
    p = Partition(z, K)
    return FitResult(p, sbm_params(g, p), sbm_log_likelihood(g, p), restarts, seed, n_moves, rec)


def brute_force_sbm(g: BinaryGraph, K) -> FitResult:
    """Exact maximizer over all partitions into at most K blocks.

    The first maximizer in restricted-growth order wins, so the result is in
    canonical labeling.
    """
    _check_k(g.n, K)
    best_z, best_ll = None, -np.inf
    for z in enumerate_partitions(g.n, K):
        ll = sbm_log_likelihood(g, Partition(z, K))
        if best_z is None or ll > best_ll:
            best_z, best_ll = z, ll
    p = Partition(best_z, K)
    return FitResult(p, sbm_params(g, p), best_ll, 0, None)


def planted_bernoulli_graph(block_sizes, p_in, p_out, seed=0):
    """Sample a graph with planted blocks; returns ``(BinaryGraph, labels)``."""
    rng = np.random.default_rng(seed)
    labels = np.repeat(np.arange(len(block_sizes)), block_sizes)
    n = labels.size
    P = np.where(labels[:, None] == labels[None, :], p_in, p_out)
    upper = np.triu(rng.random((n, n)) < P, k=1)
    return BinaryGraph(upper | upper.T), labels
