"""Weighted stochastic block model with exponentially distributed edge weights.

Weights inside each block pair are modelled as draws from an exponential
distribution whose rate is profiled out at its MLE (edge count over weight
sum). ``alpha`` mixes in the Bernoulli edge-existence likelihood; on a
complete graph that part is constant, so ``alpha = 0`` is the default.
"""

from __future__ import annotations

import numpy as np

from ._search import DEGENERATE_WEIGHT, run_restarts
from .errors import ConfigError, DegenerateBlockError
from .partition import FitResult, Partition, WsbmParams, enumerate_partitions
from .sbm import _check_k, _check_length, bernoulli_terms, block_counts
from .simgraph import SimilarityGraph


def _check_alpha(alpha):
    if not 0.0 <= alpha <= 1.0:
        raise ConfigError(f"alpha must lie in [0, 1], got {alpha}")


def _edge_stats(g, p):
    W = g.weights
    m, N = block_counts(W > 0, p)
    wsum, _ = block_counts(W, p)
    return m, N, wsum


def wsbm_log_likelihood(g: SimilarityGraph, p: Partition, alpha=0.0) -> float:
    _check_length(g.n, p)
    _check_alpha(alpha)
    m, N, wsum = _edge_stats(g, p)
    iu = np.triu_indices(p.K)
    m, N, wsum = m[iu], N[iu], wsum[iu]
    ll = 0.0
    if alpha < 1.0:
        has = m > 0
        if np.any(wsum[has] < DEGENERATE_WEIGHT):
            raise DegenerateBlockError("a block pair has edges but zero total weight")
        mh, wh = m[has], wsum[has]
        ll += (1.0 - alpha) * float(np.sum(mh * (np.log(mh) - np.log(wh)) - mh))
    if alpha > 0.0:
        ll += alpha * float(bernoulli_terms(m, N).sum())
    return ll


def wsbm_params(g: SimilarityGraph, p: Partition, alpha=0.0) -> WsbmParams:
    m, _, wsum = _edge_stats(g, p)
    with np.errstate(invalid="ignore", divide="ignore"):
        rates = np.where(m > 0, m / wsum, np.nan)
    return WsbmParams(rates, float(alpha))


def wsbm_fit(g: SimilarityGraph, K, alpha=0.0, restarts=10, max_sweeps=100, seed=0, record_moves=False) -> FitResult:
    """Greedy profile-likelihood fit; same search as :func:`sbm_fit`.

    Moves that would leave a block pair with (numerically) zero weight are
    never taken.
    """
    _check_k(g.n, K)
    _check_alpha(alpha)
    if restarts < 1 or max_sweeps < 1:
        raise ConfigError("restarts and max_sweeps must be >= 1")
    if K == 1:
        p = Partition(np.zeros(g.n, dtype=np.int64), 1)
        return FitResult(p, wsbm_params(g, p, alpha), wsbm_log_likelihood(g, p, alpha), 0, seed)
    A = (g.weights > 0).astype(np.float64)
    z, total, n_moves, rec = run_restarts(A, g.weights, K, 1.0 - alpha, alpha, restarts, max_sweeps, seed, record_moves)
    p = Partition(z, K)
    try:
        ll = wsbm_log_likelihood(g, p, alpha)
    except DegenerateBlockError:
        ll = float(total)
    return FitResult(p, wsbm_params(g, p, alpha), ll, restarts, seed, n_moves, rec)


def brute_force_wsbm(g: SimilarityGraph, K, alpha=0.0) -> FitResult:
    """Exact maximizer over all partitions into at most K blocks (canonical labels)."""
    _check_k(g.n, K)
    best_z, best_ll = None, -np.inf
    for z in enumerate_partitions(g.n, K):
        try:
            ll = wsbm_log_likelihood(g, Partition(z, K), alpha)
        except DegenerateBlockError:
            continue
        if best_z is None or ll > best_ll:
            best_z, best_ll = z, ll
    p = Partition(best_z, K)
    return FitResult(p, wsbm_params(g, p, alpha), best_ll, 0, None)


def planted_exponential_graph(block_sizes, rate_in=1.0, rate_out=5.0, seed=0):
    """Complete graph with Exp(rate_in) weights inside blocks and Exp(rate_out)
    across; returns ``(SimilarityGraph, labels)``.
    """
    rng = np.random.default_rng(seed)
    labels = np.repeat(np.arange(len(block_sizes)), block_sizes)
    n = labels.size
    rate = np.where(labels[:, None] == labels[None, :], rate_in, rate_out)
    W = np.triu(rng.exponential(1.0, size=(n, n)) / rate, k=1)
    W = W + W.T
    return SimilarityGraph(W, "planted"), labels
