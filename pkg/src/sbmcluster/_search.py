"""Greedy single-node relabeling for block-model profile likelihoods.

The objective is a sum over unordered block pairs ``r <= s`` of

    c_bern   * [m log(m / N) + (N - m) log(1 - m / N)]
  + c_weight * [m log(m / W) - m]

where ``N`` is the number of node pairs between the blocks, ``m`` the number
of edges among them and ``W`` their summed weight. ``c_bern = 1, c_weight = 0``
gives the Bernoulli SBM; ``c_bern = alpha, c_weight = 1 - alpha`` the
exponential WSBM.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit

DEGENERATE_WEIGHT = 1e-12
# relative slack so round-off never counts as an improvement
MOVE_TOL = 1e-10


def xlogx_table(n):
    """``x log x`` for every integer count ``0 .. n (n - 1) / 2`` (``0 log 0 = 0``)."""
    x = np.arange(n * (n - 1) // 2 + 2, dtype=np.float64)
    out = np.zeros_like(x)
    out[1:] = x[1:] * np.log(x[1:])
    return out


@njit(cache=True)
def pair_term(m, N, W, c_weight, c_bern, xlx):
    # m and N are integer-valued; xlx[k] = k log k
    t = 0.0
    if c_bern != 0.0 and N > 0.0:
        t += c_bern * (xlx[int(m)] + xlx[int(N - m)] - xlx[int(N)])
    if c_weight != 0.0 and m > 0.0:
        if W < DEGENERATE_WEIGHT:
            return -np.inf
        t += c_weight * (m * (math.log(m) - math.log(W)) - m)
    return t


@njit(cache=True)
def _n_pairs(sr, ss, same):
    if same:
        return sr * (sr - 1.0) / 2.0
    return sr * ss


@njit(cache=True)
def _block_stats(A, Wt, z, K):
    n = z.size
    M = np.zeros((K, K))
    Wb = np.zeros((K, K))
    sizes = np.zeros(K)
    for i in range(n):
        sizes[z[i]] += 1.0
    for i in range(n):
        zi = z[i]
        for j in range(i + 1, n):
            if A[i, j] != 0.0:
                zj = z[j]
                M[zi, zj] += 1.0
                Wb[zi, zj] += Wt[i, j]
                if zi != zj:
                    M[zj, zi] += 1.0
                    Wb[zj, zi] += Wt[i, j]
    return M, Wb, sizes


@njit(cache=True)
def _terms(M, Wb, sizes, c_weight, c_bern, xlx):
    K = sizes.size
    T = np.zeros((K, K))
    for r in range(K):
        for s in range(r, K):
            t = pair_term(M[r, s], _n_pairs(sizes[r], sizes[s], r == s), Wb[r, s], c_weight, c_bern, xlx)
            T[r, s] = t
            T[s, r] = t
    return T


@njit(cache=True)
def _total(T):
    K = T.shape[0]
    tot = 0.0
    for r in range(K):
        for s in range(r, K):
            tot += T[r, s]
    return tot


@njit(cache=True)
def _best_move(i, z, K, M, Wb, sizes, T, KM, KW, U, total, c_weight, c_bern, xlx):
    """Best target block for node ``i`` and its gain; ``(-1, 0.0)`` if no move improves."""
    a = z[i]
    km = KM[i]
    kw = KW[i]
    na = sizes[a]

    # pairs (a, c), c != a, after i leaves a; independent of the target
    sumU = 0.0
    for c in range(K):
        if c == a:
            U[c] = 0.0
            continue
        U[c] = pair_term(M[a, c] - km[c], (na - 1.0) * sizes[c], Wb[a, c] - kw[c], c_weight, c_bern, xlx)
        sumU += U[c]
    new_aa = pair_term(M[a, a] - km[a], (na - 1.0) * (na - 2.0) / 2.0, Wb[a, a] - kw[a], c_weight, c_bern, xlx)
    old_a = 0.0
    for c in range(K):
        old_a += T[a, c]

    best_b = -1
    best_gain = 0.0
    tol = MOVE_TOL * max(1.0, abs(total))
    seen_empty = False
    for b in range(K):
        if b == a:
            continue
        nb = sizes[b]
        if nb == 0.0:
            # all empty targets are equivalent; score the first only
            if seen_empty:
                continue
            seen_empty = True
        new = new_aa + sumU - U[b]
        new += pair_term(M[b, b] + km[b], (nb + 1.0) * nb / 2.0, Wb[b, b] + kw[b], c_weight, c_bern, xlx)
        new += pair_term(
            M[a, b] - km[b] + km[a], (na - 1.0) * (nb + 1.0), Wb[a, b] - kw[b] + kw[a], c_weight, c_bern, xlx
        )
        old = old_a
        for c in range(K):
            if c != a:
                old += T[b, c]
            if c != a and c != b:
                new += pair_term(M[b, c] + km[c], (nb + 1.0) * sizes[c], Wb[b, c] + kw[c], c_weight, c_bern, xlx)
        gain = new - old
        if gain != gain:
            continue
        if gain > tol and (best_b < 0 or gain > best_gain):
            best_b = b
            best_gain = gain
    return best_b, best_gain


@njit(cache=True)
def _apply_move(i, b, z, K, A, Wt, M, Wb, sizes, T, KM, KW, c_weight, c_bern, xlx):
    n = z.size
    a = z[i]
    km = KM[i]
    kw = KW[i]
    for c in range(K):
        if c == a or c == b:
            continue
        M[a, c] -= km[c]
        M[c, a] = M[a, c]
        Wb[a, c] -= kw[c]
        Wb[c, a] = Wb[a, c]
        M[b, c] += km[c]
        M[c, b] = M[b, c]
        Wb[b, c] += kw[c]
        Wb[c, b] = Wb[b, c]
    M[a, b] += km[a] - km[b]
    M[b, a] = M[a, b]
    Wb[a, b] += kw[a] - kw[b]
    Wb[b, a] = Wb[a, b]
    M[a, a] -= km[a]
    Wb[a, a] -= kw[a]
    M[b, b] += km[b]
    Wb[b, b] += kw[b]
    sizes[a] -= 1.0
    sizes[b] += 1.0
    z[i] = b
    for j in range(n):
        if j != i and A[i, j] != 0.0:
            KM[j, a] -= 1.0
            KM[j, b] += 1.0
            KW[j, a] -= Wt[i, j]
            KW[j, b] += Wt[i, j]
    for r in (a, b):
        for c in range(K):
            t = pair_term(M[r, c], _n_pairs(sizes[r], sizes[c], r == c), Wb[r, c], c_weight, c_bern, xlx)
            T[r, c] = t
            T[c, r] = t
    return _total(T)


@njit(cache=True)
def greedy_ascent(A, Wt, z, K, c_weight, c_bern, orders, moves_out, xlx):
    """Relabel nodes in place until no single move improves the objective.

    Each sweep first scores every node's best relabeling, then visits the
    nodes from largest to smallest gain (``orders`` breaks ties; its row
    count is the sweep budget), re-scoring each against the current state and
    moving it only if the gain is still strictly positive. Accepted moves are
    written to ``moves_out`` as ``(node, from, to)`` rows while capacity lasts.

    Returns ``(objective, n_moves, n_sweeps, converged)``.
    """
    n = z.size
    M, Wb, sizes = _block_stats(A, Wt, z, K)
    T = _terms(M, Wb, sizes, c_weight, c_bern, xlx)
    total = _total(T)
    # node-to-block edge counts and weight sums, kept current across moves
    KM = np.zeros((n, K))
    KW = np.zeros((n, K))
    for i in range(n):
        for j in range(n):
            if j != i and A[i, j] != 0.0:
                KM[i, z[j]] += 1.0
                KW[i, z[j]] += Wt[i, j]
    U = np.zeros(K)
    gains = np.zeros(n)
    n_moves = 0
    n_sweeps = 0
    converged = False
    cap = moves_out.shape[0]

    for sweep in range(orders.shape[0]):
        n_sweeps += 1
        order = orders[sweep]
        for idx in range(n):
            i = order[idx]
            b, g = _best_move(i, z, K, M, Wb, sizes, T, KM, KW, U, total, c_weight, c_bern, xlx)
            gains[idx] = g if b >= 0 else 0.0
        if gains.max() <= 0.0:
            converged = True
            break
        ranked = order[np.argsort(-gains, kind="mergesort")]
        for idx in range(n):
            i = ranked[idx]
            b, g = _best_move(i, z, K, M, Wb, sizes, T, KM, KW, U, total, c_weight, c_bern, xlx)
            if b < 0:
                continue
            a = z[i]
            total = _apply_move(i, b, z, K, A, Wt, M, Wb, sizes, T, KM, KW, c_weight, c_bern, xlx)
            if n_moves < cap:
                moves_out[n_moves, 0] = i
                moves_out[n_moves, 1] = a
                moves_out[n_moves, 2] = b
            n_moves += 1
    return total, n_moves, n_sweeps, converged


def run_restarts(A, Wt, K, c_weight, c_bern, restarts, max_sweeps, seed, record_moves=False):
    """Best of ``restarts`` greedy ascents from uniform random starts.

    Restart ``r`` draws from the r-th child of ``SeedSequence(seed)``, so the
    outcome does not depend on how restarts are scheduled. Ties keep the
    lower restart index.

    Returns ``(z, objective, n_moves, moves)`` where ``moves`` is the list of
    accepted ``(node, from, to)`` moves of the winning restart (or ``None``).
    """
    n = A.shape[0]
    A = np.ascontiguousarray(A, dtype=np.float64)
    Wt = np.ascontiguousarray(Wt, dtype=np.float64)
    xlx = xlogx_table(n)
    best = None
    children = np.random.SeedSequence(seed).spawn(restarts)
    for child in children:
        rng = np.random.default_rng(child)
        z = rng.integers(0, K, size=n).astype(np.int64)
        z0 = z.copy()
        orders = np.argsort(rng.random((max_sweeps, n)), axis=1, kind="stable").astype(np.int64)
        cap = max_sweeps * n if record_moves else 0
        moves = np.zeros((cap, 3), dtype=np.int64)
        total, n_moves, _, _ = greedy_ascent(A, Wt, z, K, float(c_weight), float(c_bern), orders, moves, xlx)
        if best is None or total > best[1]:
            rec = (z0, moves[: min(n_moves, cap)]) if record_moves else None
            best = (z, total, n_moves, rec)
    return best
