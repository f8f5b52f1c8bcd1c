"""Block assignments, fit results and exhaustive partition enumeration."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any

import numpy as np

from .errors import InstanceTooLargeError

MAX_ENUMERATED_PARTITIONS = 10**6


def canonical_labels(z) -> np.ndarray:
    """Relabel blocks by order of first occurrence (0, 1, 2, ...)."""
    z = np.asarray(z)
    _, first, inverse = np.unique(z, return_index=True, return_inverse=True)
    order = np.argsort(first)
    rank = np.empty_like(order)
    rank[order] = np.arange(order.size)
    return rank[inverse].astype(np.int64)


@dataclass(frozen=True)
class Partition:
    """Assignment ``z`` of n nodes into blocks ``0..K-1`` (some may be empty)."""

    z: np.ndarray
    K: int

    def __post_init__(self):
        z = np.asarray(self.z, dtype=np.int64)
        if z.ndim != 1:
            raise ValueError("block vector must be 1-D")
        if self.K < 1:
            raise ValueError(f"block count must be >= 1, got {self.K}")
        if z.size and (z.min() < 0 or z.max() >= self.K):
            raise ValueError(f"block ids must lie in [0, {self.K})")
        object.__setattr__(self, "z", z)

    @classmethod
    def from_labels(cls, labels) -> Partition:
        z = canonical_labels(labels)
        return cls(z, int(z.max()) + 1 if z.size else 1)

    @property
    def n(self) -> int:
        return self.z.size

    @property
    def n_nonempty(self) -> int:
        return int(np.unique(self.z).size)

    def canonical(self) -> Partition:
        return Partition(canonical_labels(self.z), self.K)

    def one_hot(self) -> np.ndarray:
        Z = np.zeros((self.n, self.K))
        Z[np.arange(self.n), self.z] = 1.0
        return Z

    def sizes(self) -> np.ndarray:
        return np.bincount(self.z, minlength=self.K)

    def same_as(self, other: Partition) -> bool:
        """Equality up to block relabeling."""
        return np.array_equal(canonical_labels(self.z), canonical_labels(other.z))


@dataclass(frozen=True)
class SbmParams:
    theta: np.ndarray


@dataclass(frozen=True)
class WsbmParams:
    rates: np.ndarray
    alpha: float


@dataclass(frozen=True)
class FitResult:
    partition: Partition
    params: Any
    log_likelihood: float
    restarts_used: int
    seed: int | None
    n_moves: int = 0
    # (start vector, accepted (node, from, to) rows) when requested
    moves: Any = field(default=None, repr=False, compare=False)

    @property
    def K(self) -> int:
        return self.partition.K

    def to_record(self, dataset="", method="", threshold=None) -> str:
        """``dataset,method,K,threshold,loglik,seed``; threshold empty when unused."""
        t = "" if threshold is None else repr(float(threshold))
        seed = "" if self.seed is None else str(self.seed)
        return f"{dataset},{method},{self.K},{t},{float(self.log_likelihood)!r},{seed}"


@lru_cache(maxsize=None)
def _stirling2(n, k):
    if n == k:
        return 1
    if k == 0 or k > n:
        return 0
    return k * _stirling2(n - 1, k) + _stirling2(n - 1, k - 1)


def count_partitions(n, K) -> int:
    """Number of set partitions of n items into at most K non-empty blocks."""
    return sum(_stirling2(n, k) for k in range(1, min(n, K) + 1))


def enumerate_partitions(n, K):
    """Yield every partition into at most K blocks once, as a restricted growth string.

    The first node is always in block 0 and each node opens at most one new
    block, so relabelings of the same partition are never repeated.
    """
    total = count_partitions(n, K)
    if total > MAX_ENUMERATED_PARTITIONS:
        raise InstanceTooLargeError(
            f"{total} partitions of {n} nodes into <= {K} blocks exceeds {MAX_ENUMERATED_PARTITIONS}"
        )
    z = np.zeros(n, dtype=np.int64)

    def rec(i, used):
        if i == n:
            yield z.copy()
            return
        for b in range(min(used + 1, K)):
            z[i] = b
            yield from rec(i + 1, max(used, b + 1))

    if n == 0:
        yield z.copy()
        return
    yield from rec(1, 1)
