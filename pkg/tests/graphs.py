"""Small random graphs for oracle comparisons."""

import numpy as np

from sbmcluster.simgraph import BinaryGraph, SimilarityGraph


def random_binary_graph(n, p, rng):
    upper = np.triu(rng.random((n, n)) < p, k=1)
    return BinaryGraph(upper | upper.T)


def random_weight_graph(n, rng):
    W = np.triu(rng.uniform(0.01, 1.0, size=(n, n)), k=1)
    return SimilarityGraph(W + W.T, "random")
