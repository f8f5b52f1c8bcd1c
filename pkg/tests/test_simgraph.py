import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import naive_similarity_matrix
from sbmcluster.data import Dataset
from sbmcluster.errors import ConfigError
from sbmcluster.simgraph import (
    METRICS,
    SimilarityGraph,
    apply_threshold,
    induce_graph,
    similarity,
    threshold_grid,
)

vectors = st.integers(1, 6).flatmap(
    lambda d: st.tuples(
        st.lists(st.floats(-20, 20), min_size=d, max_size=d),
        st.lists(st.floats(-20, 20), min_size=d, max_size=d),
    )
)


@pytest.mark.parametrize(
    "metric, expected",
    [("manhattan", math.exp(-3)), ("chebyshev", math.exp(-2)), ("euclidean", math.exp(-math.sqrt(5)))],
)
def test_similarity_examples(metric, expected):
    assert similarity((0, 0), (1, 2), metric) == pytest.approx(expected, rel=1e-12)


def test_similarity_example_values():
    assert similarity((0, 0), (1, 2), "manhattan") == pytest.approx(0.049787, abs=1e-6)
    assert similarity((0, 0), (1, 2), "chebyshev") == pytest.approx(0.135335, abs=1e-6)
    assert similarity((0, 0), (1, 2), "euclidean") == pytest.approx(0.106878, abs=1e-6)


@pytest.mark.parametrize("x, y", [((1, 2), (1,)), ((), ()), ((1, float("inf")), (0, 0))])
def test_similarity_rejects_bad_vectors(x, y):
    with pytest.raises(ValueError):
        similarity(x, y, "manhattan")


def test_similarity_rejects_unknown_metric():
    with pytest.raises(ConfigError):
        similarity((0,), (1,), "cosine")


@settings(max_examples=200, deadline=None)
@given(vectors)
def test_similarity_properties(xy):
    x, y = xy
    vals = {m: similarity(x, y, m) for m in METRICS}
    for m, v in vals.items():
        assert 0.0 < v <= 1.0
        assert v == similarity(y, x, m)
        assert similarity(x, x, m) == 1.0
    assert vals["chebyshev"] >= vals["euclidean"] >= vals["manhattan"]
    # exp(-d) rounds to 1.0 for d below ~1e-16, so only check resolvable gaps
    if max(abs(a - b) for a, b in zip(x, y)) > 1e-12:
        assert vals["chebyshev"] < 1.0


def test_induce_graph_two_points():
    ds = Dataset("p", np.array([[0.0, 0.0], [1.0, 2.0]]))
    g = induce_graph(ds, "manhattan")
    np.testing.assert_allclose(g.weights, [[0, math.exp(-3)], [math.exp(-3), 0]])


def test_induce_graph_duplicates_weight_one():
    ds = Dataset("p", np.array([[1.0, 1.0], [1.0, 1.0], [3.0, 0.0]]))
    g = induce_graph(ds, "euclidean")
    assert g.weights[0, 1] == 1.0 and g.weights[0, 0] == 0.0


@pytest.mark.parametrize("metric", METRICS)
def test_induce_graph_matches_double_loop(iris, metric):
    g = induce_graph(iris, metric)
    ref = np.array(naive_similarity_matrix(iris.features.tolist(), metric))
    np.testing.assert_allclose(g.weights, ref, rtol=1e-12, atol=0)
    assert np.array_equal(g.weights, g.weights.T)


def test_apply_threshold_example():
    W = np.array([[0, 0.05, 0.5], [0.05, 0, 0.05], [0.5, 0.05, 0]])
    b = apply_threshold(SimilarityGraph(W, "x"), 0.3)
    assert b.n_edges == 1 and b.adjacency[0, 2] and b.adjacency[2, 0]
    assert b.n == 3


def test_apply_threshold_keeps_ties_and_low_threshold_is_complete():
    W = np.array([[0, 0.3, 0.2], [0.3, 0, 0.9], [0.2, 0.9, 0]])
    g = SimilarityGraph(W, "x")
    assert apply_threshold(g, 0.3).adjacency[0, 1]
    assert apply_threshold(g, 0.1).n_edges == 3


@pytest.mark.parametrize("t", [0.0, 1.0, -0.5, 1.5])
def test_apply_threshold_rejects_out_of_range(t):
    with pytest.raises(ConfigError):
        apply_threshold(SimilarityGraph(np.zeros((2, 2)), "x"), t)


def test_threshold_edges_nested_on_iris(iris):
    g = induce_graph(iris, "manhattan")
    grid = threshold_grid(0.05, 0.95, 0.05)
    prev = None
    for t in grid:
        A = apply_threshold(g, t).adjacency
        if prev is not None:
            assert not np.any(A & ~prev)
        prev = A


@pytest.mark.parametrize(
    "args, expected",
    [((0.1, 0.3, 0.1), [0.1, 0.2, 0.3]), ((0.5, 0.5, 0.1), [0.5])],
)
def test_threshold_grid_examples(args, expected):
    assert threshold_grid(*args) == expected


def test_threshold_grid_default_count():
    grid = threshold_grid(0.05, 0.95, 0.05)
    assert len(grid) == 19 and grid[-1] == 0.95


@pytest.mark.parametrize("args", [(0.0, 0.5, 0.1), (0.6, 0.5, 0.1), (0.1, 1.0, 0.1), (0.1, 0.5, 0.0)])
def test_threshold_grid_rejects_bad_bounds(args):
    with pytest.raises(ConfigError):
        threshold_grid(*args)


def test_edge_list_export(tmp_path):
    g = SimilarityGraph(np.array([[0, 0.25, 0.5], [0.25, 0, 1.0], [0.5, 1.0, 0]]), "x")
    text = g.to_edge_list(tmp_path / "e.txt")
    assert text.splitlines() == ["i,j,weight", "0,1,0.25", "0,2,0.5", "1,2,1.0"]
    assert (tmp_path / "e.txt").read_text() == text
