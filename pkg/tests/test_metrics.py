import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import ari_by_pair_counting, euclid, nmi_by_definition, silhouette_by_definition
from sbmcluster.baselines import ward_fit
from sbmcluster.data import Dataset
from sbmcluster.errors import ConfigError
from sbmcluster.metrics import (
    UndefinedScoreError,
    ari,
    contingency,
    nmi,
    silhouette,
)
from sbmcluster.partition import Partition

labelings = st.integers(2, 12).flatmap(
    lambda n: st.tuples(st.lists(st.integers(0, 3), min_size=n, max_size=n), st.lists(st.integers(0, 3), min_size=n, max_size=n))
)


def all_labelings(n, k):
    return itertools.product(range(k), repeat=n)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_nmi_ari_match_oracles_exhaustively(n):
    labs = list(all_labelings(n, 3))
    for t in labs:
        for c in labs:
            assert nmi(t, c).nmi == pytest.approx(nmi_by_definition(t, c), abs=1e-12)
            assert ari(t, c).ari == pytest.approx(ari_by_pair_counting(t, c), abs=1e-12)


def test_nmi_hand_value():
    t, c = (0, 0, 1, 1), (0, 1, 1, 1)
    r = nmi(t, c)
    assert r.mutual_information == pytest.approx(0.215762, abs=1e-6)
    assert r.entropy_true == pytest.approx(math.log(2), abs=1e-12)
    assert r.entropy_pred == pytest.approx(0.562335, abs=1e-6)
    assert r.nmi == pytest.approx(0.343711, abs=1e-6)
    assert r.nmi == pytest.approx(nmi_by_definition(t, c), abs=1e-12)


def test_ari_hand_value():
    assert ari((0, 0, 1, 1), (0, 1, 0, 1)).ari == pytest.approx(-0.5, abs=1e-12)


def test_contingency_example():
    assert contingency((0, 0, 1, 1), (0, 1, 1, 1)).tolist() == [[1, 1], [0, 2]]


def test_identical_and_constant_conventions():
    t = [0, 0, 1, 1, 2]
    assert nmi(t, t).nmi == 1.0 and ari(t, t).ari == 1.0
    assert nmi(t, [7] * 5).nmi == 0.0
    assert nmi([1] * 5, [2] * 5).nmi == 1.0
    assert ari([1] * 5, [2] * 5).ari == 1.0


def test_ari_rejects_single_item():
    with pytest.raises(ValueError):
        ari([0], [0])


def test_unknown_normalization():
    with pytest.raises(ConfigError):
        nmi([0, 1], [0, 1], "harmonic")


def test_nmi_geometric_reproduces_ward_iris(iris):
    w = ward_fit(iris, 2)
    assert nmi(iris.labels, w, "geometric").nmi == pytest.approx(0.7612, abs=5e-5)
    assert nmi(iris.labels, w).nmi == pytest.approx(0.7337, abs=5e-5)


def test_ari_breakdown_rand_scale():
    r = ari([0, 0, 1, 1, 1], [0, 0, 0, 1, 1])
    assert r.max_ri > r.expected_ri
    assert r.ari == pytest.approx((r.ri - r.expected_ri) / (r.max_ri - r.expected_ri), abs=1e-12)


@settings(max_examples=200, deadline=None)
@given(labelings, st.permutations(range(4)))
def test_symmetry_and_relabel_invariance(tc, perm):
    t, c = tc
    cp = [perm[v] for v in c]
    assert nmi(t, c).nmi == pytest.approx(nmi(c, t).nmi, abs=1e-12)
    assert ari(t, c).ari == pytest.approx(ari(c, t).ari, abs=1e-12)
    assert nmi(t, cp).nmi == pytest.approx(nmi(t, c).nmi, abs=1e-12)
    assert ari(t, cp).ari == pytest.approx(ari(t, c).ari, abs=1e-12)
    assert 0.0 <= nmi(t, c).nmi <= 1.0
    assert ari(t, c).ari <= 1.0 + 1e-12


def test_ari_chance_mean_near_zero():
    rng = np.random.default_rng(0)
    vals = [ari(rng.integers(0, 3, 60), rng.integers(0, 3, 60)).ari for _ in range(1000)]
    assert abs(np.mean(vals)) < 0.05


def test_silhouette_hand_value():
    ds = Dataset("line", np.array([[0.0], [1.0], [4.0], [5.0]]))
    r = silhouette(ds, [0, 1, 0, 1])
    np.testing.assert_allclose(r.s, [-0.25, -0.5, -0.5, -0.25], atol=1e-12)
    assert r.mean_s == pytest.approx(-0.375, abs=1e-12)


def test_silhouette_singleton_scores_zero():
    ds = Dataset("x", np.array([[0.0], [0.1], [5.0]]))
    r = silhouette(ds, [0, 0, 1])
    assert r.s[2] == 0.0 and r.s[0] > 0.9


def test_silhouette_needs_two_clusters(iris):
    with pytest.raises(UndefinedScoreError):
        silhouette(iris, np.zeros(150, dtype=int))


def test_silhouette_matches_oracle():
    rng = np.random.default_rng(4)
    for _ in range(10):
        X = rng.normal(size=(12, 3))
        labels = rng.integers(0, 3, 12)
        if len(set(labels.tolist())) < 2:
            continue
        ref = silhouette_by_definition(X.tolist(), labels.tolist(), euclid)
        np.testing.assert_allclose(silhouette(Dataset("x", X), labels).s, ref, atol=1e-12)


def test_silhouette_accepts_partition(two_blobs):
    p = Partition(two_blobs.labels, 2)
    assert silhouette(two_blobs, p).mean_s > 0.95
