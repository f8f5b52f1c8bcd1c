import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from sbmcluster.data import (
    INA_CENTERS,
    Dataset,
    gen_circles,
    gen_ina,
    gen_two_moons,
    load_csv,
    load_iris,
    standardize,
    to_csv,
)
from sbmcluster.errors import DataError


def write(tmp_path, text, name="d.csv"):
    p = tmp_path / name
    p.write_text(text)
    return p


def test_iris_shape():
    ds = load_iris()
    assert (ds.n, ds.d, ds.n_classes) == (150, 4, 3)
    assert ds.label_names == ("Iris-setosa", "Iris-versicolor", "Iris-virginica")


def test_load_csv_with_label_column(tmp_path):
    p = write(tmp_path, "a,b,class\n1,2,x\n3,4,y\n5,6,x\n")
    ds = load_csv(p, label_column="class")
    np.testing.assert_array_equal(ds.features, [[1, 2], [3, 4], [5, 6]])
    np.testing.assert_array_equal(ds.labels, [0, 1, 0])
    assert ds.name == "d"


def test_load_csv_label_by_index(tmp_path):
    p = write(tmp_path, "class,a\n1,0.5\n2,1.5\n")
    ds = load_csv(p, label_column=0)
    assert ds.d == 1
    np.testing.assert_array_equal(ds.labels, [0, 1])


def test_load_csv_without_labels(tmp_path):
    ds = load_csv(write(tmp_path, "a,b\n1,2\n3,4\n"))
    assert ds.labels is None and ds.d == 2


@pytest.mark.parametrize(
    "text, kwargs",
    [
        ("a,b\n1,2\n3\n", {}),
        ("a,b\n1,x\n3,4\n", {}),
        ("a,b\n1,2\n3,4\n", {"label_column": "class"}),
        ("a,b\n1,nan\n3,4\n", {}),
        ("a,b\n1,2\n", {}),
        ("", {}),
    ],
    ids=["ragged", "non-numeric", "missing-label", "non-finite", "single-row", "empty"],
)
def test_load_csv_errors(tmp_path, text, kwargs):
    with pytest.raises(DataError):
        load_csv(write(tmp_path, text), **kwargs)


def test_load_csv_missing_file(tmp_path):
    with pytest.raises(DataError):
        load_csv(tmp_path / "nope.csv")


def test_two_moons_shape_and_determinism():
    a = gen_two_moons(250, 0.05, 1)
    b = gen_two_moons(250, 0.05, 1)
    assert (a.n, a.d, a.n_classes) == (250, 2, 2)
    assert np.array_equal(a.features, b.features)
    assert not np.array_equal(a.features, gen_two_moons(250, 0.05, 2).features)


def test_two_moons_odd_split():
    ds = gen_two_moons(7, 0.0, 0)
    assert np.bincount(ds.labels).tolist() == [3, 4]


def test_two_moons_minimal_noiseless():
    ds = gen_two_moons(2, 0.0, 3)
    np.testing.assert_allclose(ds.features, [[1.0, 0.0], [0.0, 0.5]])


def test_circles_noiseless_radii():
    ds = gen_circles(336, 0.0, 1)
    assert (ds.n, ds.d, ds.n_classes) == (336, 2, 3)
    r = np.linalg.norm(ds.features, axis=1)
    np.testing.assert_allclose(r, ds.labels + 1.0, atol=1e-12)


def test_circles_remainder_to_outer_rings():
    assert np.bincount(gen_circles(11, 0.0, 0).labels).tolist() == [3, 4, 4]


def test_circles_labels_follow_radius_rank():
    ds = gen_circles(336, 0.05, 1)
    r = np.linalg.norm(ds.features, axis=1)
    means = [r[ds.labels == k].mean() for k in range(3)]
    assert means == sorted(means)
    # noise 0.05 keeps rings separated: every radius sorts into its own ring
    order = np.argsort(r, kind="stable")
    assert np.all(np.diff(ds.labels[order]) >= 0)


def test_ina_shape_split_and_means():
    ds = gen_ina(660, 1)
    assert (ds.n, ds.d, ds.n_classes) == (660, 2, 3)
    counts = np.bincount(ds.labels)
    assert counts.min() >= 660 // 3 and counts.max() <= -(-660 // 3)
    for k, c in enumerate(INA_CENTERS):
        assert np.linalg.norm(ds.features[ds.labels == k].mean(axis=0) - c) < 0.2


@pytest.mark.parametrize("gen, n", [(gen_two_moons, 1), (gen_circles, 2), (gen_ina, 2)])
def test_generators_reject_small_n(gen, n):
    with pytest.raises(DataError):
        gen(n)


def test_negative_noise_rejected():
    with pytest.raises(DataError):
        gen_two_moons(10, -0.1)


def test_dataset_rejects_label_length_mismatch():
    with pytest.raises(DataError):
        Dataset("x", np.zeros((3, 2)), [0, 1])


def test_standardize_none_is_identity(iris):
    assert standardize(iris, "none") is iris


def test_standardize_minmax_examples():
    ds = Dataset("x", np.array([[2.0, 5.0], [4.0, 5.0], [6.0, 5.0]]), [0, 1, 1])
    out = standardize(ds, "minmax")
    np.testing.assert_allclose(out.features, [[0, 0], [0.5, 0], [1, 0]])
    np.testing.assert_array_equal(out.labels, ds.labels)


def test_standardize_zscore(iris):
    out = standardize(iris, "zscore").features
    np.testing.assert_allclose(out.mean(axis=0), 0.0, atol=1e-12)
    np.testing.assert_allclose(out.std(axis=0), 1.0)


def test_standardize_unknown_mode(iris):
    with pytest.raises(ValueError):
        standardize(iris, "robust")


@settings(max_examples=50, deadline=None)
@given(arrays(np.float64, st.tuples(st.integers(2, 12), st.integers(1, 4)), elements=st.floats(-1e3, 1e3)))
def test_minmax_range_and_idempotence(X):
    once = standardize(Dataset("h", X), "minmax").features
    assert np.all((once >= 0) & (once <= 1))
    twice = standardize(Dataset("h", once), "minmax").features
    np.testing.assert_allclose(twice, once, atol=1e-9)


def test_csv_roundtrip(tmp_path):
    ds = gen_circles(30, 0.1, 4)
    path = tmp_path / "c.csv"
    to_csv(ds, path)
    back = load_csv(path, label_column="class")
    np.testing.assert_array_equal(back.features, ds.features)
    np.testing.assert_array_equal(back.labels, ds.labels)
