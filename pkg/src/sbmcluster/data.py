"""Tabular datasets: CSV loading, synthetic generators and feature scaling."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from .errors import DataError

SCALING_MODES = ("none", "minmax", "zscore")

# INA approximation: three blobs on an equilateral triangle of side 4
INA_SIDE = 4.0
INA_STD = 0.6
INA_CENTERS = np.array(
    [
        [0.0, 0.0],
        [INA_SIDE, 0.0],
        [INA_SIDE / 2.0, INA_SIDE * math.sqrt(3.0) / 2.0],
    ]
)


@dataclass(frozen=True)
class Dataset:
    """An ``n x d`` feature matrix with optional integer class labels."""

    name: str
    features: np.ndarray
    labels: np.ndarray | None = None
    label_names: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        X = np.asarray(self.features, dtype=np.float64)
        if X.ndim != 2:
            raise DataError(f"{self.name}: features must be a 2-D matrix, got shape {X.shape}")
        if X.shape[0] < 2:
            raise DataError(f"{self.name}: need at least 2 instances, got {X.shape[0]}")
        if X.shape[1] < 1:
            raise DataError(f"{self.name}: need at least 1 feature")
        if not np.all(np.isfinite(X)):
            raise DataError(f"{self.name}: features contain non-finite values")
        object.__setattr__(self, "features", X)
        if self.labels is not None:
            y = np.asarray(self.labels)
            if y.shape != (X.shape[0],):
                raise DataError(
                    f"{self.name}: {y.shape[0] if y.ndim else 0} labels for {X.shape[0]} instances"
                )
            object.__setattr__(self, "labels", y.astype(np.int64))

    @property
    def n(self) -> int:
        return self.features.shape[0]

    @property
    def d(self) -> int:
        return self.features.shape[1]

    @property
    def n_classes(self) -> int | None:
        if self.labels is None:
            return None
        return int(np.unique(self.labels).size)


def _encode_labels(raw):
    names = sorted(set(raw))
    index = {name: i for i, name in enumerate(names)}
    return np.array([index[v] for v in raw], dtype=np.int64), tuple(names)


def _parse_rows(name, header, rows, label_column):
    d_total = len(header)
    label_idx = None
    if label_column is not None:
        if isinstance(label_column, int):
            label_idx = label_column if label_column >= 0 else d_total + label_column
            if not 0 <= label_idx < d_total:
                raise DataError(f"{name}: label column index {label_column} out of range")
        elif label_column in header:
            label_idx = header.index(label_column)
        else:
            raise DataError(f"{name}: label column {label_column!r} not found in header")

    feats, raw_labels = [], []
    for lineno, row in enumerate(rows, start=2):
        if not row:
            continue
        if len(row) != d_total:
            raise DataError(f"{name}: line {lineno} has {len(row)} fields, expected {d_total}")
        values = []
        for j, cell in enumerate(row):
            if j == label_idx:
                raw_labels.append(cell.strip())
                continue
            try:
                v = float(cell)
            except ValueError:
                raise DataError(f"{name}: line {lineno}, column {header[j]!r}: non-numeric value {cell!r}") from None
            if not math.isfinite(v):
                raise DataError(f"{name}: line {lineno}, column {header[j]!r}: non-finite value")
            values.append(v)
        feats.append(values)

    if not feats:
        raise DataError(f"{name}: no data rows")
    labels = label_names = None
    if label_idx is not None:
        labels, label_names = _encode_labels(raw_labels)
    return Dataset(name, np.array(feats, dtype=np.float64), labels, label_names)


def load_csv(path, label_column=None) -> Dataset:
    """Read a headed, comma-separated file of numeric features.

    ``label_column`` is a header name or a column index (negative indices
    count from the end). Label values may be arbitrary strings; they are
    mapped to integer ids in sorted order.
    """
    path = Path(path)
    if not path.is_file():
        raise DataError(f"no such file: {path}")
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = [h.strip() for h in next(reader)]
        except StopIteration:
            raise DataError(f"{path}: empty file") from None
        return _parse_rows(path.stem, header, reader, label_column)


def load_iris() -> Dataset:
    """The UCI Iris data (150 x 4, 3 classes) bundled with the package.

    This is the ``iris.data`` variant distributed by UCI, which differs from
    Fisher's printed table in samples 35 and 38.
    """
    text = resources.files("sbmcluster.datasets").joinpath("iris.csv").read_text(encoding="utf-8")
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    return _parse_rows("iris", header, reader, "class")


def to_csv(ds: Dataset, path=None) -> str:
    """Serialize ``ds`` with header ``x0..x{d-1}`` and a trailing ``class`` column.

    Returns the CSV text; also writes it to ``path`` when given.
    """
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    cols = [f"x{j}" for j in range(ds.d)]
    if ds.labels is not None:
        cols.append("class")
    w.writerow(cols)
    for i in range(ds.n):
        row = [repr(float(v)) for v in ds.features[i]]
        if ds.labels is not None:
            row.append(int(ds.labels[i]))
        w.writerow(row)
    text = buf.getvalue()
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text


def _check_noise(noise):
    if not (noise >= 0 and math.isfinite(noise)):
        raise DataError(f"noise must be a finite value >= 0, got {noise}")


def gen_two_moons(n=250, noise=0.05, seed=0) -> Dataset:
    """Two interleaving half circles with ``n // 2`` and ``n - n // 2`` points.

    The upper moon is the unit half circle from angle 0 to pi; the lower one
    is the same arc flipped and shifted by (1, 0.5). Points sit at evenly
    spaced angles before Gaussian noise is added.
    """
    if n < 2:
        raise DataError(f"two moons needs n >= 2, got {n}")
    _check_noise(noise)
    rng = np.random.default_rng(seed)
    n_out = n // 2
    n_in = n - n_out
    t_out = np.linspace(0.0, np.pi, n_out)
    t_in = np.linspace(0.0, np.pi, n_in)
    outer = np.column_stack([np.cos(t_out), np.sin(t_out)])
    inner = np.column_stack([1.0 - np.cos(t_in), 0.5 - np.sin(t_in)])
    X = np.vstack([outer, inner])
    y = np.repeat([0, 1], [n_out, n_in])
    if noise > 0:
        X = X + rng.normal(scale=noise, size=X.shape)
    return Dataset("two_moons", X, y)


def _ring_sizes(n, rings):
    base, extra = divmod(n, rings)
    # remainder goes to the outer rings
    return [base + (1 if r >= rings - extra else 0) for r in range(rings)]


def gen_circles(n=336, noise=0.05, seed=0) -> Dataset:
    """Three concentric circles of radius 1, 2 and 3; label = ring index."""
    if n < 3:
        raise DataError(f"circles needs n >= 3, got {n}")
    _check_noise(noise)
    rng = np.random.default_rng(seed)
    parts, labels = [], []
    for ring, size in enumerate(_ring_sizes(n, 3)):
        t = np.linspace(0.0, 2 * np.pi, size, endpoint=False)
        parts.append((ring + 1.0) * np.column_stack([np.cos(t), np.sin(t)]))
        labels.append(np.full(size, ring))
    X = np.vstack(parts)
    if noise > 0:
        X = X + rng.normal(scale=noise, size=X.shape)
    return Dataset("circles", X, np.concatenate(labels))


def gen_ina(n=660, seed=0) -> Dataset:
    """Three isotropic Gaussian blobs standing in for the INA dataset.

    Centers form an equilateral triangle of side 4 (``INA_CENTERS``), each
    blob has standard deviation 0.6. This only mimics the published shape
    (660 points, 3 clusters); the original data are not available.
    """
    if n < 3:
        raise DataError(f"ina needs n >= 3, got {n}")
    rng = np.random.default_rng(seed)
    sizes = _ring_sizes(n, 3)
    X = np.vstack([rng.normal(loc=c, scale=INA_STD, size=(s, 2)) for c, s in zip(INA_CENTERS, sizes)])
    y = np.repeat(np.arange(3), sizes)
    return Dataset("ina", X, y)


SYNTHETIC = {
    "two_moons": gen_two_moons,
    "circles": gen_circles,
    "ina": gen_ina,
}


def load_named(name: str, label_column=None, seed=0) -> Dataset:
    """Resolve ``iris``, a synthetic generator name, or a CSV path."""
    if name == "iris":
        return load_iris()
    if name == "ina":
        return gen_ina(seed=seed)
    if name in SYNTHETIC:
        return SYNTHETIC[name](seed=seed)
    return load_csv(name, label_column=label_column)


def standardize(ds: Dataset, mode="none") -> Dataset:
    """Scale every feature column; constant columns become all zeros."""
    if mode not in SCALING_MODES:
        raise ValueError(f"unknown scaling mode {mode!r}; expected one of {SCALING_MODES}")
    if mode == "none":
        return ds
    X = ds.features
    if mode == "minmax":
        lo = X.min(axis=0)
        span = X.max(axis=0) - lo
        shift, scale = lo, span
    else:
        shift = X.mean(axis=0)
        scale = X.std(axis=0)
    const = scale == 0
    out = (X - shift) / np.where(const, 1.0, scale)
    out[:, const] = 0.0
    return Dataset(ds.name, out, ds.labels, ds.label_names)
