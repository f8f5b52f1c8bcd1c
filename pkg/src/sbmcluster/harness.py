"""Silhouette-driven model selection, benchmark runs and result tables."""

from __future__ import annotations

import csv
import io
import time
from dataclasses import dataclass, field, replace

import numpy as np

from . import data as data_mod
from .baselines import KMEANS_DEFAULTS, cut_merges, kmeans_fit, ward_merges
from .data import Dataset
from .errors import ConfigError, NoValidClusteringError
from .metrics import ari, nmi, silhouette_from_distances
from .partition import canonical_labels
from .sbm import sbm_fit
from .simgraph import METRICS, apply_threshold, induce_graph, pairwise_distances, threshold_grid
from .wsbm import wsbm_fit

METHODS = ("kmeans", "ward", "sbm", "wsbm", "wsbm_known")
SENTINEL = -1.0
DEFAULT_K_MAX = 40
TABLE_COLUMNS = ("dataset", "method", "metric", "silhouette", "nmi", "ari", "clusters", "threshold", "seed", "error")


@dataclass(frozen=True)
class ExperimentConfig:
    dataset: str
    method: str
    metric: str = "manhattan"
    k_min: int = 2
    k_max: int | None = None
    t_min: float = 0.05
    t_max: float = 0.95
    t_step: float = 0.05
    alpha: float = 0.0
    restarts: int = 10
    max_sweeps: int = 100
    seed: int = 0
    data_seed: int = 1
    label_column: str | None = None
    scaling: str = "none"
    silhouette_distance: str = "euclidean"
    nmi_normalization: str = "arithmetic"

    def validate(self):
        if self.method not in METHODS:
            raise ConfigError(f"unknown method {self.method!r}; expected one of {METHODS}")
        if self.metric not in METRICS:
            raise ConfigError(f"unknown metric {self.metric!r}; expected one of {METRICS}")
        if self.silhouette_distance not in METRICS:
            raise ConfigError(f"unknown silhouette distance {self.silhouette_distance!r}")
        if self.scaling not in data_mod.SCALING_MODES:
            raise ConfigError(f"unknown scaling {self.scaling!r}")
        if not 0.0 <= self.alpha <= 1.0:
            raise ConfigError(f"alpha must lie in [0, 1], got {self.alpha}")
        if self.restarts < 1:
            raise ConfigError("restarts must be >= 1")
        if self.method == "sbm":
            threshold_grid(self.t_min, self.t_max, self.t_step)
        return self

    def k_range(self, n) -> range:
        hi = min(DEFAULT_K_MAX, n - 1) if self.k_max is None else self.k_max
        if self.k_min < 2 or hi > n - 1 or self.k_min > hi:
            raise ConfigError(f"k range {self.k_min}..{hi} must lie within [2, {n - 1}] and be non-empty")
        return range(self.k_min, hi + 1)

    def t_grid(self) -> list[float]:
        return threshold_grid(self.t_min, self.t_max, self.t_step)


@dataclass
class ExperimentResult:
    config: ExperimentConfig
    k: int | None = None
    threshold: float | None = None
    silhouette: float | None = None
    nmi: float | None = None
    ari: float | None = None
    wall_time: float = 0.0
    labels: np.ndarray | None = field(default=None, repr=False)
    error: str | None = None


def load_dataset(cfg: ExperimentConfig) -> Dataset:
    ds = data_mod.load_named(cfg.dataset, label_column=cfg.label_column, seed=cfg.data_seed)
    return data_mod.standardize(ds, cfg.scaling)


def _score(D, labels):
    if np.unique(labels).size < 2:
        return SENTINEL
    return silhouette_from_distances(D, labels).mean_s


class _Scorer:
    """Silhouette in a fixed distance space, shared by every candidate labeling."""

    def __init__(self, ds, distance):
        self.D = pairwise_distances(ds.features, distance)

    def __call__(self, labels):
        return _score(self.D, labels)


def _finish(ds, cfg, labels, threshold, t0, sil):
    labels = canonical_labels(labels)
    res = ExperimentResult(
        config=cfg,
        k=int(np.unique(labels).size),
        threshold=threshold,
        silhouette=float(sil),
        labels=labels,
    )
    if ds.labels is not None:
        res.nmi = nmi(ds.labels, labels, cfg.nmi_normalization).nmi
        res.ari = ari(ds.labels, labels).ari
    res.wall_time = time.perf_counter() - t0
    return res


def _candidates(ds, cfg, k_values):
    """Yield ``(K, labels)`` for each K, fitting ``cfg.method``."""
    if cfg.method == "kmeans":
        for K in k_values:
            yield K, kmeans_fit(ds, K, cfg.restarts, KMEANS_DEFAULTS["max_iters"], KMEANS_DEFAULTS["tol"], cfg.seed).z
    elif cfg.method == "ward":
        merges = ward_merges(ds.features)
        for K in k_values:
            yield K, cut_merges(merges, ds.n, K)
    elif cfg.method in ("wsbm", "wsbm_known"):
        g = induce_graph(ds, cfg.metric)
        for K in k_values:
            yield K, wsbm_fit(g, K, cfg.alpha, cfg.restarts, cfg.max_sweeps, cfg.seed).partition.z
    else:
        raise ConfigError(f"method {cfg.method!r} is not selected over K alone")


def select_k(ds: Dataset, cfg: ExperimentConfig) -> ExperimentResult:
    """Fit ``cfg.method`` at every K in the range and keep the best silhouette.

    Ties go to the smaller K; labelings with fewer than two non-empty
    clusters score -1 and never win.
    """
    cfg.validate()
    t0 = time.perf_counter()
    score = _Scorer(ds, cfg.silhouette_distance)
    best = None
    for K, labels in _candidates(ds, cfg, cfg.k_range(ds.n)):
        s = score(labels)
        if s == SENTINEL:
            continue
        if best is None or s > best[0]:
            best = (s, labels)
    if best is None:
        raise NoValidClusteringError(f"{ds.name}/{cfg.method}: no labeling with >= 2 clusters")
    return _finish(ds, cfg, best[1], None, t0, best[0])


def fit_known_k(ds: Dataset, cfg: ExperimentConfig) -> ExperimentResult:
    """WSBM at the true class count, scored without any selection."""
    if ds.labels is None:
        raise ConfigError(f"{ds.name}: known-K run needs ground-truth labels")
    cfg.validate()
    t0 = time.perf_counter()
    K = ds.n_classes
    (_, labels), = _candidates(ds, replace(cfg, method="wsbm"), [K])
    return _finish(ds, cfg, labels, None, t0, _score(pairwise_distances(ds.features, cfg.silhouette_distance), labels))


def _sbm_cells(ds, cfg, t_grid, k_values):
    g = induce_graph(ds, cfg.metric)
    for t in t_grid:
        bg = apply_threshold(g, t)
        for K in k_values:
            yield t, K, sbm_fit(bg, K, cfg.restarts, cfg.max_sweeps, cfg.seed).partition.z


def sweep_report(ds: Dataset, cfg: ExperimentConfig) -> list[dict]:
    """Score every (threshold, K) cell of the SBM grid.

    Rows are ``{"t", "k", "silhouette", "nmi"}``; ``nmi`` is ``None`` when
    the dataset has no labels and ``silhouette`` is -1 for degenerate cells.
    """
    cfg.validate()
    score = _Scorer(ds, cfg.silhouette_distance)
    rows = []
    for t, K, labels in _sbm_cells(ds, cfg, cfg.t_grid(), cfg.k_range(ds.n)):
        rows.append(
            {
                "t": t,
                "k": K,
                "silhouette": score(labels),
                "nmi": None if ds.labels is None else nmi(ds.labels, labels, cfg.nmi_normalization).nmi,
                "labels": labels,
            }
        )
    return rows


def select_threshold_and_k(ds: Dataset, cfg: ExperimentConfig, rows=None) -> ExperimentResult:
    """Best silhouette over the threshold x K grid; ties favour smaller K, then smaller t."""
    t0 = time.perf_counter()
    if rows is None:
        rows = sweep_report(ds, cfg)
    valid = [r for r in rows if r["silhouette"] != SENTINEL]
    if not valid:
        raise NoValidClusteringError(f"{ds.name}/sbm: every threshold/K cell gave fewer than 2 clusters")
    best = min(valid, key=lambda r: (-r["silhouette"], r["k"], r["t"]))
    return _finish(ds, cfg, best["labels"], best["t"], t0, best["silhouette"])


def run_config(cfg: ExperimentConfig) -> ExperimentResult:
    cfg.validate()
    ds = load_dataset(cfg)
    if cfg.method == "sbm":
        return select_threshold_and_k(ds, cfg)
    if cfg.method == "wsbm_known":
        return fit_known_k(ds, cfg)
    return select_k(ds, cfg)


def run_benchmark(configs) -> list[ExperimentResult]:
    """Run configs in order; a failing config yields a row with ``error`` set."""
    results = []
    for cfg in configs:
        try:
            results.append(run_config(cfg))
        except (ConfigError, NoValidClusteringError, ValueError) as exc:
            results.append(ExperimentResult(config=cfg, error=f"{type(exc).__name__}: {exc}"))
    return results


def default_grid(datasets=("iris", "two_moons", "circles", "ina"), metrics=METRICS, **overrides):
    """Table-style grid: baselines once per dataset, graph methods per metric."""
    configs = []
    for name in datasets:
        configs.append(ExperimentConfig(name, "kmeans", **overrides))
        configs.append(ExperimentConfig(name, "ward", **overrides))
        for method in ("sbm", "wsbm"):
            for metric in metrics:
                configs.append(ExperimentConfig(name, method, metric=metric, **overrides))
        configs.append(ExperimentConfig(name, "wsbm_known", metric="manhattan", **overrides))
    return configs


def _fmt(v, digits):
    if v is None:
        return ""
    return f"{v:.{digits}f}"


def result_row(res: ExperimentResult, digits=6) -> dict:
    cfg = res.config
    graph_method = cfg.method in ("sbm", "wsbm", "wsbm_known")
    return {
        "dataset": cfg.dataset,
        "method": cfg.method,
        "metric": cfg.metric if graph_method else "",
        "silhouette": _fmt(res.silhouette, digits),
        "nmi": _fmt(res.nmi, digits),
        "ari": _fmt(res.ari, digits),
        "clusters": "" if res.k is None else str(res.k),
        "threshold": "" if res.threshold is None else f"{res.threshold:g}",
        "seed": str(cfg.seed),
        "error": res.error or "",
    }


def emit_table(results, format="csv") -> str:
    if format == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=TABLE_COLUMNS, lineterminator="\n")
        w.writeheader()
        for res in results:
            w.writerow(result_row(res))
        return buf.getvalue()
    if format == "markdown":
        head = ["Dataset", "Method", "Metric", "Silhouette", "NMI", "ARI", "Clusters", "Threshold", "Seed", "Error"]
        lines = ["| " + " | ".join(head) + " |", "|" + "---|" * len(head)]
        for res in results:
            row = result_row(res, digits=4)
            lines.append("| " + " | ".join(row[c] for c in TABLE_COLUMNS) + " |")
        return "\n".join(lines) + "\n"
    raise ConfigError(f"unknown table format {format!r}")


def sweep_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["t", "k", "silhouette", "nmi"])
    for r in rows:
        w.writerow([f"{r['t']:g}", r["k"], f"{r['silhouette']:.6f}", "" if r["nmi"] is None else f"{r['nmi']:.6f}"])
    return buf.getvalue()


def labels_csv(labels) -> str:
    lines = ["index,label"] + [f"{i},{int(v)}" for i, v in enumerate(labels)]
    return "\n".join(lines) + "\n"
