"""Clustering tabular data with stochastic block models on induced similarity graphs."""

from .baselines import kmeans_fit, ward_fit
from .data import Dataset, gen_circles, gen_ina, gen_two_moons, load_csv, load_iris, standardize
from .harness import ExperimentConfig, ExperimentResult, default_grid, emit_table, run_benchmark, run_config, select_k
from .harness import select_threshold_and_k, sweep_report
from .metrics import ari, contingency, nmi, silhouette
from .partition import FitResult, Partition
from .sbm import brute_force_sbm, planted_bernoulli_graph, sbm_fit, sbm_log_likelihood
from .simgraph import BinaryGraph, SimilarityGraph, apply_threshold, induce_graph, similarity, threshold_grid
from .wsbm import brute_force_wsbm, planted_exponential_graph, wsbm_fit, wsbm_log_likelihood

__version__ = "0.1.0"
