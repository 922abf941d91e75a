"""Weakly supervised transductive regression.

Fits Gaussian label beliefs (mean, std) to every point of a partially and
inaccurately labeled dataset by smoothing them over a similarity graph.
Two interchangeable similarity backends: a dense stationary kernel
(baseline, O(n^2) memory) and an implicit cluster-ensemble co-association
similarity solved through its low-rank factor (scales to very large n).
"""

from .backend import active_backend, set_backend
from .datagen import MixtureSpec, SplitSpec, generate, split_and_corrupt, write_dataset_csv
from .ensemble import (
    EnsembleConfig,
    Partition,
    PartitionEnsemble,
    build_ensemble,
    coassociation_degree,
    coassociation_factor,
    kmeans,
)
from .errors import WeakregError
from .experiment import (
    ExperimentConfig,
    GridSearchResult,
    RunReport,
    grid_search,
    prepare_dataset,
    run_experiment,
    run_single,
)
from .ingest import CsvSchema, assign_roles, load_csv, read_dataset_csv
from .kernels import KernelSpec, graph_laplacian, similarity_matrix
from .labels import LabeledView, Role, SplitMasks, WeakLabel
from .lowrank import (
    DenseSymmetric,
    DiagonalMatrix,
    LowRankFactor,
    degree_diagonal,
    dense_solve,
    woodbury_solve,
)
from .metrics import GaussianLabel, mae, mwd, w2_gaussian
from .regression import Prediction, SolverParams, assemble_rhs, fit_dense, fit_lowrank
from .report import emit_report, parse_report_csv, render_report

__version__ = "0.1.0"

__all__ = [
    "CsvSchema",
    "DenseSymmetric",
    "DiagonalMatrix",
    "EnsembleConfig",
    "ExperimentConfig",
    "GaussianLabel",
    "GridSearchResult",
    "KernelSpec",
    "LabeledView",
    "LowRankFactor",
    "MixtureSpec",
    "Partition",
    "PartitionEnsemble",
    "Prediction",
    "Role",
    "RunReport",
    "SolverParams",
    "SplitMasks",
    "SplitSpec",
    "WeakLabel",
    "WeakregError",
    "active_backend",
    "assemble_rhs",
    "assign_roles",
    "build_ensemble",
    "coassociation_degree",
    "coassociation_factor",
    "degree_diagonal",
    "dense_solve",
    "emit_report",
    "fit_dense",
    "fit_lowrank",
    "generate",
    "graph_laplacian",
    "grid_search",
    "kmeans",
    "load_csv",
    "mae",
    "mwd",
    "parse_report_csv",
    "prepare_dataset",
    "read_dataset_csv",
    "render_report",
    "run_experiment",
    "run_single",
    "set_backend",
    "similarity_matrix",
    "split_and_corrupt",
    "w2_gaussian",
    "woodbury_solve",
    "write_dataset_csv",
]
