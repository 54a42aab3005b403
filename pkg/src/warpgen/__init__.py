"""Synthetic multidimensional time series generators, elastic distance
measures, and 1-NN classification benchmarks."""

from .cbf import CbfParams, CbfShape, enumerate_labels
from .cbf import generate_dataset as generate_cbf_dataset
from .classify import ScoreTable, SweepSpec, knn1_loo_score, pairwise_distances, run_sweep
from .core import (
    DatasetMeta,
    LabeledDataset,
    LabeledSeries,
    derive_child_seed,
    make_rng,
)
from .distances import DistanceKind, distance, dk, dtw, erp, euclidean
from .io import (
    ParseError,
    export_heatmap,
    read_dataset,
    read_scores,
    write_dataset,
    write_scores,
)
from .ram import RamParams, arc_lengths, ram_base, space_distortion, time_distortion
from .ram import generate_dataset as generate_ram_dataset

__version__ = "0.1.0"

__all__ = [
    "CbfParams",
    "CbfShape",
    "DatasetMeta",
    "DistanceKind",
    "LabeledDataset",
    "LabeledSeries",
    "ParseError",
    "RamParams",
    "ScoreTable",
    "SweepSpec",
    "arc_lengths",
    "derive_child_seed",
    "distance",
    "dk",
    "dtw",
    "enumerate_labels",
    "erp",
    "euclidean",
    "export_heatmap",
    "generate_cbf_dataset",
    "generate_ram_dataset",
    "knn1_loo_score",
    "make_rng",
    "pairwise_distances",
    "ram_base",
    "read_dataset",
    "read_scores",
    "run_sweep",
    "space_distortion",
    "time_distortion",
    "write_dataset",
    "write_scores",
]
