"""Leave-one-out 1-NN scoring and the parameter-sweep engine."""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import cbf, ram
from .core import LabeledDataset, check_seed, derive_child_seed
from .distances import DistanceKind, distance

REQUIRED_PARAMS = {
    "cbf": ("length", "dim", "classes", "class_size"),
    "ram": ("length", "dim", "radius", "distortion", "classes", "class_size"),
}
SWEEPABLE_AXES = {
    "cbf": ("class_size", "dim", "classes"),
    "ram": ("class_size", "dim", "classes", "distortion"),
}


def _pair_distance(kind: DistanceKind, x, y) -> float:
    return distance(kind, x, y)


def pairwise_distances(dataset: LabeledDataset, kind: DistanceKind, *, jobs: int = 1) -> np.ndarray:
    """Full symmetric distance matrix, evaluating each unordered pair once."""
    series = [item.series for item in dataset.items]
    n = len(series)
    mat = np.zeros((n, n))

    def fill_row(i: int) -> None:
        for j in range(i + 1, n):
            mat[i, j] = _pair_distance(kind, series[i], series[j])

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            list(pool.map(fill_row, range(n)))
    else:
        for i in range(n):
            fill_row(i)
    return mat + mat.T


def knn1_loo_score(dataset: LabeledDataset, kind: DistanceKind, *, jobs: int = 1) -> float:
    """Fraction of items whose nearest other item shares their label.

    Ties are broken by the smallest dataset index, so the score is
    deterministic for any input.
    """
    if len(dataset) < 2:
        raise ValueError(f"dataset must contain at least 2 items, got {len(dataset)}")
    labels = np.asarray(dataset.labels)
    if len(set(dataset.labels)) < 2:
        raise ValueError("dataset must contain at least 2 distinct labels")
    mat = pairwise_distances(dataset, kind, jobs=jobs)
    np.fill_diagonal(mat, np.inf)
    nearest = np.argmin(mat, axis=1)  # argmin picks the smallest index on ties
    return float(np.mean(labels[nearest] == labels))


def _as_int(name: str, value) -> int:
    if int(value) != value:
        raise ValueError(f"parameter {name} must be an integer, got {value!r}")
    return int(value)


def make_cell_dataset(generator: str, params: dict, seed: int) -> LabeledDataset:
    """Generate one sweep cell's dataset from its full parameter map."""
    if generator == "cbf":
        return cbf.generate_dataset(
            cbf.CbfParams(
                length=_as_int("length", params["length"]),
                dim=_as_int("dim", params["dim"]),
                classes=_as_int("classes", params["classes"]),
                class_size=_as_int("class_size", params["class_size"]),
                seed=seed,
            )
        )
    if generator == "ram":
        return ram.generate_dataset(
            ram.RamParams(
                length=_as_int("length", params["length"]),
                dim=_as_int("dim", params["dim"]),
                radius=float(params["radius"]),
                distortion=float(params["distortion"]),
                classes=_as_int("classes", params["classes"]),
                class_size=_as_int("class_size", params["class_size"]),
                seed=seed,
            )
        )
    raise ValueError(f"unknown generator {generator!r}")


@dataclass
class SweepSpec:
    """One sweep: a generator, a distance kind, 1-2 swept axes, and the
    remaining generation parameters held fixed."""

    generator: str
    kind: DistanceKind
    axes: tuple  # ((name, (v1, v2, ...)), ...)
    fixed: dict
    replicates: int
    seed: int

    def __post_init__(self):
        if self.generator not in REQUIRED_PARAMS:
            raise ValueError(f"unknown generator {self.generator!r}")
        if not isinstance(self.kind, DistanceKind):
            raise ValueError(f"kind must be a DistanceKind, got {self.kind!r}")
        self.axes = tuple((name, tuple(values)) for name, values in self.axes)
        if not 1 <= len(self.axes) <= 2:
            raise ValueError(f"sweeps support 1 or 2 axes, got {len(self.axes)}")
        sweepable = SWEEPABLE_AXES[self.generator]
        names = [name for name, _ in self.axes]
        for name, values in self.axes:
            if name not in sweepable:
                raise ValueError(
                    f"axis {name!r} is not sweepable for generator {self.generator!r} "
                    f"(supported: {', '.join(sweepable)})"
                )
            if len(values) < 1:
                raise ValueError(f"axis {name!r} needs at least one value")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate sweep axis in {names}")
        required = set(REQUIRED_PARAMS[self.generator])
        provided = set(names) | set(self.fixed)
        if set(names) & set(self.fixed):
            raise ValueError(f"parameters both swept and fixed: {sorted(set(names) & set(self.fixed))}")
        if provided != required:
            missing = sorted(required - provided)
            extra = sorted(provided - required)
            detail = []
            if missing:
                detail.append(f"missing: {', '.join(missing)}")
            if extra:
                detail.append(f"unknown: {', '.join(extra)}")
            raise ValueError(f"bad sweep parameters for {self.generator!r} ({'; '.join(detail)})")
        if self.replicates < 1:
            raise ValueError(f"replicates must be >= 1, got {self.replicates}")
        check_seed(self.seed)


@dataclass(eq=False)
class ScoreTable:
    """Grid of classification scores over the swept axes, one column of raw
    scores per replicate."""

    generator: str
    kind: DistanceKind
    axis_names: tuple
    axis_values: tuple  # one value tuple per axis
    fixed: dict
    master_seed: int
    replicates: int
    rep_scores: np.ndarray  # shape: grid shape + (replicates,)

    def __post_init__(self):
        expected = tuple(len(v) for v in self.axis_values) + (self.replicates,)
        self.rep_scores = np.asarray(self.rep_scores, dtype=np.float64)
        if self.rep_scores.shape != expected:
            raise ValueError(
                f"score grid shape {self.rep_scores.shape} does not match axes {expected}"
            )
        if np.any(self.rep_scores < 0.0) or np.any(self.rep_scores > 1.0):
            raise ValueError("scores must lie in [0, 1]")

    @property
    def scores(self) -> np.ndarray:
        """Grid of replicate means."""
        return self.rep_scores.mean(axis=-1)

    def __eq__(self, other):
        if not isinstance(other, ScoreTable):
            return NotImplemented
        return (
            self.generator == other.generator
            and self.kind == other.kind
            and self.axis_names == other.axis_names
            and self.axis_values == other.axis_values
            and self.fixed == other.fixed
            and self.master_seed == other.master_seed
            and self.replicates == other.replicates
            and np.array_equal(self.rep_scores, other.rep_scores)
        )


def run_sweep(spec: SweepSpec, *, jobs: int = 1) -> ScoreTable:
    """Score every cell of the sweep grid, averaging over replicates.

    Cell (cell_index, replicate) runs on its own child seed, so results do
    not depend on evaluation order or on `jobs`.
    """
    shape = tuple(len(values) for _, values in spec.axes)
    rep_scores = np.empty(shape + (spec.replicates,))
    for cell_index, idx in enumerate(itertools.product(*(range(s) for s in shape))):
        cell_params = dict(spec.fixed)
        for (name, values), i in zip(spec.axes, idx):
            cell_params[name] = values[i]
        for r in range(spec.replicates):
            cell_seed = derive_child_seed(spec.seed, [cell_index, r])
            dataset = make_cell_dataset(spec.generator, cell_params, cell_seed)
            rep_scores[idx + (r,)] = knn1_loo_score(dataset, spec.kind, jobs=jobs)
    return ScoreTable(
        generator=spec.generator,
        kind=spec.kind,
        axis_names=tuple(name for name, _ in spec.axes),
        axis_values=tuple(values for _, values in spec.axes),
        fixed=dict(spec.fixed),
        master_seed=spec.seed,
        replicates=spec.replicates,
        rep_scores=rep_scores,
    )
