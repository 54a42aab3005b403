"""Shared value types, seeded randomness, and geometric sampling primitives."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

import numpy as np

# The one PRNG family used everywhere; its name travels with every dataset so
# files are reproducible independently of this package's defaults.
PRNG_NAME = "pcg64"

MAX_SEED = 2**64 - 1
_MASK64 = 2**64 - 1

# A time series is an L x n float64 matrix: L time steps, n dimensions.
TimeSeries = np.ndarray

RandomSource = np.random.Generator


def make_rng(seed: int) -> RandomSource:
    """Construct the package's deterministic random source from a 64-bit seed.

    Identical seeds give bit-identical streams across runs and platforms.
    """
    check_seed(seed)
    return np.random.Generator(np.random.PCG64(seed))


def check_seed(seed: int) -> None:
    if not isinstance(seed, (int, np.integer)) or not 0 <= seed <= MAX_SEED:
        raise ValueError(f"seed must be an integer in [0, 2**64), got {seed!r}")


def derive_child_seed(master: int, stream_labels) -> int:
    """Mix a master seed and a label path into an independent 64-bit child seed.

    Deterministic and order-sensitive: every (class, representative, sweep
    cell, replicate) path gets its own stream regardless of evaluation order.
    """
    h = hashlib.blake2b(digest_size=8)
    h.update((int(master) & _MASK64).to_bytes(8, "little"))
    for label in stream_labels:
        h.update((int(label) & _MASK64).to_bytes(8, "little"))
    return int.from_bytes(h.digest(), "little")


def sample_standard_normal(rng: RandomSource) -> float:
    """One draw from N(0, 1)."""
    return float(rng.standard_normal())


def sample_uniform_sphere(dim: int, rng: RandomSource) -> np.ndarray:
    """Uniformly distributed direction on the unit sphere in `dim` dimensions.

    Normalizes a vector of independent standard normal draws; the all-zeros
    event is redrawn.
    """
    if dim < 1:
        raise ValueError(f"dim must be >= 1, got {dim}")
    while True:
        v = rng.standard_normal(dim)
        norm = np.linalg.norm(v)
        if norm > 0.0:
            return v / norm


def sample_uniform_ball(dim: int, radius: float, rng: RandomSource) -> np.ndarray:
    """Uniformly distributed point in the closed ball of the given radius.

    Uniform direction scaled by radius * U**(1/dim), which is exact and
    rejection-free in any dimension.
    """
    if dim < 1:
        raise ValueError(f"dim must be >= 1, got {dim}")
    if radius <= 0.0:
        raise ValueError(f"radius must be > 0, got {radius}")
    direction = sample_uniform_sphere(dim, rng)
    u = rng.random()
    return direction * (radius * u ** (1.0 / dim))


def as_series(values) -> TimeSeries:
    """Validate and convert array-like input to an L x n float64 series.

    1-d input is treated as a single-dimension series. Raises ValueError on
    empty or non-finite input.
    """
    arr = np.ascontiguousarray(values, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    if arr.ndim != 2:
        raise ValueError(f"time series must be an L x n matrix, got ndim={arr.ndim}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"time series must be non-empty, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("time series entries must be finite")
    return arr


@dataclass(eq=False)
class LabeledSeries:
    """One class-labeled time series."""

    label: str
    series: TimeSeries

    def __post_init__(self):
        if not isinstance(self.label, str) or not self.label:
            raise ValueError("label must be a non-empty string")
        self.series = as_series(self.series)

    def __eq__(self, other):
        if not isinstance(other, LabeledSeries):
            return NotImplemented
        return self.label == other.label and np.array_equal(self.series, other.series)


@dataclass
class DatasetMeta:
    """Provenance of a generated dataset: generator name, parameters, seed."""

    generator: str
    params: dict = field(default_factory=dict)
    seed: int = 0
    prng: str = PRNG_NAME


@dataclass(eq=False)
class LabeledDataset:
    """Ordered collection of labeled series with uniform dimensionality."""

    items: list[LabeledSeries]
    dimensionality: int
    meta: DatasetMeta

    def __post_init__(self):
        if len(self.items) < 1:
            raise ValueError("dataset must contain at least one series")
        for k, item in enumerate(self.items):
            if item.series.shape[1] != self.dimensionality:
                raise ValueError(
                    f"item {k} has dimensionality {item.series.shape[1]}, "
                    f"expected {self.dimensionality}"
                )

    def __len__(self):
        return len(self.items)

    def __eq__(self, other):
        if not isinstance(other, LabeledDataset):
            return NotImplemented
        return (
            self.dimensionality == other.dimensionality
            and self.meta == other.meta
            and len(self.items) == len(other.items)
            and all(a == b for a, b in zip(self.items, other.items))
        )

    @property
    def labels(self) -> list[str]:
        return [item.label for item in self.items]
