"""Random Accelerated Motion dataset generation.

Base trajectories integrate a random impulse inside a bounding ball, bouncing
off the sphere elastically. Class representatives are produced by resampling
the base at random arc-length positions (time distortion) and then adding
capped noise to the first derivative (space distortion).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    DatasetMeta,
    LabeledDataset,
    LabeledSeries,
    RandomSource,
    TimeSeries,
    as_series,
    check_seed,
    derive_child_seed,
    make_rng,
    sample_uniform_ball,
    sample_uniform_sphere,
)


@dataclass(frozen=True)
class RamParams:
    length: int
    dim: int
    radius: float
    distortion: float
    classes: int
    class_size: int
    seed: int

    def __post_init__(self):
        if self.length < 2:
            raise ValueError(f"length must be >= 2, got {self.length}")
        if self.dim < 1:
            raise ValueError(f"dim must be >= 1, got {self.dim}")
        if self.radius <= 0:
            raise ValueError(f"radius must be > 0, got {self.radius}")
        if self.distortion < 0:
            raise ValueError(f"distortion must be >= 0, got {self.distortion}")
        if self.classes < 1:
            raise ValueError(f"classes must be >= 1, got {self.classes}")
        if self.class_size < 1:
            raise ValueError(f"class_size must be >= 1, got {self.class_size}")
        check_seed(self.seed)

    def as_dict(self) -> dict:
        return {
            "length": self.length,
            "dim": self.dim,
            "radius": self.radius,
            "distortion": self.distortion,
            "classes": self.classes,
            "class_size": self.class_size,
        }


def reflect(v: np.ndarray, unit: np.ndarray) -> np.ndarray:
    """Mirror v about the plane orthogonal to `unit` (an elastic bounce).

    Preserves the Euclidean norm of v.
    """
    return v - 2.0 * np.dot(v, unit) * unit


def ram_base(length: int, dim: int, radius: float, rng: RandomSource) -> TimeSeries:
    """Impulse-driven trajectory confined to the closed ball of given radius.

    Starts uniformly in the ball with zero impulse; each step adds a uniform
    unit direction to the impulse and integrates. A step leaving the ball is
    rescaled back onto the sphere and the impulse reflected there.
    """
    if length < 2:
        raise ValueError(f"length must be >= 2, got {length}")
    if dim < 1:
        raise ValueError(f"dim must be >= 1, got {dim}")
    if radius <= 0:
        raise ValueError(f"radius must be > 0, got {radius}")
    s = np.empty((length, dim))
    s[0] = sample_uniform_ball(dim, radius, rng)
    v = np.zeros(dim)
    for i in range(1, length):
        v = v + sample_uniform_sphere(dim, rng)
        p = s[i - 1] + v
        norm = np.linalg.norm(p)
        if norm > radius:
            unit = p / norm
            p = p * (radius / norm)
            v = reflect(v, unit)
        s[i] = p
    return s


def space_distortion(base: TimeSeries, distortion: float, rng: RandomSource) -> TimeSeries:
    """Add standard normal noise to the first derivative, capped in deviation.

    The first point is distorted too, treating its predecessor as the origin.
    Whenever the accumulated deviation from the base exceeds `distortion`, the
    point is pulled radially back onto the sphere of that radius around its
    base point before the next step builds on it. distortion = 0 reproduces
    the input exactly.
    """
    if distortion < 0:
        raise ValueError(f"distortion must be >= 0, got {distortion}")
    base = as_series(base)
    out = np.empty_like(base)
    prev_base = np.zeros(base.shape[1])
    prev_out = np.zeros(base.shape[1])
    for i in range(base.shape[0]):
        delta = base[i] - prev_base
        point = prev_out + delta + rng.standard_normal(base.shape[1])
        dev = point - base[i]
        dist = np.linalg.norm(dev)
        if dist > distortion:
            point = base[i] + (distortion / dist) * dev
        out[i] = point
        prev_base = base[i]
        prev_out = point
    return out


def arc_lengths(series: TimeSeries) -> np.ndarray:
    """Cumulative polyline length up to each point; starts at 0."""
    series = as_series(series)
    segments = np.linalg.norm(np.diff(series, axis=0), axis=1)
    return np.concatenate(([0.0], np.cumsum(segments)))


def time_distortion(series: TimeSeries, rng: RandomSource) -> TimeSeries:
    """Resample a series at uniformly random arc-length positions.

    The output keeps the input's length, starts and ends at the exact input
    endpoints, and every output point lies on the input polyline (linear
    interpolation between neighbors). A constant series is returned unchanged
    since its arc-length map is degenerate.
    """
    s = as_series(series)
    length = s.shape[0]
    if length < 2:
        raise ValueError(f"length must be >= 2, got {length}")
    ell = arc_lengths(s)
    total = ell[-1]
    if total == 0.0:
        return s.copy()
    draws = rng.uniform(0.0, total, size=length - 2)
    params = np.sort(np.concatenate(([0.0, total], draws)))
    # First segment index whose far end lies strictly beyond each parameter;
    # zero-length segments are skipped by searching on the right side.
    idx = np.searchsorted(ell[1:], params, side="right")
    idx = np.minimum(idx, length - 2)
    seg = ell[idx + 1] - ell[idx]
    safe = np.where(seg > 0.0, seg, 1.0)
    u = np.where(seg > 0.0, (params - ell[idx]) / safe, 1.0)
    u = u[:, np.newaxis]
    return (1.0 - u) * s[idx] + u * s[idx + 1]


def generate_dataset(params: RamParams) -> LabeledDataset:
    """Generate `classes` base trajectories and `class_size` distorted
    representatives of each; only the representatives enter the dataset.

    Order is class-major. The base for class i runs on child seed [i, 0] and
    representative j on child seed [i, j], so classes are independent cells.
    """
    width = len(str(params.classes - 1))
    items = []
    for ci in range(params.classes):
        base_rng = make_rng(derive_child_seed(params.seed, [ci, 0]))
        base = ram_base(params.length, params.dim, params.radius, base_rng)
        label = f"class_{ci:0{width}d}"
        for rj in range(1, params.class_size + 1):
            rng = make_rng(derive_child_seed(params.seed, [ci, rj]))
            representative = space_distortion(
                time_distortion(base, rng), params.distortion, rng
            )
            items.append(LabeledSeries(label, representative))
    meta = DatasetMeta(generator="ram", params=params.as_dict(), seed=params.seed)
    return LabeledDataset(items=items, dimensionality=params.dim, meta=meta)
