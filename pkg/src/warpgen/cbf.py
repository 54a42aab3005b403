"""Multidimensional cylinder-bell-funnel dataset generation.

Each dimension of a series independently carries one of the three shapes
(plateau, rising ramp, falling ramp) embedded in standard normal noise, with
the shape supported on a common random index window [a, b).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .core import (
    DatasetMeta,
    LabeledDataset,
    LabeledSeries,
    RandomSource,
    TimeSeries,
    check_seed,
    derive_child_seed,
    make_rng,
)


class CbfShape(Enum):
    CYLINDER = "c"
    BELL = "b"
    FUNNEL = "f"


# Canonical digit order for class enumeration: c < b < f.
_SHAPE_BY_DIGIT = (CbfShape.CYLINDER, CbfShape.BELL, CbfShape.FUNNEL)
_DIGIT_CHARS = "cbf"

MIN_LENGTH = 8  # below this the rounded boundary windows can collide


@dataclass(frozen=True)
class CbfParams:
    length: int
    dim: int
    classes: int
    class_size: int
    seed: int

    def __post_init__(self):
        if self.length < MIN_LENGTH:
            raise ValueError(f"length must be >= {MIN_LENGTH}, got {self.length}")
        if self.dim < 1:
            raise ValueError(f"dim must be >= 1, got {self.dim}")
        if not 1 <= self.classes <= 3**self.dim:
            raise ValueError(
                f"classes must be in [1, 3**dim] = [1, {3 ** self.dim}], got {self.classes}"
            )
        if self.class_size < 1:
            raise ValueError(f"class_size must be >= 1, got {self.class_size}")
        check_seed(self.seed)

    def as_dict(self) -> dict:
        return {
            "length": self.length,
            "dim": self.dim,
            "classes": self.classes,
            "class_size": self.class_size,
        }


def parse_label(label: str) -> tuple[CbfShape, ...]:
    """Decode a label string over {c, b, f} into per-dimension shapes."""
    if not label:
        raise ValueError("label must name at least one dimension")
    try:
        return tuple(CbfShape(ch) for ch in label)
    except ValueError:
        raise ValueError(f"label must use only characters c, b, f, got {label!r}") from None


def enumerate_labels(dim: int, count: int) -> list[str]:
    """First `count` labels of the canonical base-3 enumeration.

    Counting runs c < b < f per dimension with the leftmost dimension most
    significant, so low indices differ only in the trailing dimensions.
    """
    if dim < 1:
        raise ValueError(f"dim must be >= 1, got {dim}")
    if not 1 <= count <= 3**dim:
        raise ValueError(f"count must be in [1, {3 ** dim}], got {count}")
    labels = []
    for k in range(count):
        digits = []
        for _ in range(dim):
            digits.append(_DIGIT_CHARS[k % 3])
            k //= 3
        labels.append("".join(reversed(digits)))
    return labels


def draw_boundaries(length: int, rng: RandomSource) -> tuple[int, int]:
    """Draw the shared event window (a, b) for one series.

    a is uniform on [length/8, 2*length/8] and b on [6*length/8, 7*length/8],
    both rounded to integer indices; length >= 8 guarantees 1 <= a < b < length.
    """
    if length < MIN_LENGTH:
        raise ValueError(f"length must be >= {MIN_LENGTH}, got {length}")
    a = int(round(rng.uniform(length / 8.0, 2.0 * length / 8.0)))
    b = int(round(rng.uniform(6.0 * length / 8.0, 7.0 * length / 8.0)))
    return a, b


def generate_series(length: int, label: str, rng: RandomSource) -> TimeSeries:
    """Generate one series for the given class label.

    All dimensions share a single (a, b) draw; each dimension draws its own
    amplitude nu = 6 + N(0,1) and its own noise.
    """
    shapes = parse_label(label)
    a, b = draw_boundaries(length, rng)
    width = b - a
    out = np.empty((length, len(shapes)))
    for d, shape in enumerate(shapes):
        nu = 6.0 + rng.standard_normal()
        col = rng.standard_normal(length)
        if shape is CbfShape.CYLINDER:
            col[a:b] += nu
        elif shape is CbfShape.BELL:
            col[a:b] += nu * (np.arange(a, b) - a) / width
        else:
            col[a:b] += nu * (b - np.arange(a, b)) / width
        out[:, d] = col
    return out


def generate_dataset(params: CbfParams) -> LabeledDataset:
    """Generate the first `classes` labels with `class_size` series each.

    Order is class-major. Every (class, representative) cell runs on its own
    child seed, so the result is independent of generation order.
    """
    labels = enumerate_labels(params.dim, params.classes)
    items = []
    for ci, label in enumerate(labels):
        for ri in range(params.class_size):
            rng = make_rng(derive_child_seed(params.seed, [ci, ri]))
            items.append(LabeledSeries(label, generate_series(params.length, label, rng)))
    meta = DatasetMeta(generator="cbf", params=params.as_dict(), seed=params.seed)
    return LabeledDataset(items=items, dimensionality=params.dim, meta=meta)
