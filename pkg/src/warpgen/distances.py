"""Time-series distance functions: lockstep Euclidean, DTW, ERP, and the
Dog Keeper (discrete Frechet) distance.

The warping distances share one ground metric, the unsquared Euclidean norm
between aligned points, which keeps ERP and DK genuine metrics. All dynamic
programs run in two rows (linear memory) and O(Lx * Ly) time; no warping
window is applied.
"""

from __future__ import annotations

from enum import Enum

import numpy as np
from numba import njit

from .core import TimeSeries, as_series


class DistanceKind(Enum):
    EUCLIDEAN = "euclidean"
    DTW = "dtw"
    ERP = "erp"
    DK = "dk"

    @classmethod
    def parse(cls, name: str) -> "DistanceKind":
        try:
            return cls(name.lower())
        except ValueError:
            valid = ", ".join(k.value for k in cls)
            raise ValueError(f"unknown distance kind {name!r}, expected one of: {valid}") from None


@njit(cache=True, nogil=True)
def _euclidean_kernel(x, y):
    acc = 0.0
    for i in range(x.shape[0]):
        for d in range(x.shape[1]):
            t = x[i, d] - y[i, d]
            acc += t * t
    return np.sqrt(acc)


@njit(cache=True, nogil=True)
def _dtw_kernel(x, y):
    lx, ly = x.shape[0], y.shape[0]
    n = x.shape[1]
    prev = np.empty(ly)
    cur = np.empty(ly)
    for j in range(ly):
        c = 0.0
        for d in range(n):
            t = x[0, d] - y[j, d]
            c += t * t
        c = np.sqrt(c)
        prev[j] = c if j == 0 else prev[j - 1] + c
    for i in range(1, lx):
        for j in range(ly):
            c = 0.0
            for d in range(n):
                t = x[i, d] - y[j, d]
                c += t * t
            c = np.sqrt(c)
            if j == 0:
                cur[0] = prev[0] + c
            else:
                m = prev[j - 1]
                if prev[j] < m:
                    m = prev[j]
                if cur[j - 1] < m:
                    m = cur[j - 1]
                cur[j] = m + c
        prev, cur = cur, prev
    return prev[ly - 1]


@njit(cache=True, nogil=True)
def _dk_kernel(x, y):
    lx, ly = x.shape[0], y.shape[0]
    n = x.shape[1]
    prev = np.empty(ly)
    cur = np.empty(ly)
    for j in range(ly):
        c = 0.0
        for d in range(n):
            t = x[0, d] - y[j, d]
            c += t * t
        c = np.sqrt(c)
        if j > 0 and prev[j - 1] > c:
            c = prev[j - 1]
        prev[j] = c
    for i in range(1, lx):
        for j in range(ly):
            c = 0.0
            for d in range(n):
                t = x[i, d] - y[j, d]
                c += t * t
            c = np.sqrt(c)
            if j == 0:
                m = prev[0]
            else:
                m = prev[j - 1]
                if prev[j] < m:
                    m = prev[j]
                if cur[j - 1] < m:
                    m = cur[j - 1]
            cur[j] = c if c > m else m
        prev, cur = cur, prev
    return prev[ly - 1]


@njit(cache=True, nogil=True)
def _erp_kernel(x, y, gap):
    lx, ly = x.shape[0], y.shape[0]
    n = gap.shape[0]
    gx = np.empty(lx)
    for i in range(lx):
        c = 0.0
        for d in range(n):
            t = x[i, d] - gap[d]
            c += t * t
        gx[i] = np.sqrt(c)
    gy = np.empty(ly)
    for j in range(ly):
        c = 0.0
        for d in range(n):
            t = y[j, d] - gap[d]
            c += t * t
        gy[j] = np.sqrt(c)
    prev = np.empty(ly + 1)
    cur = np.empty(ly + 1)
    prev[0] = 0.0
    for j in range(1, ly + 1):
        prev[j] = prev[j - 1] + gy[j - 1]
    for i in range(1, lx + 1):
        cur[0] = prev[0] + gx[i - 1]
        for j in range(1, ly + 1):
            c = 0.0
            for d in range(n):
                t = x[i - 1, d] - y[j - 1, d]
                c += t * t
            c = np.sqrt(c)
            m = prev[j - 1] + c
            b = prev[j] + gx[i - 1]
            if b < m:
                m = b
            b = cur[j - 1] + gy[j - 1]
            if b < m:
                m = b
            cur[j] = m
        prev, cur = cur, prev
    return prev[ly]


def _series_allow_empty(values) -> np.ndarray:
    """Like as_series, but an empty series (zero rows) is accepted."""
    arr = np.ascontiguousarray(values, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    if arr.ndim != 2:
        raise ValueError(f"time series must be an L x n matrix, got ndim={arr.ndim}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("time series entries must be finite")
    return arr


def _check_dims(x: np.ndarray, y: np.ndarray) -> None:
    if x.shape[1] != y.shape[1]:
        raise ValueError(
            f"dimensionality mismatch: {x.shape[1]} vs {y.shape[1]}"
        )


def euclidean(x: TimeSeries, y: TimeSeries) -> float:
    """Lockstep L2 distance; requires equal lengths and dimensionalities."""
    x = as_series(x)
    y = as_series(y)
    if x.shape != y.shape:
        raise ValueError(
            f"euclidean requires equal length and dimensionality, got {x.shape} vs {y.shape}"
        )
    return float(_euclidean_kernel(x, y))


def dtw(x: TimeSeries, y: TimeSeries) -> float:
    """Dynamic Time Warping: minimum over warping paths of the summed cost."""
    x = as_series(x)
    y = as_series(y)
    _check_dims(x, y)
    return float(_dtw_kernel(x, y))


def dk(x: TimeSeries, y: TimeSeries) -> float:
    """Dog Keeper (discrete Frechet): minimum over warping paths of the
    maximum cost."""
    x = as_series(x)
    y = as_series(y)
    _check_dims(x, y)
    return float(_dk_kernel(x, y))


def erp(x: TimeSeries, y: TimeSeries, gap=None) -> float:
    """Edit Distance with Real Penalty against a fixed gap element.

    Unmatched points are costed against `gap` (default: the zero vector).
    Either series may be empty.
    """
    x = _series_allow_empty(x)
    y = _series_allow_empty(y)
    dims = {a.shape[1] for a in (x, y) if a.shape[0] > 0}
    if gap is not None:
        gap = np.ascontiguousarray(gap, dtype=np.float64).reshape(-1)
        if not np.all(np.isfinite(gap)):
            raise ValueError("gap entries must be finite")
        dims.add(gap.shape[0])
    if len(dims) > 1:
        raise ValueError(f"dimensionality mismatch among inputs: {sorted(dims)}")
    n = dims.pop() if dims else 1
    if gap is None:
        gap = np.zeros(n)
    if x.shape[0] == 0:
        x = x.reshape(0, n)
    if y.shape[0] == 0:
        y = y.reshape(0, n)
    return float(_erp_kernel(x, y, gap))


def distance(kind: DistanceKind, x: TimeSeries, y: TimeSeries) -> float:
    """Dispatch to the distance of the given kind (ERP uses the zero gap)."""
    if kind is DistanceKind.EUCLIDEAN:
        return euclidean(x, y)
    if kind is DistanceKind.DTW:
        return dtw(x, y)
    if kind is DistanceKind.ERP:
        return erp(x, y)
    if kind is DistanceKind.DK:
        return dk(x, y)
    raise ValueError(f"unknown distance kind: {kind!r}")
