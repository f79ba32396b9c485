"""Elastic alignment between two series via dynamic programming.

The cumulative-cost recursion is the classic one: each lattice cell adds its
local cost to the cheapest of its three predecessors (left, diagonal, below).
An optional binary mask restricts which cells may be visited at all; cells
outside the mask behave as infinitely expensive, so a query whose best
alignment would have to leave the masked region comes back infeasible rather
than silently re-routed.

Backtracking is deterministic: on cost ties it prefers the diagonal
predecessor, then the column predecessor, then the row predecessor.
`brute_force_dtw` enumerates every monotone lattice path and applies the same
tie-break, which makes it a slow but independent oracle for the DP kernel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np
from numba import njit

from .errors import (
    EmptySeries,
    InfeasibleResult,
    InstanceTooLarge,
    MaskDimensionMismatch,
    NonFiniteSample,
)

NORMAL = "normal"
ANOMALOUS = "anomalous"

# direction slots used throughout: advance column / both / row
RIGHT, DIAG, UP = 0, 1, 2

# backtracking preference on cost ties: diagonal, then column pred, then row pred
_BACKTRACK_RANK = {DIAG: 0, RIGHT: 1, UP: 2}


@dataclass(frozen=True)
class TimeSeries:
    """An identified sequence of real samples with an optional truth label."""

    id: str
    values: np.ndarray
    label: Optional[str] = None  # NORMAL, ANOMALOUS or None for unlabeled

    def __post_init__(self):
        object.__setattr__(self, "values", np.asarray(self.values, dtype=np.float64))

    def __len__(self):
        return self.values.shape[0]


@dataclass(frozen=True)
class WarpingPath:
    """Monotone lattice path of 0-based (row, col) alignment positions."""

    steps: tuple

    def __post_init__(self):
        steps = tuple((int(r), int(c)) for r, c in self.steps)
        object.__setattr__(self, "steps", steps)
        if not steps:
            raise ValueError("warping path must contain at least one position")
        if steps[0] != (0, 0):
            raise ValueError(f"warping path must start at (0, 0), got {steps[0]}")
        for k in range(1, len(steps)):
            dr = steps[k][0] - steps[k - 1][0]
            dc = steps[k][1] - steps[k - 1][1]
            if (dr, dc) not in ((0, 1), (1, 1), (1, 0)):
                raise ValueError(
                    f"illegal step {steps[k - 1]} -> {steps[k]} at index {k}"
                )

    def __len__(self):
        return len(self.steps)

    def __getitem__(self, k):
        return self.steps[k]

    def __iter__(self):
        return iter(self.steps)

    @property
    def end(self):
        return self.steps[-1]


@dataclass(frozen=True)
class DtwResult:
    """Alignment distance, one optimal path, and the DP work counter."""

    distance: float
    path: Optional[WarpingPath]
    cells_evaluated: int

    @property
    def infeasible(self) -> bool:
        return self.path is None


SeriesLike = Union[TimeSeries, Sequence[float], np.ndarray]


def pointwise_distance(x: float, y: float) -> float:
    """Absolute difference between two aligned samples."""
    return abs(x - y)


def _checked_values(series: SeriesLike) -> np.ndarray:
    values = series.values if isinstance(series, TimeSeries) else np.asarray(
        series, dtype=np.float64
    )
    if values.ndim != 1:
        raise ValueError(f"expected a 1-D series, got shape {values.shape}")
    if values.shape[0] == 0:
        raise EmptySeries("series has no samples")
    if not np.all(np.isfinite(values)):
        raise NonFiniteSample("series contains NaN or infinite samples")
    return values


def _checked_mask(mask, m: int, n: int) -> np.ndarray:
    arr = np.ascontiguousarray(mask, dtype=np.uint8)
    if arr.shape != (m, n):
        raise MaskDimensionMismatch(
            f"mask shape {arr.shape} does not match lattice ({m}, {n})"
        )
    return arr


@njit(cache=True)
def _fill_full(cost):
    m, n = cost.shape
    acc = np.empty((m, n), dtype=np.float64)
    acc[0, 0] = cost[0, 0]
    for j in range(1, n):
        acc[0, j] = acc[0, j - 1] + cost[0, j]
    for i in range(1, m):
        acc[i, 0] = acc[i - 1, 0] + cost[i, 0]
        for j in range(1, n):
            best = acc[i - 1, j - 1]
            if acc[i, j - 1] < best:
                best = acc[i, j - 1]
            if acc[i - 1, j] < best:
                best = acc[i - 1, j]
            acc[i, j] = cost[i, j] + best
    return acc


@njit(cache=True)
def _fill_masked(cost, mask, lo, hi):
    m, n = cost.shape
    acc = np.full((m, n), np.inf, dtype=np.float64)
    cells = 0
    for i in range(m):
        for j in range(lo[i], hi[i]):
            if mask[i, j] == 0:
                continue
            cells += 1
            if i == 0 and j == 0:
                acc[0, 0] = cost[0, 0]
                continue
            best = np.inf
            if i > 0 and j > 0:
                best = acc[i - 1, j - 1]
            if j > 0 and acc[i, j - 1] < best:
                best = acc[i, j - 1]
            if i > 0 and acc[i - 1, j] < best:
                best = acc[i - 1, j]
            if best < np.inf:
                acc[i, j] = cost[i, j] + best
    return acc, cells


def _backtrack(acc: np.ndarray) -> WarpingPath:
    i, j = acc.shape[0] - 1, acc.shape[1] - 1
    rev = [(i, j)]
    while i > 0 or j > 0:
        best = math.inf
        step = None
        # candidates listed in tie-break preference order
        if i > 0 and j > 0 and acc[i - 1, j - 1] < best:
            best = acc[i - 1, j - 1]
            step = (i - 1, j - 1)
        if j > 0 and acc[i, j - 1] < best:
            best = acc[i, j - 1]
            step = (i, j - 1)
        if i > 0 and acc[i - 1, j] < best:
            best = acc[i - 1, j]
            step = (i - 1, j)
        i, j = step
        rev.append(step)
    return WarpingPath(tuple(reversed(rev)))


def dtw(a: SeriesLike, b: SeriesLike, mask=None) -> DtwResult:
    """Optimal elastic alignment of ``a`` (rows) against ``b`` (columns).

    Parameters
    ----------
    a, b : TimeSeries or 1-D array-like
        Non-empty series of finite samples.
    mask : array-like of shape (len(a), len(b)), optional
        Binary constraint; cells with 0 may never be visited.  When no path
        of allowed cells connects (0, 0) to the end corner the result is
        infeasible: distance ``inf`` and no path.

    Returns
    -------
    DtwResult
        Minimum cumulative pointwise distance, one optimal path recovered by
        deterministic backtracking, and the number of DP cells evaluated.
    """
    va = _checked_values(a)
    vb = _checked_values(b)
    m, n = va.shape[0], vb.shape[0]
    cost = np.abs(va[:, None] - vb[None, :])
    if mask is None:
        acc = _fill_full(cost)
        cells = m * n
    else:
        arr = _checked_mask(mask, m, n)
        nonempty = arr.any(axis=1)
        first = arr.argmax(axis=1).astype(np.int64)
        last = (n - arr[:, ::-1].argmax(axis=1)).astype(np.int64)
        lo = np.where(nonempty, first, 0)
        hi = np.where(nonempty, last, 0)
        acc, cells = _fill_masked(cost, arr, lo, hi)
    distance = acc[m - 1, n - 1]
    if not math.isfinite(distance):
        return DtwResult(math.inf, None, int(cells))
    return DtwResult(float(distance), _backtrack(acc), int(cells))


_BRUTE_FORCE_LIMIT = 10


def brute_force_dtw(a: SeriesLike, b: SeriesLike) -> DtwResult:
    """Exhaustive-path alignment oracle for desk-scale inputs.

    Enumerates every monotone lattice path, sums pointwise distances along
    each, and returns the minimum.  Among equally cheap paths it picks the
    one the DP backtracking would: scanning from the end, prefer diagonal,
    then column-advancing, then row-advancing steps.  Inputs longer than
    10 samples are rejected because the path count grows exponentially.
    """
    va = _checked_values(a)
    vb = _checked_values(b)
    m, n = va.shape[0], vb.shape[0]
    if m > _BRUTE_FORCE_LIMIT or n > _BRUTE_FORCE_LIMIT:
        raise InstanceTooLarge(
            f"brute force limited to series of length <= {_BRUTE_FORCE_LIMIT}"
        )
    cost = np.abs(va[:, None] - vb[None, :])

    best_key = None
    best_path = None
    ranks = []  # backtracking-preference rank of each step taken so far
    trail = [(0, 0)]

    def walk(i, j, weight):
        nonlocal best_key, best_path
        weight = weight + cost[i, j]
        if i == m - 1 and j == n - 1:
            key = (weight, tuple(reversed(ranks)))
            if best_key is None or key < best_key:
                best_key = key
                best_path = tuple(trail)
            return
        for di, dj, direction in ((1, 1, DIAG), (0, 1, RIGHT), (1, 0, UP)):
            ni, nj = i + di, j + dj
            if ni < m and nj < n:
                ranks.append(_BACKTRACK_RANK[direction])
                trail.append((ni, nj))
                walk(ni, nj, weight)
                trail.pop()
                ranks.pop()

    walk(0, 0, 0.0)
    return DtwResult(float(best_key[0]), WarpingPath(best_path), m * n)


def normalized_distance(result: DtwResult) -> float:
    """Alignment distance divided by the warping-path length."""
    if result.infeasible:
        raise InfeasibleResult("cannot normalize an infeasible alignment")
    return result.distance / len(result.path)
