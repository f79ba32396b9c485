"""Normal-behaviour model built from training warping paths.

The model pairs a representative series with a lattice of per-cell direction
counters: for every cell, how many training paths arrived there moving right,
diagonally, or up.  From those counters we derive the binary constraint mask
(cells some training path visited) and a per-cell, per-direction threshold
tensor holding the weakest support any training path part exhibited there.

Expert feedback updates the counters in place: confirmed-normal paths are
added, confirmed-anomalous paths subtracted with counters clamped at zero.
The training path multiset is retained so thresholds for cells touched by an
update can be recomputed; untouched cells keep their previous values.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterable, List, Sequence

import numpy as np

from .dtw import DIAG, NORMAL, RIGHT, UP, TimeSeries, WarpingPath
from .errors import (
    MalformedDocument,
    PathOutOfBounds,
    SchemaVersionMismatch,
    WindowTooLarge,
)

SCHEMA_VERSION = 1

AGGREGATORS = ("min", "max")
THRESHOLD_MODES = ("min_supp_over_count", "min_rsupp_over_count")


def step_direction(path: WarpingPath, i: int) -> int:
    """Direction slot (RIGHT/DIAG/UP) of the step arriving at ``path[i]``."""
    if i < 1 or i >= len(path):
        raise IndexError(f"step index {i} has no predecessor in path of length {len(path)}")
    dr = path[i][0] - path[i - 1][0]
    dc = path[i][1] - path[i - 1][1]
    if dr == 0:
        return RIGHT
    if dc == 0:
        return UP
    return DIAG


def encode_step(path: WarpingPath, i: int):
    """One-hot (right, diag, up) vector for the step arriving at ``path[i]``."""
    vec = [0, 0, 0]
    vec[step_direction(path, i)] = 1
    return tuple(vec)


def _check_path_fits(path, m: int, n: int):
    r, c = path[-1]
    if r >= m or c >= n:
        raise PathOutOfBounds(
            f"path reaches ({r}, {c}) outside matrix dims ({m}, {n})"
        )


def build_matrix(paths: Iterable[WarpingPath], dims) -> np.ndarray:
    """Accumulate step-direction counters of ``paths`` into an (m, n, 3) grid."""
    m, n = dims
    matrix = np.zeros((m, n, 3), dtype=np.int64)
    for path in paths:
        _check_path_fits(path, m, n)
        for i in range(1, len(path)):
            r, c = path[i]
            matrix[r, c, step_direction(path, i)] += 1
    return matrix


def count_paths(matrix: np.ndarray, pos) -> int:
    """Number of training paths passing through ``pos``: sum of its counters."""
    r, c = pos
    if not (0 <= r < matrix.shape[0] and 0 <= c < matrix.shape[1]):
        raise IndexError(f"position ({r}, {c}) outside matrix dims {matrix.shape[:2]}")
    return int(matrix[r, c].sum())


def derive_mask(matrix: np.ndarray) -> np.ndarray:
    """Binary mask of cells any training path visited; the start is always in."""
    mask = (matrix.sum(axis=2) > 0).astype(np.uint8)
    mask[0, 0] = 1
    return mask


def _step_support(path, j: int, matrix: np.ndarray) -> int:
    r, c = path[j]
    return int(matrix[r, c, step_direction(path, j)])


def _part_support(path, i: int, window: int, matrix: np.ndarray, aggregator: str) -> int:
    """Support of the path part of ``window`` steps ending at step ``i``.

    The window covers the predecessor steps ``i-1 .. max(i-window, 1)``; the
    very first direction-bearing step has no predecessors and falls back to
    its own counter.
    """
    if i == 1:
        return _step_support(path, 1, matrix)
    lo = max(i - window, 1)
    agg = min if aggregator == "min" else max
    return agg(_step_support(path, j, matrix) for j in range(lo, i))


def _threshold_value(min_support: float, count: int, mode: str) -> float:
    if count <= 0 or math.isnan(min_support):
        return math.nan
    denom = count if mode == "min_supp_over_count" else count * count
    return min(1.0, max(0.0, min_support / denom))


def build_thresholds(
    paths: Sequence[WarpingPath],
    matrix: np.ndarray,
    window: int,
    aggregator: str = "min",
    threshold_mode: str = "min_supp_over_count",
) -> np.ndarray:
    """Per-cell, per-direction detection thresholds from training path parts.

    For every (cell, incoming direction) pair the tensor stores the minimum
    part support any training path achieved there, divided by the number of
    paths through the cell.  Pairs no training part ends at are NaN.
    """
    if window <= 1:
        raise ValueError("window must be larger than 1")
    if aggregator not in AGGREGATORS:
        raise ValueError(f"unknown aggregator {aggregator!r}")
    if threshold_mode not in THRESHOLD_MODES:
        raise ValueError(f"unknown threshold mode {threshold_mode!r}")
    paths = list(paths)
    if paths and window >= min(len(p) for p in paths):
        raise WindowTooLarge(
            f"window {window} must be below the shortest path length "
            f"{min(len(p) for p in paths)}"
        )
    m, n, _ = matrix.shape
    thresholds = np.full((m, n, 3), np.nan, dtype=np.float64)
    minima = np.full((m, n, 3), np.nan, dtype=np.float64)
    for path in paths:
        _check_path_fits(path, m, n)
        for i in range(1, len(path)):
            r, c = path[i]
            d = step_direction(path, i)
            s = _part_support(path, i, window, matrix, aggregator)
            if math.isnan(minima[r, c, d]) or s < minima[r, c, d]:
                minima[r, c, d] = s
    for r, c, d in zip(*np.nonzero(~np.isnan(minima))):
        thresholds[r, c, d] = _threshold_value(
            minima[r, c, d], count_paths(matrix, (r, c)), threshold_mode
        )
    return thresholds


@dataclass
class NormalModel:
    """Representative series plus warping statistics and decision thresholds."""

    representative: TimeSeries
    matrix: np.ndarray  # (m, n, 3) int64 direction counters
    mask: np.ndarray  # (m, n) uint8
    thresholds: np.ndarray  # (m, n, 3) float64, NaN where no training part
    window: int
    score_threshold: float
    aggregator: str = "min"
    threshold_mode: str = "min_supp_over_count"
    training_paths: List[WarpingPath] = field(default_factory=list)
    training_scores: List[float] = field(default_factory=list)
    training_count: int = 0

    @property
    def pattern_id(self) -> str:
        return self.representative.id

    @property
    def dims(self):
        return self.matrix.shape[0], self.matrix.shape[1]


def _refresh_touched(model: NormalModel, cells):
    """Recompute mask and threshold entries for the given cells in place."""
    touched = set(cells)
    minima = {cell: [math.nan, math.nan, math.nan] for cell in touched}
    for path in model.training_paths:
        for i in range(1, len(path)):
            cell = path[i]
            if cell not in touched:
                continue
            d = step_direction(path, i)
            s = _part_support(path, i, model.window, model.matrix, model.aggregator)
            if math.isnan(minima[cell][d]) or s < minima[cell][d]:
                minima[cell][d] = s
    for r, c in touched:
        count = count_paths(model.matrix, (r, c))
        model.mask[r, c] = 1 if count > 0 else 0
        for d in range(3):
            model.thresholds[r, c, d] = _threshold_value(
                minima[(r, c)][d], count, model.threshold_mode
            )
    model.mask[0, 0] = 1


def update_normal(model: NormalModel, path: WarpingPath) -> NormalModel:
    """Fold a confirmed-normal alignment into the model counters in place."""
    m, n = model.dims
    _check_path_fits(path, m, n)
    for i in range(1, len(path)):
        r, c = path[i]
        model.matrix[r, c, step_direction(path, i)] += 1
    model.training_paths.append(path)
    model.training_count += 1
    _refresh_touched(model, path)
    return model


def update_anomalous(model: NormalModel, path: WarpingPath) -> NormalModel:
    """Subtract a confirmed-anomalous alignment, clamping counters at zero."""
    m, n = model.dims
    _check_path_fits(path, m, n)
    for i in range(1, len(path)):
        r, c = path[i]
        d = step_direction(path, i)
        if model.matrix[r, c, d] > 0:
            model.matrix[r, c, d] -= 1
    # drop the most recently added copy so add-then-subtract round-trips
    for k in range(len(model.training_paths) - 1, -1, -1):
        if model.training_paths[k] == path:
            del model.training_paths[k]
            model.training_count -= 1
            break
    _refresh_touched(model, path)
    return model


def _nan_to_none(tensor: np.ndarray):
    out = tensor.tolist()
    for row in out:
        for cell in row:
            for d in range(3):
                if math.isnan(cell[d]):
                    cell[d] = None
    return out


def serialize_model(model: NormalModel) -> dict:
    """Versioned JSON-ready document for one model; exact integer counters."""
    m, n = model.dims
    return {
        "version": SCHEMA_VERSION,
        "representative": {
            "id": model.representative.id,
            "values": [float(v) for v in model.representative.values],
        },
        "window": int(model.window),
        "aggregator": model.aggregator,
        "threshold_mode": model.threshold_mode,
        "score_threshold": float(model.score_threshold),
        "matrix": {
            "rows": m,
            "cols": n,
            "cells": model.matrix.tolist(),
        },
        "mask": model.mask.tolist(),
        "thresholds": _nan_to_none(model.thresholds),
        "training_paths": [[[r, c] for r, c in p] for p in model.training_paths],
        "training_scores": [float(s) for s in model.training_scores],
        "training_count": int(model.training_count),
    }


def deserialize_model(document: dict) -> NormalModel:
    """Rebuild a model from its document; strict about version and shapes."""
    if not isinstance(document, dict):
        raise MalformedDocument("model document must be a JSON object")
    version = document.get("version")
    if version != SCHEMA_VERSION:
        raise SchemaVersionMismatch(f"unsupported model document version {version!r}")
    try:
        rep = document["representative"]
        representative = TimeSeries(str(rep["id"]), rep["values"], label=NORMAL)
        spec = document["matrix"]
        m, n = int(spec["rows"]), int(spec["cols"])
        matrix = np.asarray(spec["cells"], dtype=np.int64)
        mask = np.asarray(document["mask"], dtype=np.uint8)
        thresholds = np.asarray(
            [
                [[math.nan if v is None else float(v) for v in cell] for cell in row]
                for row in document["thresholds"]
            ],
            dtype=np.float64,
        )
        model = NormalModel(
            representative=representative,
            matrix=matrix,
            mask=mask,
            thresholds=thresholds,
            window=int(document["window"]),
            score_threshold=float(document["score_threshold"]),
            aggregator=str(document["aggregator"]),
            threshold_mode=str(document["threshold_mode"]),
            training_paths=[
                WarpingPath(tuple((r, c) for r, c in p))
                for p in document["training_paths"]
            ],
            training_scores=[float(s) for s in document["training_scores"]],
            training_count=int(document["training_count"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedDocument(f"bad model document: {exc}") from exc
    if matrix.shape != (m, n, 3) or mask.shape != (m, n) or thresholds.shape != (m, n, 3):
        raise MalformedDocument("matrix, mask and thresholds shapes disagree")
    if model.aggregator not in AGGREGATORS:
        raise MalformedDocument(f"unknown aggregator {model.aggregator!r}")
    if model.threshold_mode not in THRESHOLD_MODES:
        raise MalformedDocument(f"unknown threshold mode {model.threshold_mode!r}")
    return model


def serialize_models(models: Sequence[NormalModel]) -> dict:
    """Document holding one or more patterns; single models keep the flat form."""
    models = list(models)
    if len(models) == 1:
        return serialize_model(models[0])
    return {
        "version": SCHEMA_VERSION,
        "patterns": [serialize_model(m) for m in models],
    }


def deserialize_models(document: dict) -> List[NormalModel]:
    if isinstance(document, dict) and "patterns" in document:
        if document.get("version") != SCHEMA_VERSION:
            raise SchemaVersionMismatch(
                f"unsupported model document version {document.get('version')!r}"
            )
        patterns = document["patterns"]
        if not isinstance(patterns, list) or not patterns:
            raise MalformedDocument("patterns must be a non-empty list")
        return [deserialize_model(p) for p in patterns]
    return [deserialize_model(document)]


def save_models(path, models: Sequence[NormalModel]):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(serialize_models(models), fh)


def load_models(path) -> List[NormalModel]:
    with open(path, encoding="utf-8") as fh:
        return deserialize_models(json.load(fh))


def models_equal(a: NormalModel, b: NormalModel) -> bool:
    """Field-for-field equality, treating NaN threshold entries as equal."""
    return (
        a.representative.id == b.representative.id
        and np.array_equal(a.representative.values, b.representative.values)
        and a.window == b.window
        and a.score_threshold == b.score_threshold
        and a.aggregator == b.aggregator
        and a.threshold_mode == b.threshold_mode
        and np.array_equal(a.matrix, b.matrix)
        and np.array_equal(a.mask, b.mask)
        and np.array_equal(a.thresholds, b.thresholds, equal_nan=True)
        and a.training_paths == b.training_paths
        and a.training_scores == b.training_scores
        and a.training_count == b.training_count
    )
