"""Shared builders for test models and toy datasets."""

import numpy as np

from warpwatch.dtw import NORMAL, TimeSeries, WarpingPath
from warpwatch.model import (
    NormalModel,
    build_matrix,
    build_thresholds,
    derive_mask,
)


def make_model(
    paths, dims, window=2, aggregator="min", mode="min_supp_over_count", rep_id="ref"
):
    """Model assembled straight from explicit paths, zeros as representative."""
    paths = [WarpingPath(tuple(p)) for p in paths]
    matrix = build_matrix(paths, dims)
    return NormalModel(
        representative=TimeSeries(rep_id, np.zeros(dims[0]), label=NORMAL),
        matrix=matrix,
        mask=derive_mask(matrix),
        thresholds=build_thresholds(paths, matrix, window, aggregator, mode),
        window=window,
        score_threshold=1.0,
        aggregator=aggregator,
        threshold_mode=mode,
        training_paths=list(paths),
        training_scores=[1.0] * len(paths),
        training_count=len(paths),
    )


def warped_sine(length, rng, noise=0.02, warp=0.1, label=NORMAL, sid="s"):
    """One smoothly time-distorted sine period with additive noise."""
    exponent = rng.uniform(1.0 - warp, 1.0 + warp)
    pos = np.linspace(0.0, 1.0, length) ** exponent
    values = np.sin(2 * np.pi * pos) + noise * rng.normal(size=length)
    return TimeSeries(sid, values, label=label)


def toy_training_series(k=3, length=40, seed=0, noise=0.02, warp=0.1):
    rng = np.random.default_rng(seed)
    return [
        warped_sine(length, rng, noise=noise, warp=warp, sid=f"t{i}")
        for i in range(k)
    ]
