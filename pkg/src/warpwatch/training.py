"""Build normal models from labeled-normal training series."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence

import numpy as np

from .detector import edtwa_score
from .dtw import NORMAL, TimeSeries, dtw
from .errors import EmptyGroup, EmptyTrainingSet
from .model import NormalModel, build_matrix, build_thresholds, derive_mask


@dataclass
class TrainingSet:
    """Normal-labeled series, optionally partitioned into pattern groups."""

    series: List[TimeSeries]
    partition: Optional[Dict[str, str]] = None  # series id -> group name

    def __post_init__(self):
        if not self.series:
            raise EmptyTrainingSet("training set has no series")
        for s in self.series:
            if len(s) == 0:
                raise ValueError(f"training series {s.id!r} is empty")
            if s.label != NORMAL:
                raise ValueError(
                    f"training series {s.id!r} must be labeled normal, got {s.label!r}"
                )
        if self.partition is not None:
            for s in self.series:
                if s.id not in self.partition:
                    raise ValueError(f"series {s.id!r} missing from partition")

    def groups(self) -> Dict[str, List[TimeSeries]]:
        """Pattern groups in first-appearance order; one group when unpartitioned."""
        if self.partition is None:
            return {"default": list(self.series)}
        out: Dict[str, List[TimeSeries]] = {}
        for s in self.series:
            out.setdefault(self.partition[s.id], []).append(s)
        return out


def select_representative(group: Sequence[TimeSeries]) -> TimeSeries:
    """Medoid of the group under alignment distance; id breaks ties."""
    members = list(group)
    if not members:
        raise EmptyGroup("cannot pick a representative from an empty group")
    if len(members) == 1:
        return members[0]
    k = len(members)
    dist = np.zeros((k, k))
    for i in range(k):
        for j in range(i + 1, k):
            dist[i, j] = dist[j, i] = dtw(members[i], members[j]).distance
    totals = dist.sum(axis=1)
    best = min(range(k), key=lambda i: (totals[i], members[i].id))
    return members[best]


def train(
    training: TrainingSet,
    representatives: Optional[Dict[str, TimeSeries]] = None,
    window: int = 5,
    aggregator: str = "min",
    threshold_mode: str = "min_supp_over_count",
    score_threshold: Optional[float] = None,
) -> List[NormalModel]:
    """One model per pattern group.

    For each group the representative (expert-provided or medoid) is aligned
    unconstrained against every member; the resulting paths populate the
    counter matrix, mask and threshold tensor.  Unless an expert threshold is
    given, the score threshold is the minimum score the members themselves
    achieve under the finished model.
    """
    models = []
    for name, members in training.groups().items():
        rep = None
        if representatives is not None:
            rep = representatives.get(name)
        if rep is None:
            rep = select_representative(members)
        rep = TimeSeries(rep.id, rep.values, label=NORMAL)
        paths = [dtw(rep, member).path for member in members]
        dims = (len(rep), max(len(member) for member in members))
        matrix = build_matrix(paths, dims)
        model = NormalModel(
            representative=rep,
            matrix=matrix,
            mask=derive_mask(matrix),
            thresholds=build_thresholds(paths, matrix, window, aggregator, threshold_mode),
            window=window,
            score_threshold=0.0,
            aggregator=aggregator,
            threshold_mode=threshold_mode,
            training_paths=list(paths),
            training_scores=[],
            training_count=len(members),
        )
        scores = [edtwa_score(member, model).score for member in members]
        model.training_scores = scores
        model.score_threshold = (
            float(score_threshold) if score_threshold is not None else min(scores)
        )
        models.append(model)
    return models


@dataclass(frozen=True)
class HeatmapSummary:
    """Normalized traversal-count grid plus a diagonal-concentration scalar."""

    grid: np.ndarray  # (m, n) in [0, 1]
    band_fraction: float


def validate_model_visual(model: NormalModel) -> HeatmapSummary:
    """Heatmap view of the counter matrix for eyeballing model health.

    ``band_fraction`` is the share of total path mass lying within a diagonal
    band of half-width ``model.window``; values near 1 mean the training data
    follows one behaviour, markedly lower values suggest mixed behaviours
    that should be split into separate patterns.
    """
    counts = model.matrix.sum(axis=2).astype(np.float64)
    total = counts.sum()
    peak = counts.max()
    grid = counts / peak if peak > 0 else counts
    m, n = counts.shape
    cols = np.arange(n)
    centers = cols * ((m - 1) / (n - 1)) if n > 1 else np.zeros(1)
    rows = np.arange(m)[:, None]
    in_band = np.abs(rows - centers[None, :]) <= model.window
    band_fraction = float(counts[in_band].sum() / total) if total > 0 else 1.0
    return HeatmapSummary(grid=grid, band_fraction=band_fraction)
