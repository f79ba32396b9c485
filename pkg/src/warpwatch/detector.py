"""Score unseen series against a normal model.

A query is aligned to the representative under the model's constraint mask.
Every direction-bearing alignment step is then tested: the step's sliding
window of predecessors must be at least as supported by training paths as the
weakest training part that ended at the same cell in the same direction.  The
normality score is the detected fraction of steps, 1.0 meaning the alignment
is indistinguishable from training behaviour and 0.0 meaning nothing about it
was seen before.  An alignment the mask rules out entirely scores 0 outright.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Tuple

from .dtw import ANOMALOUS, NORMAL, TimeSeries, WarpingPath, dtw
from .errors import DivisionByZeroCount, EmptyTrainingSet, InvalidBand
from .model import NormalModel, _part_support, count_paths, step_direction

UNCERTAIN = "uncertain"

Band = Tuple[float, float]


@dataclass(frozen=True)
class DetectionOutcome:
    """Score, three-way classification and per-step explanation for one query."""

    score: float
    classification: str
    per_step_flags: tuple  # one 0/1 flag per direction-bearing path step
    path: Optional[WarpingPath]
    infeasible: bool
    pattern_id: Optional[str] = None


def supp(path, i: int, window: int, matrix, aggregator: str = "min") -> int:
    """Training support of the path part of ``window`` steps ending at step ``i``."""
    if i < 1 or i >= len(path):
        raise IndexError(f"step index {i} out of range for path of length {len(path)}")
    return _part_support(path, i, window, matrix, aggregator)


def rsupp(path, i: int, window: int, matrix, aggregator: str = "min") -> float:
    """Part support relative to the number of training paths at the end cell."""
    denominator = count_paths(matrix, path[i])
    if denominator == 0:
        raise DivisionByZeroCount(
            f"no training path passes through cell {tuple(path[i])}"
        )
    return supp(path, i, window, matrix, aggregator) / denominator


def detect(path, i: int, model: NormalModel, window: Optional[int] = None) -> int:
    """1 iff step ``i`` lands on-model with relative support meeting its threshold."""
    if window is None:
        window = model.window
    r, c = path[i]
    count = count_paths(model.matrix, (r, c))
    if count == 0:
        return 0
    theta = model.thresholds[r, c, step_direction(path, i)]
    if math.isnan(theta):
        return 0
    relative = _part_support(path, i, window, model.matrix, model.aggregator) / count
    return 1 if relative >= theta else 0


def _check_band(band: Optional[Band]):
    if band is None:
        return None
    low, high = float(band[0]), float(band[1])
    if low > high:
        raise InvalidBand(f"band lower bound {low} exceeds upper bound {high}")
    return low, high


def classify(score: float, score_threshold: float, band: Optional[Band] = None) -> str:
    """Three-way decision; a zero-width band defers nothing to the expert."""
    checked = _check_band(band)
    if checked is not None:
        low, high = checked
        if low < high and low <= score <= high:
            return UNCERTAIN
    return NORMAL if score >= score_threshold else ANOMALOUS


def edtwa_score(
    query: TimeSeries, model: NormalModel, band: Optional[Band] = None
) -> DetectionOutcome:
    """Mask-constrained alignment of ``query`` scored step by step.

    Returns the fraction of alignment steps whose path parts look like
    training behaviour, in [0, 1].  When the mask admits no alignment at all
    the outcome is infeasible: score 0, classified anomalous regardless of
    any uncertainty band.
    """
    _check_band(band)
    result = dtw(model.representative, query, mask=model.mask)
    if result.infeasible:
        return DetectionOutcome(0.0, ANOMALOUS, (), None, True, model.pattern_id)
    path = result.path
    flags = tuple(detect(path, i, model) for i in range(1, len(path)))
    score = sum(flags) / len(flags) if flags else 1.0
    return DetectionOutcome(
        score=score,
        classification=classify(score, model.score_threshold, band),
        per_step_flags=flags,
        path=path,
        infeasible=False,
        pattern_id=model.pattern_id,
    )


def best_outcome(
    query: TimeSeries, models: Sequence[NormalModel], band: Optional[Band] = None
) -> DetectionOutcome:
    """Outcome of the best-matching pattern: the highest feasible score wins."""
    if not models:
        raise ValueError("at least one model is required")
    outcomes = [edtwa_score(query, m, band) for m in models]
    feasible = [o for o in outcomes if not o.infeasible]
    pool = feasible if feasible else outcomes
    return max(pool, key=lambda o: o.score)


def data_driven_threshold(model: NormalModel, training: Iterable[TimeSeries]) -> float:
    """Lowest training-series score, stored on the model as its threshold."""
    series = list(training)
    if not series:
        raise EmptyTrainingSet("cannot derive a threshold from no training series")
    threshold = min(edtwa_score(t, model).score for t in series)
    model.score_threshold = threshold
    return threshold
