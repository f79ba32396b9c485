"""Baseline comparison method, metrics, and the simulated-expert loop.

Anomalous is the positive class throughout.  The distance-threshold baseline
classifies a query anomalous when its normalized alignment distance against
the representative exceeds the largest distance seen in training.
"""

from __future__ import annotations

import copy
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence, Tuple

from .detector import UNCERTAIN, Band, best_outcome, edtwa_score
from .dtw import ANOMALOUS, NORMAL, TimeSeries, dtw, normalized_distance
from .errors import EmptyTrainingSet, InvalidBand, UnlabeledSeries
from .model import NormalModel, update_anomalous, update_normal


@dataclass(frozen=True)
class ConfusionMatrix:
    tn: int
    fp: int
    fn: int
    tp: int

    @property
    def total(self) -> int:
        return self.tn + self.fp + self.fn + self.tp

    @property
    def f1(self) -> float:
        denominator = 2 * self.tp + self.fp + self.fn
        return 2 * self.tp / denominator if denominator else 0.0

    @property
    def accuracy(self) -> float:
        return (self.tp + self.tn) / self.total if self.total else 0.0


@dataclass(frozen=True)
class BaselineModel:
    representative: TimeSeries
    threshold: float  # largest normalized training distance


def train_baseline(
    training: Iterable[TimeSeries], representative: TimeSeries
) -> BaselineModel:
    """Distance-threshold baseline: remember the worst training alignment."""
    distances = [
        normalized_distance(dtw(representative, series)) for series in training
    ]
    if not distances:
        raise EmptyTrainingSet("baseline needs at least one training series")
    return BaselineModel(representative, max(distances))


def detect_baseline(query: TimeSeries, model: BaselineModel) -> str:
    """Anomalous only when the normalized distance strictly exceeds the threshold."""
    distance = normalized_distance(dtw(model.representative, query))
    return ANOMALOUS if distance > model.threshold else NORMAL


def baseline_classifier(model: BaselineModel) -> Callable[[TimeSeries], str]:
    return lambda series: detect_baseline(series, model)


def edtwa_classifier(models: Sequence[NormalModel]) -> Callable[[TimeSeries], str]:
    """Two-class closure over the best-matching pattern (no uncertainty band)."""
    return lambda series: best_outcome(series, models).classification


def evaluate(
    classifier: Callable[[TimeSeries], str], test_set: Iterable[TimeSeries]
) -> Tuple[ConfusionMatrix, float, float]:
    """Confusion counts, F1 and accuracy of ``classifier`` on labeled series."""
    tn = fp = fn = tp = 0
    for series in test_set:
        if series.label not in (NORMAL, ANOMALOUS):
            raise UnlabeledSeries(f"series {series.id!r} has no ground-truth label")
        decision = classifier(series)
        if decision not in (NORMAL, ANOMALOUS):
            raise ValueError(f"classifier returned unexpected label {decision!r}")
        if series.label == ANOMALOUS:
            if decision == ANOMALOUS:
                tp += 1
            else:
                fn += 1
        else:
            if decision == ANOMALOUS:
                fp += 1
            else:
                tn += 1
    matrix = ConfusionMatrix(tn=tn, fp=fp, fn=fn, tp=tp)
    return matrix, matrix.f1, matrix.accuracy


@dataclass(frozen=True)
class HitlReport:
    queried_count: int
    f1_before: float
    f1_after: float
    accuracy_before: float
    accuracy_after: float
    confusion_before: ConfusionMatrix
    confusion_after: ConfusionMatrix


def simulate_hitl(
    model: NormalModel, stream: Sequence[TimeSeries], band: Band
) -> HitlReport:
    """Replay ``stream`` with a simulated expert answering in-band queries.

    Detections falling inside the uncertainty band are decided by their
    ground-truth label and folded into a working copy of the model before the
    next stream element; everything else is decided by the model of the
    moment.  The "before" metrics re-run the same stream against the frozen
    initial model with no queries.  The caller's model is left untouched.
    """
    low, high = float(band[0]), float(band[1])
    if low > high:
        raise InvalidBand(f"band lower bound {low} exceeds upper bound {high}")
    stream = list(stream)
    for series in stream:
        if series.label not in (NORMAL, ANOMALOUS):
            raise UnlabeledSeries(f"series {series.id!r} has no ground-truth label")

    confusion_before, f1_before, accuracy_before = evaluate(
        edtwa_classifier([model]), stream
    )

    live = copy.deepcopy(model)
    queried = 0
    tn = fp = fn = tp = 0
    for series in stream:
        outcome = edtwa_score(series, live, band=(low, high))
        if outcome.classification == UNCERTAIN:
            queried += 1
            decision = series.label
            if series.label == NORMAL:
                update_normal(live, outcome.path)
            else:
                update_anomalous(live, outcome.path)
        else:
            decision = outcome.classification
        if series.label == ANOMALOUS:
            if decision == ANOMALOUS:
                tp += 1
            else:
                fn += 1
        else:
            if decision == ANOMALOUS:
                fp += 1
            else:
                tn += 1
    confusion_after = ConfusionMatrix(tn=tn, fp=fp, fn=fn, tp=tp)
    return HitlReport(
        queried_count=queried,
        f1_before=f1_before,
        f1_after=confusion_after.f1,
        accuracy_before=accuracy_before,
        accuracy_after=confusion_after.accuracy,
        confusion_before=confusion_before,
        confusion_after=confusion_after,
    )
