"""HTTP review service: detection, uncertain-sample queue, expert feedback.

Readers always work against an immutable snapshot: applying feedback deep
copies the current models, mutates the copy, and swaps it in under a lock
with a bumped version, so a detection in flight never sees a half-applied
update.  Every applied feedback event is appended to a JSON-lines log;
replaying the log over the initial snapshot reproduces the live model.
"""

from __future__ import annotations

import copy
import itertools
import json
import math
import threading
import time
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel

from .detector import UNCERTAIN, DetectionOutcome, best_outcome
from .dtw import ANOMALOUS, NORMAL, TimeSeries, WarpingPath
from .model import (
    NormalModel,
    deserialize_models,
    serialize_models,
    update_anomalous,
    update_normal,
)
from .training import validate_model_visual

PENDING = "pending"
LABELED_NORMAL = "labeled_normal"
LABELED_ANOMALOUS = "labeled_anomalous"
EXPIRED = "expired"

MODEL_FILE = "initial_model.json"
FEEDBACK_LOG = "feedback.jsonl"


@dataclass
class ReviewItem:
    item_id: str
    series: TimeSeries
    outcome: DetectionOutcome
    queued_at: float
    status: str = PENDING

    def summary(self) -> dict:
        return {
            "item_id": self.item_id,
            "series_id": self.series.id,
            "score": self.outcome.score,
            "classification": self.outcome.classification,
            "pattern_id": self.outcome.pattern_id,
            "queued_at": self.queued_at,
            "status": self.status,
        }


def apply_feedback(models: List[NormalModel], pattern_id: str, label: str, path) -> None:
    """Route one expert verdict to the pattern that produced the alignment."""
    path = path if isinstance(path, WarpingPath) else WarpingPath(tuple(tuple(p) for p in path))
    for model in models:
        if model.pattern_id == pattern_id:
            if label == NORMAL:
                update_normal(model, path)
            else:
                update_anomalous(model, path)
            return
    raise KeyError(f"no pattern {pattern_id!r} in model set")


def replay_feedback(initial: List[NormalModel], events) -> List[NormalModel]:
    """Reproduce the live models from the initial snapshot plus the log."""
    models = copy.deepcopy(initial)
    for event in events:
        apply_feedback(models, event["pattern_id"], event["label"], event["path"])
    return models


def replay_log(data_dir) -> List[NormalModel]:
    """Rebuild the current models from the files persisted in ``data_dir``."""
    root = Path(data_dir)
    with (root / MODEL_FILE).open(encoding="utf-8") as fh:
        initial = deserialize_models(json.load(fh))
    events = []
    log = root / FEEDBACK_LOG
    if log.exists():
        with log.open(encoding="utf-8") as fh:
            events = [json.loads(line) for line in fh if line.strip()]
    return replay_feedback(initial, events)


class ServiceState:
    """Model snapshot, review queue, feedback log, and their lock discipline."""

    def __init__(
        self,
        models: Optional[List[NormalModel]] = None,
        band=(0.25, 0.30),
        data_dir=None,
        ttl: float = 24 * 3600.0,
        clock=time.time,
    ):
        self._lock = threading.Lock()
        self.models: List[NormalModel] = list(models) if models else []
        self.version = 1
        self.band = (float(band[0]), float(band[1]))
        self.ttl = float(ttl)
        self.clock = clock
        self.items: dict = {}
        self.series_store: dict = {}
        self.feedback_events: List[dict] = []
        self._item_counter = itertools.count(1)
        self._series_counter = itertools.count(1)
        self.data_dir = Path(data_dir) if data_dir is not None else None
        if self.data_dir is not None:
            self.data_dir.mkdir(parents=True, exist_ok=True)
            if self.models:
                self._persist_initial()

    # -- persistence ------------------------------------------------------

    def _persist_initial(self):
        if self.data_dir is None:
            return
        with (self.data_dir / MODEL_FILE).open("w", encoding="utf-8") as fh:
            json.dump(serialize_models(self.models), fh)
        (self.data_dir / FEEDBACK_LOG).write_text("", encoding="utf-8")

    def _persist_event(self, event: dict):
        if self.data_dir is None:
            return
        with (self.data_dir / FEEDBACK_LOG).open("a", encoding="utf-8") as fh:
            fh.write(json.dumps(event) + "\n")

    # -- queue hygiene ----------------------------------------------------

    def _expire_stale(self):
        now = self.clock()
        for item in self.items.values():
            if item.status == PENDING and now - item.queued_at > self.ttl:
                item.status = EXPIRED

    # -- operations -------------------------------------------------------

    def detect(self, series: TimeSeries) -> dict:
        models = self.models  # snapshot reference for the whole call
        version = self.version
        if not models:
            raise HTTPException(status_code=409, detail="no model loaded")
        outcome = best_outcome(series, models, band=self.band)
        self.series_store[series.id] = (series, outcome)
        response = {
            "series_id": series.id,
            "score": outcome.score,
            "classification": outcome.classification,
            "pattern_id": outcome.pattern_id,
            "infeasible": outcome.infeasible,
            "model_version": version,
        }
        if outcome.classification == UNCERTAIN:
            item = ReviewItem(
                item_id=f"item-{next(self._item_counter):05d}",
                series=series,
                outcome=outcome,
                queued_at=self.clock(),
            )
            self.items[item.item_id] = item
            response["item_id"] = item.item_id
        return response, outcome

    def feedback(self, item_id: str, label: str) -> int:
        with self._lock:
            self._expire_stale()
            item = self.items.get(item_id)
            if item is None:
                raise HTTPException(status_code=404, detail=f"unknown item {item_id!r}")
            if item.status != PENDING:
                raise HTTPException(
                    status_code=409, detail=f"item {item_id!r} is {item.status}"
                )
            models = copy.deepcopy(self.models)
            apply_feedback(models, item.outcome.pattern_id, label, item.outcome.path)
            event = {
                "item_id": item_id,
                "series_id": item.series.id,
                "pattern_id": item.outcome.pattern_id,
                "label": label,
                "path": [[r, c] for r, c in item.outcome.path],
                "ts": self.clock(),
            }
            item.status = LABELED_NORMAL if label == NORMAL else LABELED_ANOMALOUS
            self.feedback_events.append(event)
            self._persist_event(event)
            self.models = models
            self.version += 1
            return self.version

    def load_models(self, models: List[NormalModel]) -> int:
        with self._lock:
            for item in self.items.values():
                if item.status == PENDING:
                    item.status = EXPIRED
            self.models = list(models)
            self.version += 1
            self.feedback_events = []
            self._persist_initial()
            return self.version

    def next_series_id(self) -> str:
        return f"q-{next(self._series_counter):05d}"


class SeriesBody(BaseModel):
    id: Optional[str] = None
    values: List[float]
    label: Optional[str] = None


class DetectBody(BaseModel):
    series: SeriesBody


class FeedbackBody(BaseModel):
    item_id: str
    label: str


def create_app(state: ServiceState) -> FastAPI:
    app = FastAPI(title="warpwatch", version="0.1.0")
    app.state.warpwatch = state

    @app.post("/detect")
    def detect(body: DetectBody, explain: int = 0):
        values = body.series.values
        if not values or not all(math.isfinite(v) for v in values):
            raise HTTPException(status_code=400, detail="series values must be non-empty and finite")
        sid = body.series.id or state.next_series_id()
        series = TimeSeries(sid, values, label=body.series.label)
        response, outcome = state.detect(series)
        if explain:
            response["per_step_flags"] = list(outcome.per_step_flags)
            response["path"] = [[r, c] for r, c in outcome.path] if outcome.path else None
        return response

    @app.get("/queue")
    def queue(status: str = PENDING, limit: int = 50, offset: int = 0):
        state._expire_stale()
        selected = [item for item in state.items.values() if item.status == status]
        selected.sort(key=lambda item: item.queued_at)
        window = selected[offset : offset + limit]
        return {
            "total": len(selected),
            "items": [item.summary() for item in window],
            "model_version": state.version,
        }

    @app.post("/feedback")
    def feedback(body: FeedbackBody):
        if body.label not in (NORMAL, ANOMALOUS):
            raise HTTPException(status_code=400, detail=f"label must be normal or anomalous")
        version = state.feedback(body.item_id, body.label)
        return {"model_version": version}

    @app.get("/model")
    def get_model():
        if not state.models:
            raise HTTPException(status_code=404, detail="no model loaded")
        document = serialize_models(state.models)
        document["model_version"] = state.version
        return document

    @app.post("/model")
    def post_model(document: dict):
        from .errors import MalformedDocument, SchemaVersionMismatch

        try:
            models = deserialize_models(document)
        except (MalformedDocument, SchemaVersionMismatch) as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        version = state.load_models(models)
        return {"model_version": version}

    @app.get("/model/heatmap")
    def heatmap():
        if not state.models:
            raise HTTPException(status_code=404, detail="no model loaded")
        patterns = []
        for model in state.models:
            summary = validate_model_visual(model)
            patterns.append(
                {
                    "pattern_id": model.pattern_id,
                    "rows": summary.grid.shape[0],
                    "cols": summary.grid.shape[1],
                    "values": summary.grid.tolist(),
                    "band_fraction": summary.band_fraction,
                }
            )
        return {"model_version": state.version, "patterns": patterns}

    @app.get("/series/{series_id}")
    def get_series(series_id: str):
        stored = state.series_store.get(series_id)
        if stored is None:
            raise HTTPException(status_code=404, detail=f"unknown series {series_id!r}")
        series, outcome = stored
        return {
            "series": {
                "id": series.id,
                "values": [float(v) for v in series.values],
                "label": series.label,
            },
            "outcome": {
                "score": outcome.score,
                "classification": outcome.classification,
                "pattern_id": outcome.pattern_id,
                "infeasible": outcome.infeasible,
                "per_step_flags": list(outcome.per_step_flags),
                "path": [[r, c] for r, c in outcome.path] if outcome.path else None,
            },
        }

    return app
