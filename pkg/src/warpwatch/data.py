"""Dataset CSV ingestion and writing.

One series per row: ``id,label,v1,v2,...`` with label ``normal``,
``anomalous`` or ``?`` for unlabeled.  Rows may have different lengths; the
alignment engine copes with unequal series.
"""

from __future__ import annotations

import csv
from pathlib import Path
from typing import Iterable, List, Union

from .dtw import ANOMALOUS, NORMAL, TimeSeries
from .errors import MalformedRow, UnknownLabelToken

_LABEL_TOKENS = {NORMAL: NORMAL, ANOMALOUS: ANOMALOUS, "?": None}


def _parse_rows(rows, origin: str) -> List[TimeSeries]:
    series = []
    for lineno, row in enumerate(rows, start=1):
        if not row or all(not field.strip() for field in row):
            continue
        if len(row) < 3:
            raise MalformedRow(
                f"{origin} line {lineno}: expected id,label and at least one sample"
            )
        sid = row[0].strip()
        token = row[1].strip()
        if token not in _LABEL_TOKENS:
            raise UnknownLabelToken(f"{origin} line {lineno}: unknown label {token!r}")
        try:
            values = [float(field) for field in row[2:]]
        except ValueError as exc:
            raise MalformedRow(f"{origin} line {lineno}: {exc}") from exc
        series.append(TimeSeries(sid, values, label=_LABEL_TOKENS[token]))
    return series


def ingest_csv(source: Union[str, Path, Iterable[str]]) -> List[TimeSeries]:
    """Parse a dataset CSV from a path or an open text stream."""
    if hasattr(source, "read") or hasattr(source, "__next__"):
        return _parse_rows(csv.reader(source), "<stream>")
    path = Path(source)
    with path.open(newline="", encoding="utf-8") as fh:
        return _parse_rows(csv.reader(fh), str(path))


def write_csv(target: Union[str, Path], series: Iterable[TimeSeries]):
    """Write series in the ingestion format; unlabeled rows get ``?``."""
    with Path(target).open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        for s in series:
            label = s.label if s.label is not None else "?"
            writer.writerow([s.id, label, *(repr(float(v)) for v in s.values)])
