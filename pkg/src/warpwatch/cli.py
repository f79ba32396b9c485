"""Command-line front end: train, detect, evaluate, synthesize, simulate, serve."""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import errors
from .data import ingest_csv, write_csv
from .detector import best_outcome
from .evaluation import (
    baseline_classifier,
    edtwa_classifier,
    evaluate,
    simulate_hitl,
    train_baseline,
)
from .model import load_models, save_models
from .synth import SynthConfig, generate_synthetic
from .training import TrainingSet, train, validate_model_visual

PARSE_ERROR = 2
TRAIN_ERROR = 3

_PARSE_FAILURES = (
    errors.MalformedRow,
    errors.UnknownLabelToken,
    errors.InvalidConfig,
    errors.MalformedDocument,
    errors.SchemaVersionMismatch,
    errors.InvalidBand,
    json.JSONDecodeError,
    FileNotFoundError,
)

_TRAIN_FAILURES = (
    errors.WindowTooLarge,
    errors.EmptyTrainingSet,
    errors.EmptyGroup,
    errors.EmptySeries,
    errors.NonFiniteSample,
)


def _fail(code: int, message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _parse_band(text: str):
    try:
        low, high = (float(part) for part in text.split(","))
    except ValueError:
        raise errors.InvalidBand(f"band must be 'low,high', got {text!r}")
    if low > high:
        raise errors.InvalidBand(f"band lower bound {low} exceeds upper bound {high}")
    return low, high


def _load_partition(path):
    partition = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip():
            continue
        parts = [p.strip() for p in line.split(",")]
        if len(parts) != 2:
            raise errors.MalformedRow(f"{path} line {lineno}: expected 'series_id,group'")
        partition[parts[0]] = parts[1]
    return partition


def _cmd_train(args) -> int:
    try:
        series = ingest_csv(args.data)
        partition = _load_partition(args.partition) if args.partition else None
        representatives = None
        if args.representative:
            rep_rows = ingest_csv(args.representative)
            if partition is None:
                if len(rep_rows) != 1:
                    raise errors.MalformedRow(
                        "unpartitioned training takes exactly one representative row"
                    )
                representatives = {"default": rep_rows[0]}
            else:
                representatives = {row.id: row for row in rep_rows}
        training = TrainingSet(series, partition)
    except _PARSE_FAILURES as exc:
        return _fail(PARSE_ERROR, str(exc))
    except ValueError as exc:
        return _fail(PARSE_ERROR, str(exc))
    try:
        models = train(
            training,
            representatives=representatives,
            window=args.window,
            aggregator=args.aggregator,
            threshold_mode=args.threshold_mode,
            score_threshold=args.score_threshold,
        )
    except _TRAIN_FAILURES as exc:
        return _fail(TRAIN_ERROR, str(exc))
    save_models(args.out, models)
    for model in models:
        scores = model.training_scores
        summary = validate_model_visual(model)
        print(
            f"pattern {model.pattern_id}: {model.training_count} series, "
            f"score min={min(scores):.4f} mean={sum(scores) / len(scores):.4f} "
            f"max={max(scores):.4f}, threshold={model.score_threshold:.4f}, "
            f"diagonal_mass={summary.band_fraction:.4f}"
        )
    print(f"wrote {len(models)} pattern(s) to {args.out}")
    return 0


def _cmd_detect(args) -> int:
    try:
        models = load_models(args.model)
        series = ingest_csv(args.data)
        band = _parse_band(args.band) if args.band else None
    except _PARSE_FAILURES as exc:
        return _fail(PARSE_ERROR, str(exc))
    for s in series:
        outcome = best_outcome(s, models, band=band)
        record = {
            "id": s.id,
            "score": outcome.score,
            "classification": outcome.classification,
        }
        if args.explain:
            record["pattern_id"] = outcome.pattern_id
            record["per_step_flags"] = list(outcome.per_step_flags)
        print(json.dumps(record))
    return 0


def _confusion_row(name, matrix, f1, accuracy):
    return {
        "method": name,
        "confusion": {"tn": matrix.tn, "fp": matrix.fp, "fn": matrix.fn, "tp": matrix.tp},
        "f1": f1,
        "accuracy": accuracy,
    }


def _print_rows(rows, fmt):
    if fmt == "json":
        print(json.dumps({"results": rows}, indent=2))
        return
    header = f"{'method':<12} {'tn':>5} {'fp':>5} {'fn':>5} {'tp':>5} {'f1':>8} {'accuracy':>9}"
    print(header)
    print("-" * len(header))
    for row in rows:
        c = row["confusion"]
        print(
            f"{row['method']:<12} {c['tn']:>5} {c['fp']:>5} {c['fn']:>5} {c['tp']:>5} "
            f"{row['f1']:>8.4f} {row['accuracy']:>9.4f}"
        )


def _cmd_eval(args) -> int:
    try:
        test_set = ingest_csv(args.data)
        train_series = ingest_csv(args.train_data) if args.train_data else None
    except _PARSE_FAILURES as exc:
        return _fail(PARSE_ERROR, str(exc))
    if args.sweep_window:
        if train_series is None:
            return _fail(PARSE_ERROR, "--sweep-window requires --train-data")
        try:
            start, stop, step = (int(p) for p in args.sweep_window.split(":"))
        except ValueError:
            return _fail(PARSE_ERROR, f"bad sweep spec {args.sweep_window!r}")
        rows = []
        for window in range(start, stop + 1, step):
            try:
                models = train(TrainingSet(train_series), window=window)
            except _TRAIN_FAILURES as exc:
                return _fail(TRAIN_ERROR, f"window {window}: {exc}")
            matrix, f1, accuracy = evaluate(edtwa_classifier(models), test_set)
            rows.append(_confusion_row(f"window={window}", matrix, f1, accuracy))
        _print_rows(rows, args.format)
        return 0
    try:
        models = load_models(args.model)
    except _PARSE_FAILURES as exc:
        return _fail(PARSE_ERROR, str(exc))
    try:
        matrix, f1, accuracy = evaluate(edtwa_classifier(models), test_set)
    except errors.UnlabeledSeries as exc:
        return _fail(PARSE_ERROR, str(exc))
    rows = [_confusion_row("edtwa", matrix, f1, accuracy)]
    if args.baseline:
        if train_series is None:
            return _fail(PARSE_ERROR, "--baseline requires --train-data")
        try:
            baseline = train_baseline(train_series, models[0].representative)
        except errors.EmptyTrainingSet as exc:
            return _fail(TRAIN_ERROR, str(exc))
        matrix_b, f1_b, accuracy_b = evaluate(baseline_classifier(baseline), test_set)
        rows.append(_confusion_row("dtw_base", matrix_b, f1_b, accuracy_b))
    _print_rows(rows, args.format)
    return 0


def _cmd_synth(args) -> int:
    try:
        config_doc = json.loads(Path(args.config).read_text(encoding="utf-8"))
        if args.seed is not None:
            config_doc["seed"] = args.seed
        config = SynthConfig(**config_doc)
        dataset = generate_synthetic(config)
    except TypeError as exc:
        return _fail(PARSE_ERROR, f"bad synth config: {exc}")
    except _PARSE_FAILURES as exc:
        return _fail(PARSE_ERROR, str(exc))
    write_csv(args.out, dataset)
    print(f"wrote {len(dataset)} series to {args.out}")
    return 0


def _cmd_hitl_sim(args) -> int:
    try:
        models = load_models(args.model)
        stream = ingest_csv(args.data)
        band = _parse_band(args.band)
    except _PARSE_FAILURES as exc:
        return _fail(PARSE_ERROR, str(exc))
    if len(models) != 1:
        return _fail(PARSE_ERROR, "hitl-sim expects a single-pattern model")
    try:
        report = simulate_hitl(models[0], stream, band)
    except (errors.UnlabeledSeries, errors.InvalidBand) as exc:
        return _fail(PARSE_ERROR, str(exc))
    payload = {
        "queried_count": report.queried_count,
        "f1_before": report.f1_before,
        "f1_after": report.f1_after,
        "accuracy_before": report.accuracy_before,
        "accuracy_after": report.accuracy_after,
    }
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        for key, value in payload.items():
            print(f"{key:>17}: {value:.4f}" if isinstance(value, float) else f"{key:>17}: {value}")
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import ServiceState, create_app

    try:
        models = load_models(args.model)
        band = _parse_band(args.band)
    except _PARSE_FAILURES as exc:
        return _fail(PARSE_ERROR, str(exc))
    state = ServiceState(models, band=band, data_dir=args.data_dir, ttl=args.ttl)
    app = create_app(state)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="warpwatch")
    sub = parser.add_subparsers(dest="command", required=True)

    p_train = sub.add_parser("train", help="train a normal model from labeled-normal CSV")
    p_train.add_argument("--data", required=True)
    p_train.add_argument("--out", required=True)
    p_train.add_argument("--window", type=int, default=5)
    p_train.add_argument("--aggregator", choices=("min", "max"), default="min")
    p_train.add_argument(
        "--threshold-mode",
        choices=("min_supp_over_count", "min_rsupp_over_count"),
        default="min_supp_over_count",
    )
    p_train.add_argument("--representative", help="CSV with expert representatives")
    p_train.add_argument("--partition", help="CSV mapping series_id,group")
    p_train.add_argument("--score-threshold", type=float, default=None)
    p_train.set_defaults(func=_cmd_train)

    p_detect = sub.add_parser("detect", help="score each series in a CSV")
    p_detect.add_argument("--model", required=True)
    p_detect.add_argument("--data", required=True)
    p_detect.add_argument("--explain", action="store_true")
    p_detect.add_argument("--band", default=None)
    p_detect.set_defaults(func=_cmd_detect)

    p_eval = sub.add_parser("eval", help="confusion/F1/accuracy report")
    p_eval.add_argument("--model")
    p_eval.add_argument("--data", required=True)
    p_eval.add_argument("--baseline", action="store_true")
    p_eval.add_argument("--train-data")
    p_eval.add_argument("--sweep-window", help="train+eval per window, spec start:stop:step")
    p_eval.add_argument("--format", choices=("table", "json"), default="table")
    p_eval.set_defaults(func=_cmd_eval)

    p_synth = sub.add_parser("synth", help="generate a synthetic labeled dataset")
    p_synth.add_argument("--config", required=True)
    p_synth.add_argument("--out", required=True)
    p_synth.add_argument("--seed", type=int, default=None)
    p_synth.set_defaults(func=_cmd_synth)

    p_hitl = sub.add_parser("hitl-sim", help="simulated-expert review loop")
    p_hitl.add_argument("--model", required=True)
    p_hitl.add_argument("--data", required=True)
    p_hitl.add_argument("--band", required=True)
    p_hitl.add_argument("--format", choices=("table", "json"), default="table")
    p_hitl.set_defaults(func=_cmd_hitl_sim)

    p_serve = sub.add_parser("serve", help="run the review HTTP service")
    p_serve.add_argument("--model", required=True)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=int(os.environ.get("WARPWATCH_PORT", 8787)))
    p_serve.add_argument("--data-dir", default=os.environ.get("WARPWATCH_DATA_DIR"))
    p_serve.add_argument("--band", default=os.environ.get("WARPWATCH_BAND", "0.25,0.30"))
    p_serve.add_argument("--ttl", type=float, default=float(os.environ.get("WARPWATCH_TTL", 24 * 3600)))
    p_serve.set_defaults(func=_cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except errors.WarpwatchError as exc:
        return _fail(1, str(exc))


if __name__ == "__main__":
    sys.exit(main())
