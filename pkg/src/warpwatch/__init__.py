"""Time-series anomaly detection from warping-path statistics.

Train a normal model from labeled-normal series, score unseen series by how
well their alignment against the representative is supported by training
warping paths, and fold expert verdicts back into the model incrementally.
"""

from .detector import (
    UNCERTAIN,
    DetectionOutcome,
    best_outcome,
    classify,
    data_driven_threshold,
    detect,
    edtwa_score,
    rsupp,
    supp,
)
from .dtw import (
    ANOMALOUS,
    DIAG,
    NORMAL,
    RIGHT,
    UP,
    DtwResult,
    TimeSeries,
    WarpingPath,
    brute_force_dtw,
    dtw,
    normalized_distance,
    pointwise_distance,
)
from .evaluation import (
    BaselineModel,
    ConfusionMatrix,
    HitlReport,
    baseline_classifier,
    detect_baseline,
    edtwa_classifier,
    evaluate,
    simulate_hitl,
    train_baseline,
)
from .model import (
    NormalModel,
    build_matrix,
    build_thresholds,
    count_paths,
    derive_mask,
    deserialize_model,
    deserialize_models,
    encode_step,
    load_models,
    models_equal,
    save_models,
    serialize_model,
    serialize_models,
    update_anomalous,
    update_normal,
)
from .synth import SynthConfig, generate_synthetic
from .training import (
    HeatmapSummary,
    TrainingSet,
    select_representative,
    train,
    validate_model_visual,
)

__version__ = "0.1.0"
