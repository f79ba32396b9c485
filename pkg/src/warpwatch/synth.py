"""Seeded synthetic datasets: warped copies of a base waveform plus anomalies."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List

import numpy as np

from .dtw import ANOMALOUS, NORMAL, TimeSeries
from .errors import InvalidConfig

ANOMALY_KINDS = ("spike", "level_shift", "shape_swap")


@dataclass(frozen=True)
class SynthConfig:
    n_normal: int
    n_anomalous: int
    length: int
    warp_strength: float = 0.1
    noise: float = 0.05
    anomaly_kind: str = "spike"
    seed: int = 0
    anomaly_magnitude: float = 8.0


# size of the discrete repertoire of time-warp speeds normals are drawn from
_WARP_MODES = 10


def _base_waveform(positions: np.ndarray) -> np.ndarray:
    return 0.8 * np.sin(2 * np.pi * positions) + 0.4 * np.sin(4 * np.pi * positions + 1.0)


def _warped_positions(length: int, strength: float, rng) -> np.ndarray:
    """Monotone remap of [0, 1]: one of a repertoire of speed exponents."""
    if strength == 0:
        return np.linspace(0.0, 1.0, length)
    exponent = rng.choice(np.linspace(1.0 - strength, 1.0 + strength, _WARP_MODES))
    return np.linspace(0.0, 1.0, length) ** exponent


def _normal_values(config: SynthConfig, rng) -> np.ndarray:
    pos = _warped_positions(config.length, config.warp_strength, rng)
    values = _base_waveform(pos)
    if config.noise > 0:
        values = values + config.noise * rng.normal(size=config.length)
    return values


def _distort(values: np.ndarray, config: SynthConfig, rng) -> np.ndarray:
    out = values.copy()
    length = out.shape[0]
    if config.anomaly_kind == "spike":
        # stiction spike: the signal sticks to a rail for a stretch, starting
        # where it comes closest to the rail level
        span = max(1, length // 6)
        rail = config.anomaly_magnitude * (1 if rng.uniform() < 0.5 else -1)
        lo, hi = length // 10, max(length // 10 + 1, length - length // 10 - span)
        approach = [np.abs(values[p : p + span] - rail).sum() for p in range(lo, hi)]
        at = lo + int(np.argmin(approach))
        out[at : at + span] = rail
    elif config.anomaly_kind == "level_shift":
        span = max(2, length // 4)
        start = int(rng.integers(0, length - span + 1))
        out[start : start + span] += config.anomaly_magnitude / 4.0
    else:  # shape_swap
        lo, hi = length // 4, length - length // 4
        out[lo:hi] = out[lo:hi][::-1]
    return out


def generate_synthetic(config: SynthConfig) -> List[TimeSeries]:
    """Labeled dataset, bit-deterministic under ``config.seed``.

    Normals come first (ids ``n000``...), anomalies after (ids ``a000``...).
    """
    if config.n_normal <= 0 or config.length <= 0:
        raise InvalidConfig("n_normal and length must be positive")
    if config.n_anomalous < 0:
        raise InvalidConfig("n_anomalous must be non-negative")
    if config.anomaly_kind not in ANOMALY_KINDS:
        raise InvalidConfig(f"unknown anomaly kind {config.anomaly_kind!r}")
    if config.warp_strength < 0 or config.noise < 0:
        raise InvalidConfig("warp_strength and noise must be non-negative")
    rng = np.random.default_rng(config.seed)
    dataset = [
        TimeSeries(f"n{k:03d}", _normal_values(config, rng), label=NORMAL)
        for k in range(config.n_normal)
    ]
    dataset.extend(
        TimeSeries(
            f"a{k:03d}", _distort(_normal_values(config, rng), config, rng), label=ANOMALOUS
        )
        for k in range(config.n_anomalous)
    )
    return dataset
