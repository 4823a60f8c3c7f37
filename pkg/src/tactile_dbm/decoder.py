"""Feedforward decoding of deepest-hidden-layer states for inspection.

The pass runs strictly top-down: the first hidden layer sees only the deep
state through doubled weights (compensating the missing bottom-up input),
then the visible layer sees only the first hidden layer through the normal,
undoubled weights.
"""

from dataclasses import dataclass

import numpy as np

from .backends import kernels as K
from .training import score_samples

MODES = ("stochastic", "deterministic")


@dataclass(frozen=True)
class DecodeConfig:
    mode: str = "stochastic"
    samples_per_decode: int = 100

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.samples_per_decode < 1:
            raise ValueError("samples_per_decode must be >= 1")


def _realize(probs, mode, rng):
    if mode == "deterministic":
        # ties at exactly 0.5 map to off
        return (probs > 0.5).astype(np.float64)
    return K.bernoulli(probs, rng.random(probs.shape))


def decode_batch(params, h2_rows, config, rng):
    """Decode a batch of deep hidden states to visible patterns."""
    h2_rows = np.asarray(h2_rows, dtype=np.float64)
    h1p = K.affine_sigmoid(h2_rows, np.ascontiguousarray(2.0 * params.w2.T), params.c1)
    h1 = _realize(h1p, config.mode, rng)
    vp = K.affine_sigmoid(h1, np.ascontiguousarray(params.w1.T), params.b)
    return _realize(vp, config.mode, rng)


def decode(params, h2, config, rng):
    """Decode a single deep hidden state to a visible pattern."""
    return decode_batch(params, np.asarray(h2, dtype=np.float64)[None, :], config, rng)[0]


def decode_performance(params, h2, dataset, config, rng):
    """Mean performance over ``samples_per_decode`` independent decodes of
    the same deep state."""
    rows = np.tile(np.asarray(h2, dtype=np.float64), (config.samples_per_decode, 1))
    decoded = decode_batch(params, rows, config, rng)
    return score_samples(decoded, dataset).q_mean
