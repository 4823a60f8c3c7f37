"""Overlap metrics for binary patterns and the derived scenario measures."""

from dataclasses import dataclass

import numpy as np


class CorrelationUndefinedError(ValueError):
    """Raised when a correlation is requested for a constant series."""


def dice(a, b):
    """Dice overlap 2|A∩B| / (|A| + |B|) between two binary patterns.

    Two empty patterns count as identical (score 1). Raises ValueError on
    length mismatch or non-binary entries.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape or a.ndim != 1:
        raise ValueError(f"pattern shapes differ: {a.shape} vs {b.shape}")
    for x in (a, b):
        if not np.all((x == 0.0) | (x == 1.0)):
            raise ValueError("patterns must be binary 0/1 vectors")
    total = a.sum() + b.sum()
    if total == 0.0:
        return 1.0
    return float(2.0 * (a @ b) / total)


def performance_q(s, dataset):
    """Best Dice overlap between pattern ``s`` and any dataset pattern."""
    patterns = dataset.patterns if hasattr(dataset, "patterns") else dataset
    if len(patterns) == 0:
        raise ValueError("dataset is empty")
    return max(dice(s, p) for p in patterns)


def dq_loss(q_pattern, q_blank):
    """Performance drop from pattern input to blank input."""
    _check_unit_interval(q_pattern, q_blank)
    return q_pattern - q_blank


def dq_gain(q_hallucination, q_blank):
    """Performance recovered by bias adaptation under blank input."""
    _check_unit_interval(q_hallucination, q_blank)
    return q_hallucination - q_blank


def _check_unit_interval(*values):
    for v in values:
        if not 0.0 <= v <= 1.0:
            raise ValueError(f"performance value {v} outside [0, 1]")


def pearson_correlation(xs, ys):
    """Sample Pearson correlation coefficient of two equal-length series."""
    xs = np.asarray(xs, dtype=np.float64)
    ys = np.asarray(ys, dtype=np.float64)
    if xs.shape != ys.shape or xs.ndim != 1:
        raise ValueError("series must be 1-d and of equal length")
    if xs.size < 2:
        raise ValueError("need at least two points")
    dx = xs - xs.mean()
    dy = ys - ys.mean()
    denom = np.sqrt((dx @ dx) * (dy @ dy))
    if denom == 0.0:
        raise CorrelationUndefinedError("correlation undefined for constant series")
    return float((dx @ dy) / denom)


@dataclass(frozen=True)
class ScenarioResult:
    """Per-trial decoding performance under the three input scenarios,
    plus the hallucination endpoint and the derived differences."""

    q_pattern: float
    q_corrupted: float
    q_blank: float
    q_hallucination: float
    dq_loss: float
    dq_gain: float

    def __post_init__(self):
        _check_unit_interval(
            self.q_pattern, self.q_corrupted, self.q_blank, self.q_hallucination
        )
        if abs(self.dq_loss - (self.q_pattern - self.q_blank)) > 1e-12:
            raise ValueError("dq_loss inconsistent with q_pattern - q_blank")
        if abs(self.dq_gain - (self.q_hallucination - self.q_blank)) > 1e-12:
            raise ValueError("dq_gain inconsistent with q_hallucination - q_blank")

    @classmethod
    def from_scores(cls, q_pattern, q_corrupted, q_blank, q_hallucination):
        return cls(
            q_pattern=q_pattern,
            q_corrupted=q_corrupted,
            q_blank=q_blank,
            q_hallucination=q_hallucination,
            dq_loss=q_pattern - q_blank,
            dq_gain=q_hallucination - q_blank,
        )
