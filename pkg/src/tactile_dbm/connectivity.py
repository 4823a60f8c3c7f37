"""Column-restricted receptive-field masks between network layers.

Both layers of a pair share the skin's column assignment (column of unit i
is i // 3). A unit connects to units in the same or a neighbouring column;
"linear" clips the neighbourhood at the edge columns while "circular"
wraps it around.
"""

import numpy as np

from .patterns import GEOMETRY

KINDS = ("linear", "circular")


def check_kind(kind):
    if kind not in KINDS:
        raise ValueError(f"receptive field kind must be one of {KINDS}, got {kind!r}")
    return kind


def build_mask(kind, geometry=GEOMETRY):
    """Boolean (18, 18) adjacency between consecutive layers."""
    check_kind(kind)
    n = geometry.cell_count
    cols = np.array([geometry.column_of(i) for i in range(n)])
    diff = np.abs(cols[:, None] - cols[None, :])
    if kind == "circular":
        diff = np.minimum(diff, geometry.cols - diff)
    return diff <= 1


def apply_mask(weights, mask):
    """Zero out weight entries that the mask disallows."""
    weights = np.asarray(weights, dtype=np.float64)
    mask = np.asarray(mask, dtype=bool)
    if weights.shape != mask.shape:
        raise ValueError(
            f"weights shape {weights.shape} does not match mask {mask.shape}"
        )
    return np.where(mask, weights, 0.0)
