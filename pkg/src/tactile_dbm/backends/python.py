"""Pure numpy implementation of the sampling kernels.

Mirrors the compiled extension in ``_core.pyx`` operation for operation:
both backends consume pre-drawn uniform variates in the same order, so a
fixed seed produces the same chain trajectory on either backend (up to
ties at float rounding, which are astronomically rare).
"""

import numpy as np

NAME = "python"


def sigmoid(x):
    """Overflow-safe logistic function, elementwise."""
    x = np.asarray(x, dtype=np.float64)
    z = np.exp(-np.abs(x))
    return np.where(x >= 0.0, 1.0 / (1.0 + z), z / (1.0 + z))


def affine_sigmoid(x, w, bias):
    """sigmoid(x @ w + bias) for a batch of row vectors x."""
    return sigmoid(x @ w + bias)


def affine2_sigmoid(xa, wa, xb, wb, bias):
    """sigmoid(xa @ wa + xb @ wb + bias) for batches xa, xb."""
    return sigmoid(xa @ wa + xb @ wb + bias)


def bernoulli(probs, uniforms):
    """Binary 0/1 floats: unit i fires iff uniforms[i] < probs[i]."""
    return (uniforms < probs).astype(np.float64)


def rbm_gibbs(w, b, c, v, h, uniforms):
    """Run free alternating Gibbs sweeps on an RBM, in place.

    One sweep updates h given v, then v given h. ``uniforms`` has shape
    (sweeps, batch, n_hidden + n_visible); the hidden slice comes first.
    """
    nh = c.shape[0]
    for s in range(uniforms.shape[0]):
        u = uniforms[s]
        h[...] = bernoulli(affine_sigmoid(v, w, c), u[:, :nh])
        v[...] = bernoulli(affine_sigmoid(h, w.T, b), u[:, nh:])


def dbm_gibbs(w1, w2, b, c1, c2, v, h1, h2, uniforms, clamp_visible):
    """Run alternating Gibbs sweeps on a three-layer chain, in place.

    Sweep schedule: h1 given (v, h2), then v given h1 (skipped when the
    visible layer is clamped), then h2 given h1. ``uniforms`` has shape
    (sweeps, batch, n_h1 + n_v + n_h2) in that slot order; the visible
    slice is drawn but unused when clamped, keeping the stream layout
    identical in both modes.
    """
    nh1 = c1.shape[0]
    nv = b.shape[0]
    for s in range(uniforms.shape[0]):
        u = uniforms[s]
        h1[...] = bernoulli(affine2_sigmoid(v, w1, h2, w2.T, c1), u[:, :nh1])
        if not clamp_visible:
            v[...] = bernoulli(affine_sigmoid(h1, w1.T, b), u[:, nh1:nh1 + nv])
        h2[...] = bernoulli(affine_sigmoid(h1, w2, c2), u[:, nh1 + nv:])
