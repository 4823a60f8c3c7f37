"""Stochastic binary network core: RBM and three-layer DBM parameters,
energies, conditional unit probabilities, and Gibbs sampling operations.

Orientation conventions. Weight matrices are stored (lower layer, upper
layer): an RBM weight w[i, j] couples visible unit i to hidden unit j, and
the DBM's w1[i, j] couples visible i to first-hidden j while w2[j, k]
couples first-hidden j to second-hidden k. All state vectors are float64
arrays of 0/1; batches stack them as rows.
"""

from dataclasses import dataclass

import numpy as np

from .backends import kernels as K
from .connectivity import apply_mask


def _check_finite(name, arr):
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite values")


def _check_masked(name, w, mask):
    if w.shape != mask.shape:
        raise ValueError(f"{name} shape {w.shape} does not match its mask")
    if np.any(w[~mask] != 0.0):
        raise ValueError(f"{name} has non-zero entries outside its mask")


@dataclass
class RbmParams:
    """One layer pair: weights, visible bias b, hidden bias c, and the
    connectivity mask the weights must respect."""

    w: np.ndarray
    b: np.ndarray
    c: np.ndarray
    mask: np.ndarray

    def __post_init__(self):
        self.w = np.asarray(self.w, dtype=np.float64)
        self.b = np.asarray(self.b, dtype=np.float64)
        self.c = np.asarray(self.c, dtype=np.float64)
        self.mask = np.asarray(self.mask, dtype=bool)
        if self.w.shape != (self.b.size, self.c.size):
            raise ValueError("weight shape does not match bias lengths")
        for name, arr in (("w", self.w), ("b", self.b), ("c", self.c)):
            _check_finite(name, arr)
        _check_masked("w", self.w, self.mask)

    @property
    def n_visible(self):
        return self.b.size

    @property
    def n_hidden(self):
        return self.c.size

    def copy(self):
        return RbmParams(self.w.copy(), self.b.copy(), self.c.copy(), self.mask.copy())


@dataclass
class DbmParams:
    """Three-layer parameters: two masked weight matrices and three biases."""

    w1: np.ndarray
    w2: np.ndarray
    b: np.ndarray
    c1: np.ndarray
    c2: np.ndarray
    mask1: np.ndarray
    mask2: np.ndarray

    def __post_init__(self):
        for name in ("w1", "w2", "b", "c1", "c2"):
            setattr(self, name, np.asarray(getattr(self, name), dtype=np.float64))
            _check_finite(name, getattr(self, name))
        self.mask1 = np.asarray(self.mask1, dtype=bool)
        self.mask2 = np.asarray(self.mask2, dtype=bool)
        if self.w1.shape != (self.b.size, self.c1.size):
            raise ValueError("w1 shape does not match bias lengths")
        if self.w2.shape != (self.c1.size, self.c2.size):
            raise ValueError("w2 shape does not match bias lengths")
        _check_masked("w1", self.w1, self.mask1)
        _check_masked("w2", self.w2, self.mask2)

    @property
    def n_visible(self):
        return self.b.size

    @property
    def n_hidden1(self):
        return self.c1.size

    @property
    def n_hidden2(self):
        return self.c2.size

    @property
    def total_units(self):
        return self.n_visible + self.n_hidden1 + self.n_hidden2

    def copy(self):
        return DbmParams(
            self.w1.copy(), self.w2.copy(), self.b.copy(),
            self.c1.copy(), self.c2.copy(),
            self.mask1.copy(), self.mask2.copy(),
        )


def init_rbm(mask, rng, sigma=0.01):
    """Fresh RBM: masked Gaussian weights (std ``sigma``), zero biases."""
    mask = np.asarray(mask, dtype=bool)
    nv, nh = mask.shape
    w = apply_mask(rng.normal(0.0, sigma, size=(nv, nh)), mask)
    return RbmParams(w=w, b=np.zeros(nv), c=np.zeros(nh), mask=mask)


def sigmoid(x):
    return K.sigmoid(np.asarray(x, dtype=np.float64))


def _rows(state):
    """View a single state vector as a one-row batch."""
    state = np.asarray(state, dtype=np.float64)
    return state[None, :] if state.ndim == 1 else state


def hidden_prob_rbm(v, params):
    """p(h_j = 1 | v) = sigmoid(sum_i v_i w_ij + c_j)."""
    out = K.affine_sigmoid(_rows(v), params.w, params.c)
    return out if np.ndim(v) > 1 else out[0]


def visible_prob_rbm(h, params):
    """p(v_i = 1 | h) = sigmoid(sum_j h_j w_ij + b_i)."""
    out = K.affine_sigmoid(_rows(h), np.ascontiguousarray(params.w.T), params.b)
    return out if np.ndim(h) > 1 else out[0]


def dbm_middle_prob(v, h2, params):
    """p(h1_j = 1 | v, h2): the middle layer pools both neighbours."""
    out = K.affine2_sigmoid(
        _rows(v), params.w1, _rows(h2), np.ascontiguousarray(params.w2.T), params.c1
    )
    return out if np.ndim(v) > 1 else out[0]


def dbm_top_prob(h1, params):
    """p(h2_k = 1 | h1)."""
    out = K.affine_sigmoid(_rows(h1), params.w2, params.c2)
    return out if np.ndim(h1) > 1 else out[0]


def dbm_visible_prob(h1, params):
    """p(v_i = 1 | h1)."""
    out = K.affine_sigmoid(_rows(h1), np.ascontiguousarray(params.w1.T), params.b)
    return out if np.ndim(h1) > 1 else out[0]


def sample_layer(probs, rng):
    """Independent Bernoulli draws, one per unit."""
    probs = np.asarray(probs, dtype=np.float64)
    if probs.min() < 0.0 or probs.max() > 1.0:
        raise ValueError("probabilities must lie in [0, 1]")
    return K.bernoulli(probs, rng.random(probs.shape))


def energy_rbm(v, h, params):
    """E(v, h) = -b.v - c.h - v.W.h."""
    v = np.asarray(v, dtype=np.float64)
    h = np.asarray(h, dtype=np.float64)
    return float(-(params.b @ v) - (params.c @ h) - v @ params.w @ h)


def energy_dbm(v, h1, h2, params):
    """E(v, h1, h2) = -b.v - c1.h1 - c2.h2 - v.W1.h1 - h1.W2.h2."""
    v = np.asarray(v, dtype=np.float64)
    h1 = np.asarray(h1, dtype=np.float64)
    h2 = np.asarray(h2, dtype=np.float64)
    return float(
        -(params.b @ v) - (params.c1 @ h1) - (params.c2 @ h2)
        - v @ params.w1 @ h1 - h1 @ params.w2 @ h2
    )


def free_energy_marginal(v, params):
    """RBM free energy F(v) = -log sum_h exp(-E(v, h)), computed with the
    per-hidden-unit factorization -b.v - sum_j log(1 + exp(v.W_j + c_j))."""
    v = np.asarray(v, dtype=np.float64)
    _check_finite("v", v)
    act = v @ params.w + params.c
    # log(1 + exp(x)) via logaddexp for overflow safety
    return float(-(params.b @ v) - np.logaddexp(0.0, act).sum())


def random_states(n_units, n_states, rng):
    """Uniform random binary states, one per row."""
    return K.bernoulli(np.full((n_states, n_units), 0.5), rng.random((n_states, n_units)))


def sample_rbm(params, burn_in, rng, n_samples=1):
    """Free-running RBM samples: random start, ``burn_in`` alternating
    sweeps (h given v, then v given h), returning the visible states."""
    v = random_states(params.n_visible, n_samples, rng)
    h = random_states(params.n_hidden, n_samples, rng)
    uniforms = rng.random((burn_in, n_samples, params.n_hidden + params.n_visible))
    K.rbm_gibbs(params.w, params.b, params.c, v, h, uniforms)
    return v


def _dbm_uniforms(params, sweeps, n, rng):
    return rng.random((sweeps, n, params.n_hidden1 + params.n_visible + params.n_hidden2))


def sample_dbm_batch(params, burn_in, n_samples, rng):
    """Free-running DBM samples: all layers start uniformly at random, then
    ``burn_in`` alternating sweeps; rows are the final visible states."""
    v = random_states(params.n_visible, n_samples, rng)
    h1 = random_states(params.n_hidden1, n_samples, rng)
    h2 = random_states(params.n_hidden2, n_samples, rng)
    uniforms = _dbm_uniforms(params, burn_in, n_samples, rng)
    K.dbm_gibbs(params.w1, params.w2, params.b, params.c1, params.c2,
                v, h1, h2, uniforms, False)
    return v


def sample_dbm(params, burn_in, rng):
    """Single free-running sample of the visible layer."""
    return sample_dbm_batch(params, burn_in, 1, rng)[0]


def clamp_and_infer(params, v, sweeps, rng):
    """Hold the visible layer fixed and Gibbs-sample the hidden layers.

    ``v`` may be a single pattern or a batch of rows; returns the final
    (h1, h2) states with matching leading shape.
    """
    v = np.asarray(v, dtype=np.float64)
    single = v.ndim == 1
    vb = np.ascontiguousarray(_rows(v))
    n = vb.shape[0]
    h1 = random_states(params.n_hidden1, n, rng)
    h2 = random_states(params.n_hidden2, n, rng)
    uniforms = _dbm_uniforms(params, sweeps, n, rng)
    K.dbm_gibbs(params.w1, params.w2, params.b, params.c1, params.c2,
                vb, h1, h2, uniforms, True)
    if single:
        return h1[0], h2[0]
    return h1, h2
