"""Homeostatic bias adaptation under sensory deprivation.

The healthy activity of every hidden neuron is first measured with the
training patterns clamped to the visible layer. Afterwards the visible
layer is clamped to the all-off pattern and, sweep by sweep, the hidden
biases move toward the healthy baseline: delta_bias = eta * (mu - a),
where a is the recent activation probability of the neuron. Weights and
the visible bias never change.
"""

from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .backends import kernels as K
from .decoder import DecodeConfig, decode_performance
from .patterns import blank


@dataclass(frozen=True)
class HomeostasisConfig:
    """Adaptation-process knobs.

    eta 0 is allowed so the no-adaptation ablation can share the code path.
    """

    eta: float = 0.01
    steps: int = 2000
    baseline_sweeps: int = 100
    baseline_burn_in: int = 10
    activity_window: int = 10
    decode_samples: int = 20
    chain_burn_in: int = 20
    rng_seed: int = 0

    def __post_init__(self):
        if self.eta < 0.0:
            raise ValueError("eta must be non-negative")
        if self.steps < 1:
            raise ValueError("steps must be >= 1")
        if self.baseline_sweeps <= self.baseline_burn_in:
            raise ValueError("baseline_sweeps must exceed baseline_burn_in")
        if self.activity_window < 1 or self.decode_samples < 1:
            raise ValueError("activity_window and decode_samples must be >= 1")


@dataclass
class BaselineActivity:
    """Mean healthy activation probability per hidden neuron, per layer."""

    mu1: np.ndarray
    mu2: np.ndarray

    def __post_init__(self):
        self.mu1 = np.asarray(self.mu1, dtype=np.float64)
        self.mu2 = np.asarray(self.mu2, dtype=np.float64)
        for mu in (self.mu1, self.mu2):
            if mu.min() < 0.0 or mu.max() > 1.0:
                raise ValueError("baseline activities must lie in [0, 1]")


@dataclass
class QTrace:
    """Per-step reconstruction performance with trial/step provenance."""

    entries: list = field(default_factory=list)  # (trial, step, q) tuples

    def __post_init__(self):
        last = {}
        for trial, step, q in self.entries:
            if trial in last and step <= last[trial]:
                raise ValueError("steps must increase strictly within a trial")
            last[trial] = step
            if not 0.0 <= q <= 1.0:
                raise ValueError(f"q value {q} outside [0, 1]")

    def qs(self):
        return np.array([q for _, _, q in self.entries])

    def steps(self):
        return np.array([step for _, step, _ in self.entries])


def _clamped_sweep(params, v_rows, h1, h2, rng):
    """One Gibbs sweep of the hidden layers with the visible layer held
    fixed; returns the pre-sampling activation probabilities."""
    h1p = K.affine2_sigmoid(
        v_rows, params.w1, h2, np.ascontiguousarray(params.w2.T), params.c1
    )
    h1[...] = K.bernoulli(h1p, rng.random(h1p.shape))
    h2p = K.affine_sigmoid(h1, params.w2, params.c2)
    h2[...] = K.bernoulli(h2p, rng.random(h2p.shape))
    return h1p, h2p


def measure_baseline(params, dataset, config, rng):
    """Mean hidden activation probabilities under clamped training input.

    Each pattern drives its own chain for ``baseline_sweeps`` sweeps; the
    probabilities after the burn-in are averaged across sweeps and patterns.
    """
    if len(dataset) == 0:
        raise ValueError("dataset is empty")
    v_rows = dataset.as_matrix()
    n = v_rows.shape[0]
    h1 = _random_layer(params.n_hidden1, n, rng)
    h2 = _random_layer(params.n_hidden2, n, rng)
    sum1 = np.zeros(params.n_hidden1)
    sum2 = np.zeros(params.n_hidden2)
    kept = 0
    for sweep in range(config.baseline_sweeps):
        h1p, h2p = _clamped_sweep(params, v_rows, h1, h2, rng)
        if sweep >= config.baseline_burn_in:
            sum1 += h1p.mean(axis=0)
            sum2 += h2p.mean(axis=0)
            kept += 1
    return BaselineActivity(mu1=sum1 / kept, mu2=sum2 / kept)


def _random_layer(n_units, n_rows, rng):
    return K.bernoulli(np.full((n_rows, n_units), 0.5), rng.random((n_rows, n_units)))


@dataclass
class HomeostasisChain:
    """Persistent blank-clamped chain state plus the recent-activity window."""

    v: np.ndarray
    h1: np.ndarray
    h2: np.ndarray
    window1: deque
    window2: deque


def init_chain(params, config, rng):
    """Fresh blank-clamped chain, settled for ``chain_burn_in`` sweeps so the
    first step starts from the deprived steady state."""
    v = blank()[None, :]
    h1 = _random_layer(params.n_hidden1, 1, rng)
    h2 = _random_layer(params.n_hidden2, 1, rng)
    for _ in range(config.chain_burn_in):
        _clamped_sweep(params, v, h1, h2, rng)
    return HomeostasisChain(
        v=v, h1=h1, h2=h2,
        window1=deque(maxlen=config.activity_window),
        window2=deque(maxlen=config.activity_window),
    )


def homeostasis_step(params, mu, chain, dataset, config, rng):
    """One adaptation step, mutating ``params`` biases and the chain.

    Runs one clamped sweep, updates the windowed activity estimate, moves
    the hidden biases toward the baseline, and scores the current deep
    state through the decoder.
    """
    h1p, h2p = _clamped_sweep(params, chain.v, chain.h1, chain.h2, rng)
    chain.window1.append(h1p[0])
    chain.window2.append(h2p[0])
    a1 = np.mean(chain.window1, axis=0)
    a2 = np.mean(chain.window2, axis=0)
    params.c1 += config.eta * (mu.mu1 - a1)
    params.c2 += config.eta * (mu.mu2 - a2)
    decode_config = DecodeConfig(mode="stochastic", samples_per_decode=config.decode_samples)
    return decode_performance(params, chain.h2[0], dataset, decode_config, rng)


def run_homeostasis(params, mu, config, dataset, rng, trial=0):
    """Run the adaptation process for ``config.steps`` steps.

    Operates on a copy: the returned parameters differ from the input only
    in the hidden biases. Also returns the per-step performance trace and
    the final chain (whose deep state is the hallucination endpoint).
    """
    params = params.copy()
    chain = init_chain(params, config, rng)
    entries = []
    for step in range(1, config.steps + 1):
        q = homeostasis_step(params, mu, chain, dataset, config, rng)
        entries.append((trial, step, q))
    return params, QTrace(entries=entries), chain
