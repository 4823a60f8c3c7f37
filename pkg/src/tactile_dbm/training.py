"""Persistent contrastive divergence training.

Both pretraining phases and the joint fine-tuning use the same two-phase
update: data statistics come from a single mean-field pass upward with the
visible layer clamped to the batch, model statistics from persistent
fantasy chains advanced by full Gibbs sweeps. The update is the scaled
difference of the two, with the connectivity mask re-applied so masked
weight entries stay exactly zero.
"""

from dataclasses import dataclass, field

import numpy as np

from .backends import kernels as K
from .model import DbmParams, RbmParams, init_rbm, random_states, sample_dbm_batch, sample_rbm

PHASE_PRETRAIN1 = "pretrain1"
PHASE_PRETRAIN2 = "pretrain2"
PHASE_DBM = "dbm"


@dataclass
class TrainConfig:
    """Knobs for one PCD training run (any phase)."""

    learning_rate: float = 0.01
    iterations: int = 2000
    particle_count: int = 10
    gibbs_steps_per_update: int = 1
    eval_interval: int = 50
    eval_samples: int = 100
    early_stop_q: float = 0.95
    collapse_min_fraction: float = 0.9
    sample_burn_in: int = 20
    init_sigma: float = 0.01
    rng_seed: int = 0

    def __post_init__(self):
        if self.learning_rate <= 0.0:
            raise ValueError("learning_rate must be positive")
        if self.iterations < 0:
            raise ValueError("iterations must be non-negative")
        if self.particle_count < 1:
            raise ValueError("particle_count must be >= 1")
        if not 0.0 < self.early_stop_q <= 1.0:
            raise ValueError("early_stop_q must lie in (0, 1]")


@dataclass
class RbmChains:
    """Persistent fantasy particles for one layer pair."""

    v: np.ndarray
    h: np.ndarray


@dataclass
class DbmChains:
    v: np.ndarray
    h1: np.ndarray
    h2: np.ndarray


def init_rbm_chains(params, n_particles, rng):
    return RbmChains(
        v=random_states(params.n_visible, n_particles, rng),
        h=random_states(params.n_hidden, n_particles, rng),
    )


def init_dbm_chains(params, n_particles, rng):
    return DbmChains(
        v=random_states(params.n_visible, n_particles, rng),
        h1=random_states(params.n_hidden1, n_particles, rng),
        h2=random_states(params.n_hidden2, n_particles, rng),
    )


def pcd_update_rbm(params, batch, chains, config, rng):
    """One PCD update of an RBM on a full batch, in place."""
    batch = np.asarray(batch, dtype=np.float64)
    hp = K.affine_sigmoid(batch, params.w, params.c)

    n = chains.v.shape[0]
    uniforms = rng.random(
        (config.gibbs_steps_per_update, n, params.n_hidden + params.n_visible)
    )
    K.rbm_gibbs(params.w, params.b, params.c, chains.v, chains.h, uniforms)

    lr = config.learning_rate
    params.w += lr * (batch.T @ hp / batch.shape[0] - chains.v.T @ chains.h / n)
    params.w *= params.mask
    params.b += lr * (batch.mean(axis=0) - chains.v.mean(axis=0))
    params.c += lr * (hp.mean(axis=0) - chains.h.mean(axis=0))


def pcd_update_dbm(params, batch, chains, config, rng):
    """One joint PCD update of both DBM layer pairs, in place."""
    batch = np.asarray(batch, dtype=np.float64)
    h1p = K.affine_sigmoid(batch, params.w1, params.c1)
    h2p = K.affine_sigmoid(h1p, params.w2, params.c2)

    n = chains.v.shape[0]
    uniforms = rng.random(
        (config.gibbs_steps_per_update, n, params.total_units)
    )
    K.dbm_gibbs(params.w1, params.w2, params.b, params.c1, params.c2,
                chains.v, chains.h1, chains.h2, uniforms, False)

    lr = config.learning_rate
    nb = batch.shape[0]
    params.w1 += lr * (batch.T @ h1p / nb - chains.v.T @ chains.h1 / n)
    params.w1 *= params.mask1
    params.w2 += lr * (h1p.T @ h2p / nb - chains.h1.T @ chains.h2 / n)
    params.w2 *= params.mask2
    params.b += lr * (batch.mean(axis=0) - chains.v.mean(axis=0))
    params.c1 += lr * (h1p.mean(axis=0) - chains.h1.mean(axis=0))
    params.c2 += lr * (h2p.mean(axis=0) - chains.h2.mean(axis=0))


@dataclass
class SampleScore:
    """Mean performance of a batch of samples plus the collapse statistic:
    the largest fraction of matched samples claimed by a single pattern."""

    q_mean: float
    dominant_fraction: float


def score_samples(samples, dataset):
    """Dice-based performance of sampled visible states against a dataset."""
    mat = dataset.as_matrix()
    inter = samples @ mat.T
    denom = samples.sum(axis=1)[:, None] + mat.sum(axis=1)[None, :]
    d = 2.0 * inter / denom
    q = d.max(axis=1)
    matched = q > 0.0
    if matched.any():
        best = d[matched].argmax(axis=1)
        counts = np.bincount(best, minlength=mat.shape[0])
        dominant = counts.max() / matched.sum()
    else:
        dominant = 0.0
    return SampleScore(q_mean=float(q.mean()), dominant_fraction=float(dominant))


@dataclass
class TrainRecord:
    phase: str
    iteration: int
    q_mean: float


@dataclass
class TrainResult:
    params: object
    records: list = field(default_factory=list)
    stop_reason: str = "max_iterations"


def assemble_dbm(rbm1, rbm2):
    """Stack two pretrained layer pairs into one DBM. The shared middle
    layer receives the sum of its two bias estimates."""
    if rbm1.n_hidden != rbm2.n_visible:
        raise ValueError("layer pair widths do not match")
    return DbmParams(
        w1=rbm1.w.copy(), w2=rbm2.w.copy(), b=rbm1.b.copy(),
        c1=rbm1.c + rbm2.b, c2=rbm2.c.copy(),
        mask1=rbm1.mask.copy(), mask2=rbm2.mask.copy(),
    )


def _sample_latent_batch(rbm1, data, rng):
    """Binary first-hidden-layer representations of the dataset."""
    hp = K.affine_sigmoid(data, rbm1.w, rbm1.c)
    return K.bernoulli(hp, rng.random(hp.shape))


def pretrain_dbn(dataset, masks, config, rng):
    """Greedy layer-wise pretraining of the two layer pairs.

    Phase 1 trains the visible pair on the dataset; phase 2 trains the
    deeper pair on freshly sampled latent representations of the dataset.
    Returns the assembled DBM and the per-phase evaluation records.
    """
    if len(dataset) == 0:
        raise ValueError("dataset is empty")
    mask1, mask2 = masks
    data = dataset.as_matrix()
    records = []

    rbm1 = init_rbm(mask1, rng, config.init_sigma)
    chains1 = init_rbm_chains(rbm1, config.particle_count, rng)
    for it in range(config.iterations + 1):
        if it % config.eval_interval == 0 or it == config.iterations:
            v = sample_rbm(rbm1, config.sample_burn_in, rng, config.eval_samples)
            records.append(TrainRecord(PHASE_PRETRAIN1, it, score_samples(v, dataset).q_mean))
        if it == config.iterations:
            break
        pcd_update_rbm(rbm1, data, chains1, config, rng)

    rbm2 = init_rbm(mask2, rng, config.init_sigma)
    chains2 = init_rbm_chains(rbm2, config.particle_count, rng)
    for it in range(config.iterations + 1):
        if it % config.eval_interval == 0 or it == config.iterations:
            dbm = assemble_dbm(rbm1, rbm2)
            v = sample_dbm_batch(dbm, config.sample_burn_in, config.eval_samples, rng)
            records.append(TrainRecord(PHASE_PRETRAIN2, it, score_samples(v, dataset).q_mean))
        if it == config.iterations:
            break
        pcd_update_rbm(rbm2, _sample_latent_batch(rbm1, data, rng), chains2, config, rng)

    return assemble_dbm(rbm1, rbm2), records


def train_dbm(params, dataset, config, rng):
    """Joint PCD fine-tuning with early stopping.

    Every ``eval_interval`` iterations the model is scored on free-running
    samples; training stops once the mean performance reaches
    ``early_stop_q``, when sampling collapses onto a single pattern, or at
    the iteration cap.
    """
    if len(dataset) == 0:
        raise ValueError("dataset is empty")
    params = params.copy()
    data = dataset.as_matrix()
    chains = init_dbm_chains(params, config.particle_count, rng)
    result = TrainResult(params=params)

    for it in range(config.iterations + 1):
        if it % config.eval_interval == 0 or it == config.iterations:
            v = sample_dbm_batch(params, config.sample_burn_in, config.eval_samples, rng)
            score = score_samples(v, dataset)
            result.records.append(TrainRecord(PHASE_DBM, it, score.q_mean))
            if score.q_mean >= config.early_stop_q:
                result.stop_reason = "early_stop"
                break
            if score.q_mean >= 0.9 and score.dominant_fraction > config.collapse_min_fraction:
                result.stop_reason = "collapse"
                break
        if it == config.iterations:
            break
        pcd_update_dbm(params, data, chains, config, rng)

    return result
