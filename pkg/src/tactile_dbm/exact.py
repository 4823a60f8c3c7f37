"""Brute-force oracles for networks small enough to enumerate.

Everything here sums over complete state spaces, so it is exponential in
the unit count and guarded by a hard capacity limit. These routines exist
to cross-check the analytic forms and the stochastic training path on toy
networks; the 18+18+18 production model is far beyond the limit.
"""

import numpy as np

from .model import DbmParams, RbmParams, free_energy_marginal, hidden_prob_rbm

MAX_ENUM_UNITS = 24


class CapacityError(RuntimeError):
    """Raised when a network is too large for exact enumeration."""


def _check_capacity(n_units):
    if n_units > MAX_ENUM_UNITS:
        raise CapacityError(
            f"{n_units} units exceed the {MAX_ENUM_UNITS}-unit enumeration limit"
        )


def all_states(n_units):
    """All 2**n binary states as rows, in increasing binary order (bit 0 =
    first unit)."""
    _check_capacity(n_units)
    codes = np.arange(2 ** n_units, dtype=np.int64)
    return ((codes[:, None] >> np.arange(n_units)) & 1).astype(np.float64)


def _rbm_joint_log_weights(params):
    """log exp(-E(v, h)) for every joint state; rows are visible states."""
    v = all_states(params.n_visible)
    h = all_states(params.n_hidden)
    # energy matrix E[v_idx, h_idx]
    coupling = v @ params.w @ h.T
    energies = -(v @ params.b)[:, None] - (h @ params.c)[None, :] - coupling
    return -energies


def free_energy_enum(v, params):
    """F(v) = -log sum_h exp(-E(v, h)) by direct summation over all hidden
    states (RBM) or all hidden-layer pairs (DBM)."""
    v = np.asarray(v, dtype=np.float64)
    if isinstance(params, RbmParams):
        _check_capacity(params.n_hidden)
        h = all_states(params.n_hidden)
        log_w = (params.b @ v) + h @ (params.c + v @ params.w)
    elif isinstance(params, DbmParams):
        _check_capacity(params.n_hidden1 + params.n_hidden2)
        h1 = all_states(params.n_hidden1)
        h2 = all_states(params.n_hidden2)
        log_w = (
            (params.b @ v)
            + (h1 @ (params.c1 + v @ params.w1))[:, None]
            + (h2 @ params.c2)[None, :]
            + h1 @ params.w2 @ h2.T
        ).ravel()
    else:
        raise TypeError(f"unsupported parameter type {type(params).__name__}")
    m = log_w.max()
    return float(-(m + np.log(np.exp(log_w - m).sum())))


def partition_and_prob(v, params):
    """Partition function Z (by joint-state enumeration) and p(v) = exp(-F(v)) / Z.

    For RBMs the free energy uses the analytic per-unit factorization, so
    summing p over all visible states doubles as a consistency check of
    that formula against the enumerated Z.
    """
    if isinstance(params, RbmParams):
        _check_capacity(params.n_visible + params.n_hidden)
        log_w = _rbm_joint_log_weights(params).ravel()
        f_v = free_energy_marginal(v, params)
    elif isinstance(params, DbmParams):
        _check_capacity(params.total_units)
        states_v = all_states(params.n_visible)
        f_all = np.array([free_energy_enum(x, params) for x in states_v])
        log_w = -f_all
        f_v = free_energy_enum(v, params)
    else:
        raise TypeError(f"unsupported parameter type {type(params).__name__}")
    m = log_w.max()
    z = float(np.exp(m) * np.exp(log_w - m).sum())
    return z, float(np.exp(-f_v) / z)


def visible_distribution(params):
    """Exact p(v) for every visible state, indexed like :func:`all_states`."""
    if isinstance(params, RbmParams):
        _check_capacity(params.n_visible + params.n_hidden)
        states_v = all_states(params.n_visible)
        f_all = np.array([free_energy_marginal(x, params) for x in states_v])
    elif isinstance(params, DbmParams):
        _check_capacity(params.total_units)
        states_v = all_states(params.n_visible)
        f_all = np.array([free_energy_enum(x, params) for x in states_v])
    else:
        raise TypeError(f"unsupported parameter type {type(params).__name__}")
    log_w = -f_all
    m = log_w.max()
    w = np.exp(log_w - m)
    return w / w.sum()


def exact_loglik_gradient(params, data):
    """Exact log-likelihood gradient of an RBM for a dataset.

    Returns (dw, db, dc): the data expectation of the sufficient statistics
    (with hidden units marginalized analytically) minus the exact model
    expectation from enumeration.
    """
    if not isinstance(params, RbmParams):
        raise TypeError("exact gradients are implemented for RBMs only")
    data = np.asarray(data, dtype=np.float64)
    hp_data = hidden_prob_rbm(data, params)
    dw_data = data.T @ hp_data / data.shape[0]
    db_data = data.mean(axis=0)
    dc_data = hp_data.mean(axis=0)

    p_v = visible_distribution(params)
    states_v = all_states(params.n_visible)
    hp_model = hidden_prob_rbm(states_v, params)
    dw_model = states_v.T @ (hp_model * p_v[:, None])
    db_model = p_v @ states_v
    dc_model = p_v @ hp_model
    return dw_data - dw_model, db_data - db_model, dc_data - dc_model


def kl_data_model(params, data):
    """KL divergence between the empirical distribution of ``data`` rows and
    the exact model distribution over visible states."""
    data = np.asarray(data, dtype=np.float64)
    n = data.shape[1]
    codes = (data @ (2.0 ** np.arange(n))).astype(np.int64)
    counts = np.bincount(codes, minlength=2 ** n).astype(np.float64)
    p_data = counts / counts.sum()
    p_model = visible_distribution(params)
    support = p_data > 0.0
    return float(np.sum(p_data[support] * np.log(p_data[support] / p_model[support])))
