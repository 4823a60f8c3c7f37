# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled sampling kernels.

Semantics match ``tactile_dbm.backends.python`` exactly; see that module
for the uniform-variate layout contracts.
"""

import numpy as np

from libc.math cimport exp, fabs

NAME = "cython"


cdef inline double _sig(double x) nogil:
    cdef double z = exp(-fabs(x))
    if x >= 0.0:
        return 1.0 / (1.0 + z)
    return z / (1.0 + z)


def sigmoid(x):
    x = np.ascontiguousarray(x, dtype=np.float64)
    shape = x.shape
    cdef double[::1] flat = x.reshape(-1)
    out = np.empty(flat.shape[0], dtype=np.float64)
    cdef double[::1] o = out
    cdef Py_ssize_t i
    for i in range(flat.shape[0]):
        o[i] = _sig(flat[i])
    return out.reshape(shape)


def affine_sigmoid(double[:, :] x, double[:, :] w, double[:] bias):
    cdef Py_ssize_t nb = x.shape[0], m = x.shape[1], n = w.shape[1]
    out = np.empty((nb, n), dtype=np.float64)
    cdef double[:, ::1] o = out
    cdef Py_ssize_t i, j, k
    cdef double acc
    for i in range(nb):
        for j in range(n):
            acc = bias[j]
            for k in range(m):
                acc += x[i, k] * w[k, j]
            o[i, j] = _sig(acc)
    return out


def affine2_sigmoid(double[:, :] xa, double[:, :] wa,
                    double[:, :] xb, double[:, :] wb, double[:] bias):
    cdef Py_ssize_t nb = xa.shape[0], ma = xa.shape[1], mb = xb.shape[1]
    cdef Py_ssize_t n = wa.shape[1]
    out = np.empty((nb, n), dtype=np.float64)
    cdef double[:, ::1] o = out
    cdef Py_ssize_t i, j, k
    cdef double acc
    for i in range(nb):
        for j in range(n):
            acc = bias[j]
            for k in range(ma):
                acc += xa[i, k] * wa[k, j]
            for k in range(mb):
                acc += xb[i, k] * wb[k, j]
            o[i, j] = _sig(acc)
    return out


def bernoulli(probs, uniforms):
    p = np.ascontiguousarray(probs, dtype=np.float64)
    u = np.ascontiguousarray(uniforms, dtype=np.float64)
    shape = p.shape
    cdef double[::1] pf = p.reshape(-1)
    cdef double[::1] uf = u.reshape(-1)
    out = np.empty(pf.shape[0], dtype=np.float64)
    cdef double[::1] o = out
    cdef Py_ssize_t i
    for i in range(pf.shape[0]):
        o[i] = 1.0 if uf[i] < pf[i] else 0.0
    return out.reshape(shape)


cdef void _update_layer(double[:, :] x, double[:, :] w, double[:] bias,
                        double[:, ::1] state, double[:, :] u) nogil:
    # state <- Bernoulli(sigmoid(x @ w + bias)) using uniforms u
    cdef Py_ssize_t nb = x.shape[0], m = x.shape[1], n = w.shape[1]
    cdef Py_ssize_t i, j, k
    cdef double acc
    for i in range(nb):
        for j in range(n):
            acc = bias[j]
            for k in range(m):
                acc += x[i, k] * w[k, j]
            state[i, j] = 1.0 if u[i, j] < _sig(acc) else 0.0


cdef void _update_layer2(double[:, :] xa, double[:, :] wa,
                         double[:, :] xb, double[:, :] wb, double[:] bias,
                         double[:, ::1] state, double[:, :] u) nogil:
    cdef Py_ssize_t nb = xa.shape[0], ma = xa.shape[1], mb = xb.shape[1]
    cdef Py_ssize_t n = wa.shape[1]
    cdef Py_ssize_t i, j, k
    cdef double acc
    for i in range(nb):
        for j in range(n):
            acc = bias[j]
            for k in range(ma):
                acc += xa[i, k] * wa[k, j]
            for k in range(mb):
                acc += xb[i, k] * wb[k, j]
            state[i, j] = 1.0 if u[i, j] < _sig(acc) else 0.0


def rbm_gibbs(double[:, :] w, double[:] b, double[:] c,
              double[:, ::1] v, double[:, ::1] h, double[:, :, :] uniforms):
    cdef Py_ssize_t nh = c.shape[0], nv = b.shape[0]
    cdef Py_ssize_t s
    cdef double[:, :] wt = w.T
    for s in range(uniforms.shape[0]):
        _update_layer(v, w, c, h, uniforms[s, :, :nh])
        _update_layer(h, wt, b, v, uniforms[s, :, nh:nh + nv])


def dbm_gibbs(double[:, :] w1, double[:, :] w2, double[:] b,
              double[:] c1, double[:] c2,
              double[:, ::1] v, double[:, ::1] h1, double[:, ::1] h2,
              double[:, :, :] uniforms, bint clamp_visible):
    cdef Py_ssize_t nh1 = c1.shape[0], nv = b.shape[0], nh2 = c2.shape[0]
    cdef Py_ssize_t s
    cdef double[:, :] w1t = w1.T
    cdef double[:, :] w2t = w2.T
    for s in range(uniforms.shape[0]):
        _update_layer2(v, w1, h2, w2t, c1, h1, uniforms[s, :, :nh1])
        if not clamp_visible:
            _update_layer(h1, w1t, b, v, uniforms[s, :, nh1:nh1 + nv])
        _update_layer(h1, w2, c2, h2, uniforms[s, :, nh1 + nv:])
