"""Compiled inner loops: the fourth-order stepper and cumulative rotations."""

import numba
import numpy as np


@numba.njit(cache=True)
def rk4_linear(c0, mats, values, h):
    """Classic fourth-order Runge-Kutta for i dc/dt = H(t) c, H(t) = sum_j values[j, k] mats[j].

    ``values`` holds the profile values on the half-step nodes, so column
    ``2*i`` is t_i, ``2*i + 1`` the midpoint and ``2*i + 2`` is t_{i+1}.
    """
    n = c0.shape[0]
    n_terms = mats.shape[0]
    n_steps = (values.shape[1] - 1) // 2
    out = np.empty((n_steps + 1, n), dtype=np.complex128)
    out[0] = c0
    c = c0.copy()
    H = np.empty((3, n, n), dtype=np.float64)
    k1 = np.empty(n, dtype=np.complex128)
    k2 = np.empty(n, dtype=np.complex128)
    k3 = np.empty(n, dtype=np.complex128)
    k4 = np.empty(n, dtype=np.complex128)
    tmp = np.empty(n, dtype=np.complex128)
    for i in range(n_steps):
        for s in range(3):
            for a in range(n):
                for b in range(n):
                    acc = 0.0
                    for j in range(n_terms):
                        acc += values[j, 2 * i + s] * mats[j, a, b]
                    H[s, a, b] = acc
        _apply(H[0], c, k1)
        for a in range(n):
            tmp[a] = c[a] + 0.5 * h * k1[a]
        _apply(H[1], tmp, k2)
        for a in range(n):
            tmp[a] = c[a] + 0.5 * h * k2[a]
        _apply(H[1], tmp, k3)
        for a in range(n):
            tmp[a] = c[a] + h * k3[a]
        _apply(H[2], tmp, k4)
        for a in range(n):
            c[a] = c[a] + h / 6.0 * (k1[a] + 2.0 * k2[a] + 2.0 * k3[a] + k4[a])
        out[i + 1] = c
    return out


@numba.njit(cache=True)
def _apply(H, c, out):
    # out = -i H c
    n = c.shape[0]
    for a in range(n):
        acc = 0j
        for b in range(n):
            acc += H[a, b] * c[b]
        out[a] = -1j * acc


@numba.njit(cache=True)
def cumulative_rotations(steps):
    """Running products Q_0 = 1, Q_i = Q_{i-1} @ steps[i-1]."""
    m = steps.shape[0]
    k = steps.shape[1]
    out = np.empty((m + 1, k, k))
    for a in range(k):
        for b in range(k):
            out[0, a, b] = 1.0 if a == b else 0.0
    for i in range(m):
        for a in range(k):
            for b in range(k):
                acc = 0.0
                for c in range(k):
                    acc += out[i, a, c] * steps[i, c, b]
                out[i + 1, a, b] = acc
    return out


def warm_up():
    """Trigger compilation so later timings measure the numerics only."""
    mats = np.zeros((1, 2, 2))
    rk4_linear(np.ones(2, dtype=np.complex128), mats, np.zeros((1, 3)), 0.1)
    cumulative_rotations(np.eye(2)[None])
