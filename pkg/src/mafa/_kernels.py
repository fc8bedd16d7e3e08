"""Compiled inner loops for the firefly search.

These mirror :mod:`mafa.problem` and :func:`mafa.firefly.move_firefly`
exactly; the test suite checks them against the numpy reference path.
Positions are in wavelengths, directions are passed as cosines.
"""

import numba
import numpy as np

_TWO_PI = 2.0 * np.pi


@numba.njit(cache=True)
def gain(w, d, cos_theta):
    re = 0.0
    im = 0.0
    for i in range(d.shape[0]):
        a = _TWO_PI * d[i] * cos_theta
        ca = np.cos(a)
        sa = np.sin(a)
        wr = w[i].real
        wi = w[i].imag
        # conj(w_i) * exp(j a)
        re += wr * ca + wi * sa
        im += wr * sa - wi * ca
    return re * re + im * im


@numba.njit(cache=True)
def brightness(w, d, cos_t, cos_p, L, L0, I0, b1, b2, b3, rho, lam):
    """Return ``(brightness, min_intended_gain)`` for one candidate."""
    g = np.inf
    for t in range(cos_t.shape[0]):
        x = gain(w, d, cos_t[t])
        if x < g:
            g = x
    n = d.shape[0]
    p = 0.0
    v = -d[0]
    if v > 0.0:
        p += b1 * v * v
    v = d[n - 1] - L
    if v > 0.0:
        p += b2 * v * v
    for i in range(1, n):
        v = L0 - d[i] + d[i - 1]
        if v > 0.0:
            p += b3[i - 1] * v * v
    for q in range(cos_p.shape[0]):
        v = gain(w, d, cos_p[q]) - I0
        if v > 0.0:
            p += rho[q] * v * v
    sq = 0.0
    for i in range(n):
        sq += w[i].real * w[i].real + w[i].imag * w[i].imag
    v = np.sqrt(sq) - 1.0
    if v > 0.0:
        p += lam * v * v
    return g - p, g


@numba.njit(cache=True)
def evaluate_all(W, D, B, G, cos_t, cos_p, L, L0, I0, b1, b2, b3, rho, lam):
    for k in range(D.shape[0]):
        B[k], G[k] = brightness(W[k], D[k], cos_t, cos_p, L, L0, I0, b1, b2, b3, rho, lam)


@numba.njit(cache=True)
def move(wj, dj, wk, dk, alpha, beta0, gamma, noise_w, noise_d):
    """Move firefly j toward k in place."""
    n = dj.shape[0]
    rw = 0.0
    rd = 0.0
    for i in range(n):
        dw = wk[i] - wj[i]
        rw += dw.real * dw.real + dw.imag * dw.imag
        dd = dk[i] - dj[i]
        rd += dd * dd
    aw = beta0 * np.exp(-gamma * rw)
    ad = beta0 * np.exp(-gamma * rd)
    for i in range(n):
        wj[i] = wj[i] + aw * (wk[i] - wj[i]) + alpha * noise_w[i]
        dj[i] = dj[i] + ad * (dk[i] - dj[i]) + alpha * noise_d[i]


@numba.njit(cache=True)
def generation(W, D, B, G, inc_w, inc_d, inc, cos_t, cos_p, L, L0, I0,
               b1, b2, b3, rho, lam, beta0, gamma, alpha, noise_w, noise_d):
    """One pass of the (j, k) double loop.

    ``inc`` holds ``[incumbent brightness, incumbent min gain]`` and is
    updated together with ``inc_w``/``inc_d``. Fireflies move in place, so
    a moved firefly is seen with its new state by later iterations.
    Returns the number of brightness evaluations performed.
    """
    omega = D.shape[0]
    evaluations = 0
    for j in range(omega):
        for k in range(omega):
            if B[j] > inc[0]:
                inc[0] = B[j]
                inc[1] = G[j]
                inc_w[:] = W[j]
                inc_d[:] = D[j]
            if B[k] > inc[0]:
                inc[0] = B[k]
                inc[1] = G[k]
                inc_w[:] = W[k]
                inc_d[:] = D[k]
            if B[k] > B[j]:
                move(W[j], D[j], W[k], D[k], alpha, beta0, gamma, noise_w[j, k], noise_d[j, k])
                B[j], G[j] = brightness(W[j], D[j], cos_t, cos_p, L, L0, I0, b1, b2, b3, rho, lam)
                evaluations += 1
    return evaluations
