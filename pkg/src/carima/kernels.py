"""Hot numeric kernels: Kalman recursion and ARMA simulation.

Both kernels exist twice: a plain-numpy implementation and a numba
``@njit``-compiled twin built from the same source function, so the two
paths cannot drift apart. The compiled path is used when numba imports
cleanly and the ``CARIMA_NUMBA`` environment variable is not set to
``0``/``false``/``no``/``off``. ``benchmarks/bench_kernels.py`` times the
two side by side.

Everything operates on the fully expanded (seasonal x regular) lag
polynomials: ``phi`` are the AR coefficients of ``1 - phi_1 L - ...`` and
``theta`` the MA coefficients of ``1 + theta_1 L + ...``, both without the
leading 1.
"""

from __future__ import annotations

import os

import numpy as np

__all__ = [
    "NUMBA_ENABLED",
    "kalman_filter",
    "kalman_filter_numpy",
    "kalman_filter_jit",
    "arma_recursion",
    "arma_recursion_numpy",
    "arma_recursion_jit",
]


def _kalman_filter_impl(z, phi, theta):
    """One filtering pass of a zero-mean ARMA(p, q) with unit shock variance.

    State space is the companion ("Hamilton") form with state dimension
    r = max(p, q + 1), exact stationary initialization from the discrete
    Lyapunov equation, and no measurement noise. Returns

        (sum_log_v, ssq, eps, x_final)

    where v_t are the relative innovation variances, ssq = sum(e_t^2 / v_t),
    eps_t = e_t / sqrt(v_t) are standardized innovations (variance sigma^2
    when the true shock variance is sigma^2), and x_final is the filtered
    state after the last observation (used for out-of-sample prediction).
    A non-positive innovation variance reports sum_log_v = inf.
    """
    n = z.shape[0]
    p = phi.shape[0]
    q = theta.shape[0]
    r = max(p, q + 1)

    A = np.zeros((r, r))
    for i in range(p):
        A[0, i] = phi[i]
    for i in range(r - 1):
        A[i + 1, i] = 1.0
    h = np.zeros(r)
    h[0] = 1.0
    for j in range(q):
        h[j + 1] = theta[j]

    # stationary covariance: solve (I - A (x) A) vec(P) = vec(e1 e1')
    m = r * r
    M = np.zeros((m, m))
    for i in range(r):
        for j in range(r):
            row = i * r + j
            M[row, row] += 1.0
            for k in range(r):
                for l in range(r):
                    M[row, k * r + l] -= A[i, k] * A[j, l]
    b = np.zeros(m)
    b[0] = 1.0
    Pp = np.linalg.solve(M, b).reshape(r, r).copy()
    xp = np.zeros(r)

    eps = np.empty(n)
    x_final = np.zeros(r)
    sum_log_v = 0.0
    ssq = 0.0
    for t in range(n):
        Ph = Pp @ h
        v = h @ Ph
        if v <= 0.0 or not np.isfinite(v):
            return np.inf, np.inf, eps, x_final
        e = z[t] - h @ xp
        K = Ph / v
        xf = xp + K * e
        Pf = Pp - K.reshape(r, 1) * Ph.reshape(1, r)
        sum_log_v += np.log(v)
        ssq += e * e / v
        eps[t] = e / np.sqrt(v)
        xp = A @ xf
        Pp = A @ Pf @ A.T
        Pp[0, 0] += 1.0
        Pp = 0.5 * (Pp + Pp.T)
        if t == n - 1:
            x_final = xf
    return sum_log_v, ssq, eps, x_final


def _arma_recursion_impl(phi, theta, eps):
    """Filter shocks through an ARMA(p, q):
    u_t = sum_i phi_i u_{t-i} + eps_t + sum_j theta_j eps_{t-j},
    with zero pre-sample values."""
    n = eps.shape[0]
    p = phi.shape[0]
    q = theta.shape[0]
    u = np.zeros(n)
    for t in range(n):
        acc = eps[t]
        for j in range(q):
            if t - 1 - j >= 0:
                acc += theta[j] * eps[t - 1 - j]
        for i in range(p):
            if t - 1 - i >= 0:
                acc += phi[i] * u[t - 1 - i]
        u[t] = acc
    return u


kalman_filter_numpy = _kalman_filter_impl
arma_recursion_numpy = _arma_recursion_impl

kalman_filter_jit = None
arma_recursion_jit = None

_flag = os.environ.get("CARIMA_NUMBA", "").strip().lower()
_want_numba = _flag not in ("0", "false", "no", "off")

NUMBA_ENABLED = False
if _want_numba:
    try:
        from numba import njit
    except ImportError:
        pass
    else:
        kalman_filter_jit = njit(cache=True)(_kalman_filter_impl)
        arma_recursion_jit = njit(cache=True)(_arma_recursion_impl)
        NUMBA_ENABLED = True

if NUMBA_ENABLED:
    kalman_filter = kalman_filter_jit
    arma_recursion = arma_recursion_jit
else:
    kalman_filter = kalman_filter_numpy
    arma_recursion = arma_recursion_numpy
