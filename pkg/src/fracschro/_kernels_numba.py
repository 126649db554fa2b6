"""Compiled hot loops.

Same signatures as :mod:`fracschro._kernels_numpy`; the selection happens in
:mod:`fracschro._backend`.
"""
import cmath
import math

import numpy as np
from numba import njit, prange

_G = 7.0
_P = np.array([
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
])
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)
_LOG_PI = math.log(math.pi)


@njit(cache=True)
def _lanczos(z):
    # log Gamma(z) for Re z >= 1/2
    w = z - 1.0
    acc = _P[0] + 0j
    for k in range(1, 9):
        acc += _P[k] / (w + k)
    t = w + _G + 0.5
    return _HALF_LOG_2PI + (w + 0.5) * cmath.log(t) - t + cmath.log(acc)


@njit(cache=True)
def _log_sin_pi(z):
    # log sin(pi z) on some branch, stable for large |Im z|
    n = math.floor(z.real + 0.5)
    r = z - n
    shift = 1j * math.pi * n
    if abs(r.imag) < 1.0:
        return cmath.log(cmath.sin(math.pi * r)) + shift
    if r.imag > 0:
        e = cmath.exp(2j * math.pi * r)
        return -1j * math.pi * r + cmath.log((e - 1.0) / 2j) + shift
    e = cmath.exp(-2j * math.pi * r)
    return 1j * math.pi * r + cmath.log((1.0 - e) / 2j) + shift


@njit(cache=True)
def loggamma_scalar(z):
    if z.real < 0.5:
        return _LOG_PI - _log_sin_pi(z) - _lanczos(1.0 - z)
    return _lanczos(z)


@njit(parallel=True, cache=True)
def loggamma(z):
    out = np.empty(z.shape[0], dtype=np.complex128)
    for i in prange(z.shape[0]):
        out[i] = loggamma_scalar(z[i])
    return out


@njit(parallel=True, cache=True)
def log_kernel(s, num_c, num_C, den_c, den_C):
    """Sum of log Gamma(c + C s) over numerator minus denominator factors."""
    out = np.empty(s.shape[0], dtype=np.complex128)
    for i in prange(s.shape[0]):
        acc = 0j
        for j in range(num_c.shape[0]):
            acc += loggamma_scalar(num_c[j] + num_C[j] * s[i])
        for j in range(den_c.shape[0]):
            acc -= loggamma_scalar(den_c[j] + den_C[j] * s[i])
        out[i] = acc
    return out


@njit(parallel=True, cache=True)
def caputo_l1(f, h, beta, gamma_2mb):
    """L1 Caputo derivative at t_1..t_N of samples f_0..f_N."""
    n_pts = f.shape[0] - 1
    dre = np.empty(n_pts)
    dim = np.empty(n_pts)
    for j in range(n_pts):
        d = f[j + 1] - f[j]
        dre[j] = d.real
        dim[j] = d.imag
    b = np.empty(n_pts)
    for k in range(n_pts):
        b[k] = (k + 1.0) ** (1.0 - beta) - k ** (1.0 - beta)
    scale = h ** (-beta) / gamma_2mb
    out = np.empty(n_pts, dtype=np.complex128)
    for n in prange(1, n_pts + 1):
        # real and imaginary sums kept apart so the loop vectorizes
        ar = 0.0
        ai = 0.0
        for j in range(n):
            w = b[n - j - 1]
            ar += w * dre[j]
            ai += w * dim[j]
        out[n - 1] = scale * complex(ar, ai)
    return out
