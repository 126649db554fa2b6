"""Vectorized numpy versions of the hot loops (no compiler required)."""
import math

import numpy as np

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


def _lanczos(z):
    w = z - 1.0
    acc = np.full_like(w, _P[0])
    for k in range(1, 9):
        acc = acc + _P[k] / (w + k)
    t = w + _G + 0.5
    return _HALF_LOG_2PI + (w + 0.5) * np.log(t) - t + np.log(acc)


def _log_sin_pi(z):
    n = np.floor(z.real + 0.5)
    r = z - n
    shift = 1j * np.pi * n
    out = np.empty_like(z)
    small = np.abs(r.imag) < 1.0
    up = ~small & (r.imag > 0)
    down = ~small & ~up
    out[small] = np.log(np.sin(np.pi * r[small]))
    e = np.exp(2j * np.pi * r[up])
    out[up] = -1j * np.pi * r[up] + np.log((e - 1.0) / 2j)
    e = np.exp(-2j * np.pi * r[down])
    out[down] = 1j * np.pi * r[down] + np.log((1.0 - e) / 2j)
    return out + shift


def loggamma(z):
    z = np.asarray(z, dtype=np.complex128)
    out = np.empty_like(z)
    left = z.real < 0.5
    out[~left] = _lanczos(z[~left])
    zl = z[left]
    out[left] = _LOG_PI - _log_sin_pi(zl) - _lanczos(1.0 - zl)
    return out


def log_kernel(s, num_c, num_C, den_c, den_C):
    out = np.zeros(s.shape[0], dtype=np.complex128)
    for c, C in zip(num_c, num_C):
        out += loggamma(c + C * s)
    for c, C in zip(den_c, den_C):
        out -= loggamma(c + C * s)
    return out


def caputo_l1(f, h, beta, gamma_2mb):
    n_pts = f.shape[0] - 1
    df = np.diff(f)
    k = np.arange(n_pts, dtype=float)
    b = (k + 1.0) ** (1.0 - beta) - k ** (1.0 - beta)
    # out[n-1] = sum_j b[n-1-j] df[j]: a causal convolution
    conv = np.convolve(b, df.real)[:n_pts] + 1j * np.convolve(b, df.imag)[:n_pts]
    return h ** (-beta) / gamma_2mb * conv
