"""Half-line Fourier integrals of stretched exponentials.

    I(x; a, nu) = int_0^inf exp(i x k - a k^nu) dk,    a = |a| e^{iA}, nu > 1.

For Re a > 0 this converges on the real axis.  Otherwise the value is the
analytic continuation in A, obtained by integrating along a ray
k = r e^{i psi} inside the sector where Re(a e^{i nu psi}) > 0.  The ray
angle is picked to keep the integrand's peak growth small (cancellation)
while decaying as fast as possible.
"""
from __future__ import annotations

import cmath
import math

import numpy as np

from .errors import ConvergenceError

_GL_X, _GL_W = np.polynomial.legendre.leggauss(24)


def _pick_ray(x, a_mod, A, nu):
    lo = (-0.5 * math.pi - A) / nu
    hi = (0.5 * math.pi - A) / nu
    pad = 0.04 * (hi - lo)
    psi = np.linspace(lo + pad, hi - pad, 801)
    c2 = a_mod * np.cos(A + nu * psi)
    c1 = -x * np.sin(psi)
    growing = c1 > 0
    r_star = np.where(growing, (np.maximum(c1, 0) / (nu * c2)) ** (1.0 / (nu - 1.0)), 0.0)
    peak = np.where(growing, (nu - 1.0) / nu * c1 * r_star, 0.0)
    ok = peak <= max(peak.min() + 2.0, 3.0)
    i = np.argmax(np.where(ok, c2, -np.inf))
    return float(psi[i]), float(c1[i]), float(c2[i]), float(peak[i])


def _radius(c1, c2, nu, peak, drop=46.0):
    # log|integrand| = c1 r - c2 r^nu; stop once it is `drop` below the peak
    R = ((drop + peak) / c2) ** (1.0 / nu) + 1.0
    while c1 * R - c2 * R ** nu > peak - drop:
        R *= 1.3
    return R


def _panels(R, n_panels):
    edges = np.linspace(0.0, R, n_panels + 1)
    first = edges[1]
    # geometric grading towards k = 0, where k^nu is not smooth
    grade = first * 2.0 ** -np.arange(40, 0, -1)
    return np.concatenate([[0.0], grade, edges[1:]])


def _gl_sum(f, edges):
    a, b = edges[:-1, None], edges[1:, None]
    r = 0.5 * (a + b) + 0.5 * (b - a) * _GL_X
    w = 0.5 * (b - a) * _GL_W
    v = f(r) * w
    return complex(math.fsum(v.real.ravel()), math.fsum(v.imag.ravel())), float(np.sum(np.abs(v)))


def half_line(x: float, a: complex, nu: float, *, arg_a: float | None = None,
              rtol: float = 1e-12, max_panels: int = 1 << 16) -> complex:
    """int_0^inf exp(i x k - a k^nu) dk, continued in arg(a) when Re a <= 0.

    ``arg_a`` selects the continuation branch of a (defaults to the principal
    argument); it may lie outside (-pi, pi].
    """
    a_mod = abs(a)
    A = cmath.phase(a) if arg_a is None else float(arg_a)
    if a_mod == 0:
        raise ConvergenceError("half_line needs a != 0")
    psi, c1, c2, peak = _pick_ray(x, a_mod, A, nu)
    e = cmath.exp(1j * psi)
    coef = a_mod * cmath.exp(1j * (A + nu * psi))

    def f(r):
        return np.exp(1j * x * r * e - coef * r ** nu)

    R = _radius(c1, c2, nu, peak)
    phase_span = abs(x) * R + a_mod * R ** nu
    n = max(16, int(phase_span / 3.0) + 1)
    if n > max_panels:
        raise ConvergenceError(f"ray quadrature needs {n} panels (limit {max_panels})")
    prev, _ = _gl_sum(f, _panels(R, n))
    while True:
        n *= 2
        cur, abs_sum = _gl_sum(f, _panels(R, n))
        diff = abs(cur - prev)
        floor = 64 * np.finfo(float).eps * abs_sum
        if diff <= max(rtol * abs(cur), floor):
            return cur * e
        if n > max_panels:
            raise ConvergenceError("ray quadrature did not converge", estimate=cur * e, error=diff)
        prev = cur


def damped_arg(a: complex, A: float, damping: float) -> tuple:
    """(a + damping, continuous argument) with the argument tracked from A."""
    b = a + damping
    return b, A + cmath.phase(b / a)


def richardson_zero(dampings, values) -> complex:
    """Polynomial (Neville) extrapolation of values(damping) to damping = 0."""
    x = [float(d) for d in dampings]
    p = [complex(v) for v in values]
    n = len(x)
    for k in range(1, n):
        for i in range(n - k):
            p[i] = ((0.0 - x[i + k]) * p[i] - (0.0 - x[i]) * p[i + 1]) / (x[i] - x[i + k])
    return p[0]
