"""Mittag-Leffler, Wright M and Airy functions."""
from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import integrate, special

from .errors import ConvergenceError, DomainError


@dataclass(frozen=True)
class SeriesConfig:
    max_terms: int = 4000
    tail_tolerance: float = 1e-17

    def __post_init__(self):
        if self.max_terms < 1:
            raise DomainError("max_terms >= 1 violated")
        if not self.tail_tolerance > 0:
            raise DomainError("tail_tolerance > 0 violated")


DEFAULT_SERIES = SeriesConfig()


def _fsum_complex(terms) -> complex:
    terms = list(terms)
    return complex(math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms))


_EPS = float(np.finfo(float).eps)
_MIN_DIGITS = 8


def _finish(terms) -> complex:
    try:
        total = _fsum_complex(terms)
    except OverflowError:
        raise ConvergenceError("series partial sums overflow") from None
    # each term carries a relative rounding error of a few eps
    noise = 4.0 * _EPS * math.fsum(abs(t) for t in terms)
    if noise > 10.0 ** -_MIN_DIGITS * abs(total):
        raise ConvergenceError("series sum lost its accuracy to cancellation",
                               estimate=total, error=noise)
    return total


def sum_series(term, cfg: SeriesConfig, min_terms: int = 0) -> complex:
    """Sum term(0), term(1), ... with compensated summation.

    Stops once two consecutive nonzero terms fall below
    tail_tolerance * (1 + |partial sum|) and at least ``min_terms`` terms
    have been taken.  Exactly-zero terms do not count towards the test.
    Raises ConvergenceError when cancellation between large terms leaves
    fewer than ``_MIN_DIGITS`` correct digits.
    """
    terms = []
    small_run = zero_run = 0
    partial = 0j
    for n in range(cfg.max_terms):
        try:
            t = term(n)
        except OverflowError:
            raise ConvergenceError(f"series term {n} overflowed", estimate=partial) from None
        if not (math.isfinite(t.real) and math.isfinite(t.imag)):
            raise ConvergenceError(f"series term {n} overflowed", estimate=partial)
        terms.append(t)
        partial += t
        if t == 0:
            # isolated zeros are structural; a long run means the terms underflowed
            zero_run += 1
            if zero_run >= 64 and n + 1 >= min_terms:
                return _finish(terms)
            continue
        zero_run = 0
        if abs(t) < cfg.tail_tolerance * (1.0 + abs(partial)):
            small_run += 1
        else:
            small_run = 0
        if small_run >= 2 and n + 1 >= min_terms:
            return _finish(terms)
    total = _fsum_complex(terms)
    raise ConvergenceError(
        f"series did not converge in {cfg.max_terms} terms", estimate=total, error=abs(terms[-1])
    )


# ---------------------------------------------------------------------------
# Mittag-Leffler


_SERIES_RADIUS = 8.0  # use the power series while |z|**(1/beta) stays below this


def mittag_leffler(beta: float, z, cfg: SeriesConfig = DEFAULT_SERIES) -> complex:
    """One-parameter Mittag-Leffler function E_beta(z), 0 < beta <= 1."""
    if not 0 < beta <= 1:
        raise DomainError(f"0 < beta <= 1 violated (beta={beta})")
    z = complex(z)
    if beta == 1.0:
        return cmath.exp(z)
    if z == 0:
        return 1.0 + 0j
    if abs(z) ** (1.0 / beta) <= _SERIES_RADIUS:
        return _ml_series(beta, z, cfg)
    return _ml_integral(beta, z, cfg)


def _ml_series(beta, z, cfg):
    if z == 0:
        return 1.0 + 0j
    logz = cmath.log(z)
    peak = int(abs(z) ** (1.0 / beta)) + 2

    def term(n):
        if n == 0:
            return 1.0 + 0j
        return cmath.exp(n * logz - special.gammaln(beta * n + 1.0))

    return sum_series(term, cfg, min_terms=peak)


def _ml_kernel(beta, z, chi):
    # integrand on a ray chi in C, z fixed
    num = -z * math.sin(math.pi * beta) / (beta * math.pi)
    den = chi * chi - 2.0 * chi * z * math.cos(math.pi * beta) + z * z
    return num * np.exp(-chi ** (1.0 / beta)) / den


def _ray_quad(f, split):
    """Integral of complex f over (0, inf), split at a near-singular radius."""
    kw = dict(limit=400, epsabs=0.0, epsrel=1e-13)
    total, err = 0j, 0.0
    with warnings.catch_warnings():
        # quad's roundoff notice; the caller checks the error estimate
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        for a, b in ((0.0, split), (split, np.inf)):
            re, e1 = integrate.quad(lambda r: f(r).real, a, b, **kw)
            im, e2 = integrate.quad(lambda r: f(r).imag, a, b, **kw)
            total += complex(re, im)
            err += e1 + e2
    return total, err


def _ml_integral(beta, z, cfg):
    # Hankel-contour representation: a ray integral plus the exponential
    # contribution when the singularity chi = z e^{-i beta pi} lies in the
    # sector swept by the contour.
    if z.imag < 0:
        return _ml_integral(beta, z.conjugate(), cfg).conjugate()
    phi = abs(cmath.phase(z))  # in [0, pi]; -0.0 imaginary parts give -pi
    bp = beta * math.pi
    margin = min(0.15 * bp, 0.3)  # keeps the tilted ray inside the decay sector
    expo = lambda: cmath.exp(z ** (1.0 / beta)) / beta
    if abs(phi - bp) >= 0.5 * margin:
        f = lambda r: _ml_kernel(beta, z, r)
        val, err = _ray_quad(f, abs(z))
        if phi < bp:
            val += expo()
    else:
        # singularity close to the positive axis: tilt the ray above it; the
        # exponential term then always contributes
        delta = 2.0 * margin
        e = cmath.exp(1j * delta)
        f = lambda r: _ml_kernel(beta, z, r * e) * e
        val, err = _ray_quad(f, abs(z))
        val += expo()
    tol = max(1e-11 * abs(val), 1e-300)
    if err > 1e3 * tol:
        raise ConvergenceError("Mittag-Leffler integral did not converge", estimate=val, error=err)
    return val


# ---------------------------------------------------------------------------
# Wright M


def wright_m(nu: float, z, cfg: SeriesConfig = DEFAULT_SERIES, form: str = "direct") -> complex:
    """Wright M-function of order 0 < nu < 1.

    ``form="direct"`` sums (-z)^n / (n! Gamma(1 - nu - nu n)); ``form="sine"``
    sums the reflected series (1/pi) (-z)^(n-1)/(n-1)! Gamma(nu n) sin(nu n pi).
    """
    if not 0 < nu < 1:
        raise DomainError(f"0 < nu < 1 violated (nu={nu})")
    z = complex(z)
    if form == "direct":
        def term(n):
            w = 1.0 - nu - nu * n
            if w > -160:
                rg = special.rgamma(w)
                if rg == 0:
                    return 0j
                return (-z) ** n / math.factorial(n) * rg if n < 170 else _wm_log_term(z, n, w)
            return _wm_log_term(z, n, w)
    elif form == "sine":
        def term(n):
            k = n + 1
            s = math.sin(nu * k * math.pi)
            if s == 0 or (z == 0 and n > 0):
                return 0j
            if n == 0:
                return special.gamma(nu) * s / math.pi + 0j
            return cmath.exp(n * cmath.log(-z) - special.gammaln(k) + special.gammaln(nu * k)) * s / math.pi
    else:
        raise DomainError(f"unknown series form {form!r}")
    if z == 0:
        return term(0)
    return sum_series(term, cfg, min_terms=8)


def _wm_log_term(z, n, w):
    lg = special.loggamma(complex(w))
    if not np.isfinite(lg.real):
        return 0j
    return cmath.exp(n * cmath.log(-z) - special.gammaln(n + 1.0) - lg)


# ---------------------------------------------------------------------------
# Airy


_AI_C1 = 1.0 / (3.0 ** (2.0 / 3.0) * math.gamma(2.0 / 3.0))
_AI_C2 = 1.0 / (3.0 ** (1.0 / 3.0) * math.gamma(1.0 / 3.0))


def airy_ai(u, cfg: SeriesConfig = DEFAULT_SERIES) -> complex:
    """Airy Ai from its Maclaurin series (intended for moderate |u|)."""
    u = complex(u)
    u3 = u ** 3
    f_terms = [1.0 + 0j]
    g_terms = [u]
    k = 1
    while k < cfg.max_terms:
        f_terms.append(f_terms[-1] * u3 / ((3 * k - 1) * (3 * k)))
        g_terms.append(g_terms[-1] * u3 / ((3 * k) * (3 * k + 1)))
        f, g = f_terms[-1], g_terms[-1]
        if abs(f) + abs(g) < cfg.tail_tolerance and k > abs(u):
            break
        k += 1
    else:
        raise ConvergenceError("Airy series did not converge")
    val = _AI_C1 * _fsum_complex(f_terms) - _AI_C2 * _fsum_complex(g_terms)
    # Ai decays for u > 0 while both series grow: watch the cancellation
    noise = 4.0 * _EPS * (_AI_C1 * math.fsum(map(abs, f_terms)) + _AI_C2 * math.fsum(map(abs, g_terms)))
    if noise > 10.0 ** -_MIN_DIGITS * abs(val):
        raise ConvergenceError("Airy series lost its accuracy to cancellation", estimate=val, error=noise)
    return val
