import os

import mpmath as mp
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", deadline=None, max_examples=25,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("thorough", deadline=None, max_examples=200)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# the three parameter triples the free-particle checks revolve around
STANDARD_TRIPLES = [(1.5, 0.9, 0.3), (1.8, 0.7, -0.2), (1.5, 1.0, 0.0)]


def rel(a, b):
    return abs(a - b) / abs(b)


def green_series_ref(x, t, alpha, beta, theta, hbar=1.0, c_alpha=1.0):
    """G(x, t) from its convergent power series in |x|, in arbitrary precision.

    G = (c/(pi alpha)) sum_{n>=1} (-1)^{n-1} Gamma(n/alpha) sin(pi tau n) (c|x|)^{n-1}/(n-1)!
    with c = (hbar^beta/(C t))^{1/alpha} e^{-i pi (2-beta)/(2 alpha)}.  The
    working precision grows until the largest term is harmless.
    """
    for dps in (40, 80, 160, 320, 640):
        with mp.workdps(dps):
            x_, al, be, th = (mp.mpf(v) for v in (x, alpha, beta, theta))
            tau = (al - mp.sign(x_) * th) / (2 * al)
            c = (mp.mpf(hbar) ** be / (mp.mpf(c_alpha) * t)) ** (1 / al) * mp.expjpi(-(2 - be) / (2 * al))
            w = c * abs(x_)
            total, biggest, n = mp.mpc(0), mp.mpf(0), 1
            term_prev = mp.mpf(1)
            while True:
                term = (-1) ** (n - 1) * mp.gamma(n / al) * mp.sinpi(tau * n) * w ** (n - 1) / mp.factorial(n - 1)
                total += term
                biggest = max(biggest, abs(term))
                if n > 20 and abs(term) + abs(term_prev) < mp.mpf(10) ** (-25) * abs(total):
                    break
                term_prev = term
                n += 1
            val = c / (mp.pi * al) * total
            if biggest / abs(val) < mp.mpf(10) ** (dps - 25):
                return complex(val)
    raise RuntimeError("reference series did not settle")


def mellin_kernel_ref(upper, lower, m, n, s):
    """Gamma-ratio kernel composed directly from mpmath's Gamma."""
    s = mp.mpc(s)
    val = mp.mpc(1)
    for j, (b, B) in enumerate(lower):
        val *= mp.gamma(b + B * s) if j < m else 1 / mp.gamma(1 - b - B * s)
    for j, (a, A) in enumerate(upper):
        val *= mp.gamma(1 - a - A * s) if j < n else 1 / mp.gamma(a + A * s)
    return complex(val)


@pytest.fixture
def standard_triples():
    return list(STANDARD_TRIPLES)


# acceptance lines, printed once at the end of the session
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
