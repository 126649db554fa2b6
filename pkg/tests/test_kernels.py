"""The numba and numpy kernel backends must agree."""
import math
import os
import subprocess
import sys

import numpy as np
import pytest

from fracschro import _kernels_numba as nb
from fracschro import _kernels_numpy as npk
from fracschro import BACKEND


@pytest.fixture(scope="module")
def rng():
    return np.random.default_rng(20240611)


def _same_gamma(a, b, rtol):
    # branches of the imaginary part may differ by 2 pi k
    return np.allclose(np.exp(a), np.exp(b), rtol=rtol, atol=0)


def test_loggamma_backends_agree(rng):
    z = rng.uniform(-40, 40, 5000) + 1j * rng.uniform(-60, 60, 5000)
    assert _same_gamma(nb.loggamma(z), npk.loggamma(z), 1e-12)
    assert np.allclose(nb.loggamma(z).real, npk.loggamma(z).real, rtol=1e-13, atol=1e-12)


def test_loggamma_near_real_axis(rng):
    z = rng.uniform(-20, 20, 2000) + 1j * rng.uniform(-1e-3, 1e-3, 2000)
    z = z[np.abs(z - np.round(z.real)) > 1e-3]
    assert _same_gamma(nb.loggamma(z), npk.loggamma(z), 1e-12)


def test_log_kernel_backends_agree(rng):
    s = rng.uniform(-3, 3, 3000) + 1j * rng.uniform(-300, 300, 3000)
    num_c, num_C = np.array([1.0, 0.0]), np.array([1.0, -0.5])
    den_c, den_C = np.array([1.0, 0.2]), np.array([0.7, 0.4])
    a = nb.log_kernel(s, num_c, num_C, den_c, den_C)
    b = npk.log_kernel(s, num_c, num_C, den_c, den_C)
    assert np.allclose(a.real, b.real, rtol=1e-12, atol=1e-10)
    assert np.allclose(np.exp(1j * (a.imag - b.imag)), 1.0, atol=1e-9)


@pytest.mark.parametrize("beta", [0.2, 0.5, 0.9])
def test_caputo_backends_agree(beta):
    t = np.linspace(0, 3, 1025)
    f = np.exp(-1j * t) * (1 + t ** beta)
    h = t[1] - t[0]
    g = math.gamma(2 - beta)
    a = nb.caputo_l1(f, h, beta, g)
    b = npk.caputo_l1(f, h, beta, g)
    assert a.shape == b.shape == (t.size - 1,)
    assert np.allclose(a, b, rtol=1e-12, atol=1e-12)


def test_caputo_of_linear_function_is_exact():
    # the L1 scheme integrates piecewise-linear data exactly: D^b t = t^{1-b}/Gamma(2-b)
    beta = 0.4
    t = np.linspace(0, 2, 257)
    h = t[1] - t[0]
    for k in (nb, npk):
        d = k.caputo_l1(t.astype(complex), h, beta, math.gamma(2 - beta))
        assert np.allclose(d, t[1:] ** (1 - beta) / math.gamma(2 - beta), rtol=1e-12)


@pytest.mark.parametrize("flag, expected", [("0", "numpy"), ("1", "numba")])
def test_env_flag_selects_backend(flag, expected):
    env = dict(os.environ, FRACSCHRO_NUMBA=flag)
    out = subprocess.run([sys.executable, "-c", "import fracschro; print(fracschro.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == expected


def test_numpy_backend_end_to_end():
    code = ("import fracschro as f; "
            "g = f.GreenEval(f.FractionalParams(1.5, 0.9, 0.3)); "
            "print(repr(f.green_function(g, 1.0, 1.0)))")
    vals = []
    for flag in ("0", "1"):
        env = dict(os.environ, FRACSCHRO_NUMBA=flag)
        out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
        vals.append(complex(out.stdout.strip()))
    assert abs(vals[0] - vals[1]) <= 1e-12 * abs(vals[1])


def test_default_backend_is_numba():
    if os.environ.get("FRACSCHRO_NUMBA", "1") not in ("0", "false", "no", "off"):
        assert BACKEND == "numba"
