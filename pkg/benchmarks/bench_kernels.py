"""Compare the numba and numpy kernel backends.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Both kernel modules are imported directly, so the FRACSCHRO_NUMBA flag does
not matter here.  The first numba call (compilation or cache load) is timed
separately and excluded from the steady-state numbers.
"""
import argparse
import time

import numpy as np

from fracschro import _kernels_numba as nb
from fracschro import _kernels_numpy as npk


def _best(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases(rng):
    z = rng.uniform(-30, 30, 200_000) + 1j * rng.uniform(-60, 60, 200_000)
    s = 0.3 + 1j * np.linspace(-200, 200, 100_000)
    num_c, num_C = np.array([0.0, 0.2]), np.array([1.0, 0.6])
    den_c, den_C = np.array([0.4]), np.array([0.6])
    t = np.linspace(0, 4, 8193)
    f = np.exp(-1j * t) * (1 + 0.1 * t ** 0.5)
    h = t[1] - t[0]
    return {
        "loggamma (2e5 points)": lambda k: k.loggamma(z),
        "log_kernel (1e5 points)": lambda k: k.log_kernel(s, num_c, num_C, den_c, den_C),
        "caputo_l1 (8193 samples)": lambda k: k.caputo_l1(f, h, 0.6, 1.0 / 1.1),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    rng = np.random.default_rng(7)
    print(f"{'kernel':28s} {'numpy [s]':>10s} {'numba [s]':>10s} {'speedup':>8s} {'max rel diff':>13s}  first numba call [s]")
    for name, call in cases(rng).items():
        t0 = time.perf_counter()
        ref_nb = call(nb)
        first = time.perf_counter() - t0
        ref_np = call(npk)
        diff = float(np.max(np.abs(ref_nb - ref_np) / np.maximum(np.abs(ref_np), 1e-300)))
        if "log" in name:
            # log-Gamma branches may differ by 2 pi i; compare exponentials' phases via real part
            diff = float(np.max(np.abs(np.exp(1j * (ref_nb.imag - ref_np.imag)) - 1) + np.abs(ref_nb.real - ref_np.real)
                                / np.maximum(np.abs(ref_np.real), 1.0)))
        t_np = _best(lambda: call(npk), args.repeat)
        t_nb = _best(lambda: call(nb), args.repeat)
        print(f"{name:28s} {t_np:10.4f} {t_nb:10.4f} {t_np / t_nb:8.1f} {diff:13.2e}  {first:.3f}")


if __name__ == "__main__":
    main()
