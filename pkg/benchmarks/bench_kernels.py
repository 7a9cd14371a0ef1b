"""Compare the accelerated and pure-numpy kernel paths.

Run with: python3 benchmarks/bench_kernels.py
The accelerated path is compiled on first use; a warmup call is timed out of
band so the table reflects steady-state throughput.
"""

import time

import numpy as np

from photon_smatrix import _kernels


def _time(fn, repeats=5):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def main():
    rng = np.random.default_rng(0)
    n = 4
    deltas = np.sort(rng.normal(0.0, 2.0, n))
    gammas = rng.uniform(0.5, 1.5, n)
    a = np.diag(deltas).astype(complex) - 1j * np.sqrt(np.outer(gammas, gammas))
    drive = np.sqrt(2.0 * gammas).astype(complex)
    energies = rng.normal(0.0, 3.0, 200_000)
    k1 = rng.normal(0.0, 3.0, 200_000)
    k2 = rng.normal(0.0, 3.0, 200_000)
    p1 = rng.normal(0.0, 3.0, 200_000)
    rk4_args = (a, drive, 0.8, 0.005, 40_000, 35_000)

    cases = [
        ("s_batch (200k energies, N=4)",
         lambda: _kernels._s_batch_py(a, drive, energies),
         lambda: _kernels._s_batch_nb(a, drive, energies)),
        ("t2_simplified_batch (200k points, N=4)",
         lambda: _kernels._t2_simplified_batch_py(deltas, gammas, k1, k2, p1),
         lambda: _kernels._t2_simplified_batch_nb(deltas, gammas, k1, k2, p1)),
        ("rk4_driven (40k steps, N=4)",
         lambda: _kernels._rk4_driven_py(*rk4_args),
         lambda: _kernels._rk4_driven_nb(*rk4_args)),
    ]

    if not _kernels._HAVE_NUMBA:
        print("numba not installed; only the pure-numpy path is available")

    print(f"{'kernel':44s} {'numpy [s]':>10s} {'numba [s]':>10s} {'speedup':>8s}")
    for name, py_fn, nb_fn in cases:
        t_py = _time(py_fn)
        if _kernels._HAVE_NUMBA:
            nb_fn()  # warmup/compile
            t_nb = _time(nb_fn)
            print(f"{name:44s} {t_py:10.4f} {t_nb:10.4f} {t_py / t_nb:7.1f}x")
        else:
            print(f"{name:44s} {t_py:10.4f} {'-':>10s} {'-':>8s}")


if __name__ == "__main__":
    main()
