#!/usr/bin/env python3
"""Time the numba kernels against their pure-numpy fallbacks.

Runs every hot kernel on representative problem sizes with both backends in
one process (the library itself binds to one backend at import; here the two
implementations are imported directly).  Numba functions are called once
before timing so compilation is excluded.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import time

import numpy as np

from vdwdim import kernels, multipole
from vdwdim.backends import HAVE_NUMBA


def _time(fn, *args, repeat=5):
    fn(*args)  # warmup / jit
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def _cases(rng):
    R = 10.0
    pts = rng.uniform(-0.5, 0.5, (200_000, 3))
    pts2 = rng.uniform(-0.5, 0.5, (200_000, 3))
    yield "four_site_batch (200k samples)", (
        kernels.four_site_batch_numpy,
        "four_site_batch_numba",
    ), (R, pts, pts2)

    x = np.linspace(-4, 4, 700)
    yield "four_site_grid_1d (700x700)", (
        kernels.four_site_grid_1d_numpy,
        "four_site_grid_1d_numba",
    ), (R, x, x)

    xi = np.linspace(-4, 4, 40)
    g = np.stack(np.meshgrid(xi, xi, indexing="ij"), axis=-1).reshape(-1, 2)
    cloud = np.zeros((g.shape[0], 3))
    cloud[:, :2] = g
    w = rng.random(cloud.shape[0])
    yield "pair_expectation (1600x1600 grid, 4D quadrature)", (
        kernels.pair_expectation_numpy,
        "pair_expectation_numba",
    ), (R, cloud, w, cloud, w)

    series = multipole.expand_interaction(3, 7)
    powers, coeffs, ea, eb = multipole.series_arrays(series)
    yield "series_batch (N=7, 100k samples)", (
        kernels.series_batch_numpy,
        "series_batch_numba",
    ), (powers, coeffs, ea, eb, R, pts[:100_000], pts2[:100_000])


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    print(f"numba available: {HAVE_NUMBA}")
    print(f"{'kernel':<50} {'numpy':>10} {'numba':>10} {'speedup':>8}")
    for label, (numpy_fn, numba_name), call_args in _cases(rng):
        t_np = _time(numpy_fn, *call_args, repeat=args.repeat)
        if HAVE_NUMBA:
            numba_fn = getattr(kernels, numba_name)
            t_nb = _time(numba_fn, *call_args, repeat=args.repeat)
            ref = numpy_fn(*call_args)
            got = numba_fn(*call_args)
            np.testing.assert_allclose(got, ref, rtol=1e-12, atol=1e-15)
            print(
                f"{label:<50} {t_np*1e3:>8.2f}ms {t_nb*1e3:>8.2f}ms "
                f"{t_np/t_nb:>7.1f}x"
            )
        else:
            print(f"{label:<50} {t_np*1e3:>8.2f}ms {'-':>10} {'-':>8}")


if __name__ == "__main__":
    main()
