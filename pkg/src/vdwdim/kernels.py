"""Hot numeric kernels, each with a numba and a pure-numpy implementation.

Everything here works on plain float64 arrays: the four-site Coulomb
combination evaluated over batches of electron configurations, the same
kernel tabulated on 1D quadrature grids, tensor-product quadrature sums for
ground-state expectation values, and batch evaluation of a truncated
interaction series.  Electron positions are always passed as (n, 3) arrays,
zero-padded when the physical dimension is lower; the inter-atomic axis is x.

The public names (``four_site_batch``, ``four_site_grid_1d``,
``pair_expectation``, ``series_batch``) bind to the backend chosen in
:mod:`vdwdim.backends`.  Both implementations stay importable under their
``_numpy`` / ``_numba`` suffixes so they can be cross-checked and benchmarked.
"""

import math

import numpy as np

from .backends import HAVE_NUMBA, njit

_CHUNK = 4096


def four_site_batch_numpy(R, pts_a, pts_b):
    """1/R + 1/|Rx - ra + rb| - 1/|Rx - ra| - 1/|Rx + rb| for paired samples.

    ``pts_a`` and ``pts_b`` have shape (n, 3); sample i of each is one
    two-electron configuration.  The Coulomb prefactor is not applied.
    """
    ax, ay, az = pts_a[:, 0], pts_a[:, 1], pts_a[:, 2]
    bx, by, bz = pts_b[:, 0], pts_b[:, 1], pts_b[:, 2]
    d_ab = np.sqrt((R - ax + bx) ** 2 + (ay - by) ** 2 + (az - bz) ** 2)
    d_a = np.sqrt((R - ax) ** 2 + ay**2 + az**2)
    d_b = np.sqrt((R + bx) ** 2 + by**2 + bz**2)
    return 1.0 / R + 1.0 / d_ab - 1.0 / d_a - 1.0 / d_b


def four_site_grid_1d_numpy(R, xa, xb):
    """Four-site kernel on the outer grid of 1D displacements xa[p], xb[q]."""
    A = xa[:, None]
    B = xb[None, :]
    return (
        1.0 / R
        + 1.0 / np.abs(R - A + B)
        - 1.0 / np.abs(R - A)
        - 1.0 / np.abs(R + B)
    )


def pair_expectation_numpy(R, pts_a, w_a, pts_b, w_b):
    """Double quadrature sum  sum_ij w_a[i] w_b[j] K(R, a_i, b_j).

    Chunked over the first factor so the (n_a, n_b) intermediates stay small.
    """
    acc = 0.0
    for i0 in range(0, pts_a.shape[0], _CHUNK):
        pa = pts_a[i0 : i0 + _CHUNK]
        wa = w_a[i0 : i0 + _CHUNK]
        dx = R - pa[:, 0:1] + pts_b[None, :, 0].reshape(1, -1)
        dy = pa[:, 1:2] - pts_b[None, :, 1].reshape(1, -1)
        dz = pa[:, 2:3] - pts_b[None, :, 2].reshape(1, -1)
        k = 1.0 / np.sqrt(dx * dx + dy * dy + dz * dz)
        k += 1.0 / R
        da = np.sqrt((R - pa[:, 0]) ** 2 + pa[:, 1] ** 2 + pa[:, 2] ** 2)
        db = np.sqrt(
            (R + pts_b[:, 0]) ** 2 + pts_b[:, 1] ** 2 + pts_b[:, 2] ** 2
        )
        k -= 1.0 / da[:, None]
        k -= 1.0 / db[None, :]
        acc += float(wa @ k @ w_b)
    return acc


def series_batch_numpy(powers, coeffs, exp_a, exp_b, R, pts_a, pts_b):
    """Evaluate a truncated interaction series on a batch of configurations.

    ``powers``/``coeffs`` are the flat monomial table (one row per monomial),
    ``exp_a``/``exp_b`` the (m, 3) exponent arrays.  Returns shape (n,).
    """
    out = np.zeros(pts_a.shape[0])
    rpow = R ** (-powers.astype(np.float64))
    for m in range(coeffs.shape[0]):
        term = np.full(pts_a.shape[0], coeffs[m] * rpow[m])
        for c in range(3):
            if exp_a[m, c]:
                term *= pts_a[:, c] ** exp_a[m, c]
            if exp_b[m, c]:
                term *= pts_b[:, c] ** exp_b[m, c]
        out += term
    return out


def series_grid_1d_numpy(powers, coeffs, exp_a, exp_b, R, xa, xb):
    """Truncated series tabulated on the outer grid of 1D displacements."""
    out = np.zeros((xa.shape[0], xb.shape[0]))
    for m in range(coeffs.shape[0]):
        va = xa ** exp_a[m, 0]
        vb = xb ** exp_b[m, 0]
        out += (coeffs[m] * R ** (-float(powers[m]))) * np.outer(va, vb)
    return out


if HAVE_NUMBA:

    @njit(cache=True)
    def four_site_batch_numba(R, pts_a, pts_b):
        n = pts_a.shape[0]
        out = np.empty(n)
        for i in range(n):
            ax, ay, az = pts_a[i, 0], pts_a[i, 1], pts_a[i, 2]
            bx, by, bz = pts_b[i, 0], pts_b[i, 1], pts_b[i, 2]
            d_ab = math.sqrt(
                (R - ax + bx) ** 2 + (ay - by) ** 2 + (az - bz) ** 2
            )
            d_a = math.sqrt((R - ax) ** 2 + ay * ay + az * az)
            d_b = math.sqrt((R + bx) ** 2 + by * by + bz * bz)
            out[i] = 1.0 / R + 1.0 / d_ab - 1.0 / d_a - 1.0 / d_b
        return out

    @njit(cache=True)
    def four_site_grid_1d_numba(R, xa, xb):
        out = np.empty((xa.shape[0], xb.shape[0]))
        for p in range(xa.shape[0]):
            for q in range(xb.shape[0]):
                out[p, q] = (
                    1.0 / R
                    + 1.0 / abs(R - xa[p] + xb[q])
                    - 1.0 / abs(R - xa[p])
                    - 1.0 / abs(R + xb[q])
                )
        return out

    @njit(cache=True)
    def pair_expectation_numba(R, pts_a, w_a, pts_b, w_b):
        acc = 0.0
        for i in range(pts_a.shape[0]):
            ax, ay, az = pts_a[i, 0], pts_a[i, 1], pts_a[i, 2]
            d_a = math.sqrt((R - ax) ** 2 + ay * ay + az * az)
            row = 0.0
            for j in range(pts_b.shape[0]):
                bx, by, bz = pts_b[j, 0], pts_b[j, 1], pts_b[j, 2]
                d_ab = math.sqrt(
                    (R - ax + bx) ** 2 + (ay - by) ** 2 + (az - bz) ** 2
                )
                d_b = math.sqrt((R + bx) ** 2 + by * by + bz * bz)
                row += w_b[j] * (
                    1.0 / R + 1.0 / d_ab - 1.0 / d_a - 1.0 / d_b
                )
            acc += w_a[i] * row
        return acc

    @njit(cache=True)
    def series_batch_numba(powers, coeffs, exp_a, exp_b, R, pts_a, pts_b):
        n = pts_a.shape[0]
        out = np.zeros(n)
        for i in range(n):
            total = 0.0
            for m in range(coeffs.shape[0]):
                term = coeffs[m] * R ** (-float(powers[m]))
                for c in range(3):
                    for _ in range(exp_a[m, c]):
                        term *= pts_a[i, c]
                    for _ in range(exp_b[m, c]):
                        term *= pts_b[i, c]
                total += term
            out[i] = total
        return out

    @njit(cache=True)
    def series_grid_1d_numba(powers, coeffs, exp_a, exp_b, R, xa, xb):
        out = np.zeros((xa.shape[0], xb.shape[0]))
        for m in range(coeffs.shape[0]):
            scale = coeffs[m] * R ** (-float(powers[m]))
            for p in range(xa.shape[0]):
                va = scale * xa[p] ** exp_a[m, 0]
                for q in range(xb.shape[0]):
                    out[p, q] += va * xb[q] ** exp_b[m, 0]
        return out

    four_site_batch = four_site_batch_numba
    four_site_grid_1d = four_site_grid_1d_numba
    pair_expectation = pair_expectation_numba
    series_batch = series_batch_numba
    series_grid_1d = series_grid_1d_numba
else:
    four_site_batch = four_site_batch_numpy
    four_site_grid_1d = four_site_grid_1d_numpy
    pair_expectation = pair_expectation_numpy
    series_batch = series_batch_numpy
    series_grid_1d = series_grid_1d_numpy
