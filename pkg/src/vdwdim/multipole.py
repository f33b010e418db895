"""Exact two-atom Coulomb coupling and its inverse-separation expansion.

Two neutral atoms sit a distance R apart along the x-axis.  With electron
displacements ``r_a`` and ``r_b`` confined to the first ``dim`` coordinates,
the interaction energy is the four-site combination

    k * ( 1/R + 1/|R x - r_a + r_b| - 1/|R x - r_a| - 1/|R x + r_b| ).

Each shifted kernel 1/|R x - t| is expanded as a Taylor series of
(1 + u)^(-1/2) with u = (-2 t_x R + |t|^2) / R^2, keeping coefficients as
exact rationals throughout.  Neutrality cancels the 1/R and 1/R^2 orders,
the order-n polynomial is homogeneous of degree n - 1 in the coordinates,
and every surviving monomial couples both atoms.
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels

MAX_EXPANSION_POWER = 12


class SingularConfigurationError(ValueError):
    """A kernel denominator fell below the configured epsilon."""


class ExpansionCapError(ValueError):
    """Requested expansion order exceeds MAX_EXPANSION_POWER."""


@dataclass(frozen=True)
class Monomial:
    """One exact-coefficient monomial  coeff * prod r_a^exp_a * prod r_b^exp_b."""

    coeff: Fraction
    exp_a: tuple
    exp_b: tuple


@dataclass(frozen=True)
class InteractionSeries:
    """Expansion of the coupling in powers of 1/R, along the x-axis.

    ``terms`` maps the inverse power n (>= 3) to a tuple of monomials, each
    homogeneous of total degree n - 1 with degree >= 1 on each atom.
    """

    dim: int
    max_power: int
    terms: dict

    def coefficient(self, power, exp_a, exp_b) -> Fraction:
        """Exact coefficient of a given monomial, zero if absent."""
        for mono in self.terms.get(power, ()):
            if mono.exp_a == tuple(exp_a) and mono.exp_b == tuple(exp_b):
                return mono.coeff
        return Fraction(0)

    def monomial_count(self) -> int:
        return sum(len(v) for v in self.terms.values())

    def to_dict(self) -> dict:
        rows = []
        for power in sorted(self.terms):
            for mono in self.terms[power]:
                rows.append(
                    {
                        "power": power,
                        "coeff_num": mono.coeff.numerator,
                        "coeff_den": mono.coeff.denominator,
                        "expA": list(mono.exp_a),
                        "expB": list(mono.exp_b),
                    }
                )
        return {"dim": self.dim, "max_power": self.max_power, "terms": rows}

    @classmethod
    def from_dict(cls, data) -> "InteractionSeries":
        terms = {}
        for row in data["terms"]:
            mono = Monomial(
                Fraction(int(row["coeff_num"]), int(row["coeff_den"])),
                tuple(int(e) for e in row["expA"]),
                tuple(int(e) for e in row["expB"]),
            )
            terms.setdefault(int(row["power"]), []).append(mono)
        ordered = {
            n: tuple(sorted(monos, key=lambda m: (m.exp_a, m.exp_b)))
            for n, monos in sorted(terms.items())
        }
        return cls(int(data["dim"]), int(data["max_power"]), ordered)


def exact_interaction(R, r_a, r_b, k=1.0, eps=None):
    """Four-site Coulomb coupling, evaluated without any expansion.

    ``r_a`` and ``r_b`` are length-d sequences (d <= 3), zero-padded into 3D
    because the Coulomb field always lives in three dimensions.  Raises
    ``SingularConfigurationError`` when any denominator drops below ``eps``
    (default 1e-12 * R); the model assumes non-overlapping atoms anyway.
    """
    if R <= 0:
        raise ValueError("separation must be positive")
    if eps is None:
        eps = 1e-12 * R
    a = _pad3(r_a)
    b = _pad3(r_b)
    d_ab = np.linalg.norm(np.array([R, 0.0, 0.0]) - a + b)
    d_a = np.linalg.norm(np.array([R, 0.0, 0.0]) - a)
    d_b = np.linalg.norm(np.array([R, 0.0, 0.0]) + b)
    if min(R, d_ab, d_a, d_b) < eps:
        raise SingularConfigurationError(
            f"kernel denominator below epsilon {eps:g}"
        )
    return k * (1.0 / R + 1.0 / d_ab - 1.0 / d_a - 1.0 / d_b)


def expand_interaction(dim, max_power) -> InteractionSeries:
    """Expand the coupling through order 1/R**max_power with exact rationals."""
    if dim not in (1, 2, 3):
        raise ValueError("dim must be 1, 2, or 3")
    if max_power < 3:
        raise ValueError("max_power must be at least 3")
    if max_power > MAX_EXPANSION_POWER:
        raise ExpansionCapError(
            f"max_power {max_power} exceeds cap {MAX_EXPANSION_POWER}"
        )

    acc = {}
    # Bare 1/R from the nucleus-nucleus term.
    _add(acc, (1, _zeros(dim), _zeros(dim)), Fraction(1))
    for sign, t_x, t_sq in _shift_polynomials(dim):
        for key, coeff in _shifted_kernel(t_x, t_sq, max_power).items():
            _add(acc, key, sign * coeff)

    terms = {}
    for (rpow, ea, eb), coeff in acc.items():
        if coeff == 0:
            continue
        # Neutrality kills the first two orders, and pure one-atom monomials
        # cancel between the mixed kernel and the single-atom kernels.
        assert rpow >= 3, "neutrality cancellation failed"
        assert sum(ea) + sum(eb) == rpow - 1, "inhomogeneous term"
        assert sum(ea) >= 1 and sum(eb) >= 1, "single-atom term survived"
        terms.setdefault(rpow, []).append(Monomial(coeff, ea, eb))

    ordered = {
        n: tuple(sorted(monos, key=lambda m: (m.exp_a, m.exp_b)))
        for n, monos in sorted(terms.items())
    }
    return InteractionSeries(dim, max_power, ordered)


def evaluate_series(series, R, r_a, r_b, k=1.0):
    """Numeric value of the truncated series at one configuration."""
    total = 0.0
    for power, monos in series.terms.items():
        s = 0.0
        for mono in monos:
            v = float(mono.coeff)
            for c, e in enumerate(mono.exp_a):
                v *= r_a[c] ** e
            for c, e in enumerate(mono.exp_b):
                v *= r_b[c] ** e
            s += v
        total += s / R**power
    return k * total


def evaluate_series_batch(series, R, pts_a, pts_b, k=1.0):
    """Vectorized series evaluation over (n, 3) zero-padded configurations."""
    powers, coeffs, exp_a, exp_b = series_arrays(series)
    return k * kernels.series_batch(powers, coeffs, exp_a, exp_b, R, pts_a, pts_b)


def series_arrays(series):
    """Flat float/int arrays of the series monomials for the kernel backends."""
    rows = []
    for power in sorted(series.terms):
        for mono in series.terms[power]:
            rows.append((power, float(mono.coeff), mono.exp_a, mono.exp_b))
    powers = np.array([r[0] for r in rows], dtype=np.int64)
    coeffs = np.array([r[1] for r in rows])
    exp_a = np.zeros((len(rows), 3), dtype=np.int64)
    exp_b = np.zeros((len(rows), 3), dtype=np.int64)
    for i, (_, _, ea, eb) in enumerate(rows):
        exp_a[i, : len(ea)] = ea
        exp_b[i, : len(eb)] = eb
    return powers, coeffs, exp_a, exp_b


@dataclass(frozen=True)
class TruncationReport:
    """Per-radius truncation residuals of a series against the exact kernel."""

    r_values: np.ndarray
    max_residual: np.ndarray
    rms_residual: np.ndarray
    fitted_exponent: float
    sample_count: int
    radius: float


def truncation_residual(series, r_values, sample_count, radius, seed=0, k=1.0):
    """Compare the truncated series against the exact kernel on random clouds.

    Draws ``sample_count`` configurations uniformly in the d-ball of the given
    radius for every separation in ``r_values`` and reports max/RMS residuals
    together with the decay exponent fitted on log-log axes.  The residual of
    an order-N series decays at least as fast as R**-(N+1).
    """
    r_values = np.asarray(r_values, dtype=float)
    rng = np.random.default_rng(seed)
    pts_a = _ball_samples(rng, series.dim, sample_count, radius)
    pts_b = _ball_samples(rng, series.dim, sample_count, radius)
    powers, coeffs, exp_a, exp_b = series_arrays(series)

    max_res = np.empty_like(r_values)
    rms_res = np.empty_like(r_values)
    for i, R in enumerate(r_values):
        exact = k * kernels.four_site_batch(R, pts_a, pts_b)
        approx = k * kernels.series_batch(
            powers, coeffs, exp_a, exp_b, R, pts_a, pts_b
        )
        diff = np.abs(exact - approx)
        max_res[i] = diff.max() if diff.size else 0.0
        rms_res[i] = np.sqrt(np.mean(diff**2)) if diff.size else 0.0

    if np.all(max_res > 0) and len(r_values) >= 2:
        slope = np.polyfit(np.log(r_values), np.log(max_res), 1)[0]
        exponent = -slope
    else:
        exponent = float("nan")
    return TruncationReport(
        r_values, max_res, rms_res, exponent, sample_count, radius
    )


def _pad3(r):
    out = np.zeros(3)
    r = np.asarray(r, dtype=float)
    out[: r.size] = r
    return out


def _zeros(dim):
    return (0,) * dim


def _unit(dim, i):
    e = [0] * dim
    e[i] = 1
    return tuple(e)


def _add(poly, key, coeff):
    c = poly.get(key, Fraction(0)) + coeff
    if c == 0:
        poly.pop(key, None)
    else:
        poly[key] = c


def _poly_mul(p, q, rpow_cap):
    out = {}
    for (rp, ea, eb), cp in p.items():
        for (rq, fa, fb), cq in q.items():
            rpow = rp + rq
            if rpow > rpow_cap:
                continue
            key = (
                rpow,
                tuple(x + y for x, y in zip(ea, fa)),
                tuple(x + y for x, y in zip(eb, fb)),
            )
            _add(out, key, cp * cq)
    return out


def _shift_polynomials(dim):
    """The three shifted kernels as (sign, t_x poly, |t|^2 poly) triples."""
    za = _zeros(dim)
    one = Fraction(1)

    # Shift vectors t with kernel = sign / |R x - t|, one poly per component.
    t_mixed = [
        {(0, _unit(dim, i), za): one, (0, za, _unit(dim, i)): -one}
        for i in range(dim)
    ]
    t_atom_a = [{(0, _unit(dim, i), za): one} for i in range(dim)]
    t_atom_b = [{(0, za, _unit(dim, i)): -one} for i in range(dim)]

    triples = []
    for sign, comps in ((1, t_mixed), (-1, t_atom_a), (-1, t_atom_b)):
        tsq = {}
        for comp in comps:
            for key, coeff in _poly_mul(comp, comp, 10**9).items():
                _add(tsq, key, coeff)
        triples.append((sign, comps[0], tsq))
    return triples


def _shifted_kernel(t_x, t_sq, max_power):
    """Expansion of 1/|R x - t| as a graded polynomial, orders <= max_power."""
    cap = max_power - 1  # one power of 1/R is appended at the end
    # u = -2 t_x / R + |t|^2 / R^2
    u = {}
    for (rp, ea, eb), c in t_x.items():
        _add(u, (rp + 1, ea, eb), -2 * c)
    for (rp, ea, eb), c in t_sq.items():
        _add(u, (rp + 2, ea, eb), c)

    # Horner evaluation of sum_m binom(-1/2, m) u^m, truncating high orders.
    m_max = cap
    binom = [Fraction(1)]
    for m in range(1, m_max + 1):
        binom.append(binom[-1] * (Fraction(-1, 2) - (m - 1)) / m)

    dim = len(next(iter(u))[1]) if u else 1
    const_key = (0, (0,) * dim, (0,) * dim)
    acc = {const_key: binom[m_max]}
    for m in range(m_max - 1, -1, -1):
        acc = _poly_mul(acc, u, cap)
        _add(acc, const_key, binom[m])

    out = {}
    for (rp, ea, eb), c in acc.items():
        out[(rp + 1, ea, eb)] = c
    return out


def _ball_samples(rng, dim, count, radius):
    """Uniform samples in the d-ball of the given radius, zero-padded to 3D."""
    pts = np.zeros((count, 3))
    if radius > 0 and count > 0:
        g = rng.standard_normal((count, dim))
        norms = np.linalg.norm(g, axis=1, keepdims=True)
        norms[norms == 0] = 1.0
        u = rng.random((count, 1)) ** (1.0 / dim)
        pts[:, :dim] = radius * u * g / norms
    return pts
