"""Ground-state energy corrections from the two-atom coupling.

First order is computed two independent ways: as the ground-state expectation
of the expanded coupling (exact monomial coefficients times factorized atom
moments) and in closed form,

    r5 = 3 (3-d)(5-d) k a^4 / (4 R^5)
    r7 = 5 (3-d)(5-d)(7-d) alpha k a^6 / (8 R^7),

plus a third route that convolves the atom's multipole potential with the
partner's charge cloud.  Both first-order terms are repulsive for d < 3 and
vanish identically in d = 3, where the exterior potential of a spherical
cloud is zero.

Second order is evaluated for Drude atoms by an explicit sum over product
oscillator states with ladder-operator matrix elements; the dipole-dipole
term connects the ground state only to single-excitation pairs, so the sum
saturates at cutoff 1 and reproduces -(3+d) k^2 a^4 / (2 hbar omega R^6).
Opposite inversion parity of the even- and odd-degree coupling terms kills
the R^-7 cross contribution exactly.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from . import drude_exact
from .atoms import AtomKindError, DrudeAtom, _multi_indices
from .potential import multipole_coefficients


def first_order_expectation(series, atom_a, atom_b, R, k=1.0):
    """Per-power first-order corrections  k R^-n sum coeff <mono_A><mono_B>.

    Returns a dict mapping each inverse power in the series to its energy
    contribution.  Odd-degree factors make the n = 3, 4 and 6 entries vanish
    identically.
    """
    if atom_a.dim != series.dim or atom_b.dim != series.dim:
        raise ValueError("atom dimension does not match series dimension")
    out = {}
    for power, monos in series.terms.items():
        total = 0.0
        for mono in monos:
            ma = atom_a.moment(mono.exp_a)
            if ma == 0.0:
                continue
            mb = atom_b.moment(mono.exp_b)
            if mb == 0.0:
                continue
            total += float(mono.coeff) * ma * mb
        out[power] = k * total / R**power
    return out


def first_order_closed_form(dim, a, alpha, k, R):
    """(r5, r7) closed-form first-order terms for an isotropic atom pair."""
    r5 = 3.0 * (3 - dim) * (5 - dim) * k * a**4 / (4.0 * R**5)
    r7 = 5.0 * (3 - dim) * (5 - dim) * (7 - dim) * alpha * k * a**6 / (8.0 * R**7)
    return r5, r7


def first_order_via_potential(atom_a, atom_b, R, k=1.0):
    """(r5, r7) from the electrostatic-potential route.

    Atom A enters through its multipole coefficients (c3, c5); the expectation
    over atom B's cloud of the shifted potential is expanded to matching order
    with raw moments.  Independent algebra from the series route; for numeric
    densities the agreement is quadrature limited.
    """
    if atom_a.dim != atom_b.dim:
        raise ValueError("atoms must share a dimension")
    c3, c5 = multipole_coefficients(atom_a)
    m2x, r2, m4x, x2r2, r4 = _even_moments(atom_b)
    r5 = -c3 * (7.5 * m2x - 1.5 * r2) * k / R**5
    r7 = (
        -c3 * (315.0 / 8.0 * m4x - 105.0 / 4.0 * x2r2 + 15.0 / 8.0 * r4)
        - c5 * (17.5 * m2x - 2.5 * r2)
    ) * k / R**7
    return r5, r7


def _even_moments(atom):
    d = atom.dim
    m2x = atom.moment((2,) + (0,) * (d - 1))
    r2 = atom.radial_moment(2)
    m4x = atom.moment((4,) + (0,) * (d - 1))
    if d == 1:
        x2r2 = m4x
        r4 = m4x
    else:
        x2y2 = atom.moment((2, 2) + (0,) * (d - 2))
        x2r2 = m4x + (d - 1) * x2y2
        r4 = d * m4x + d * (d - 1) * x2y2
    return m2x, r2, m4x, x2r2, r4


def second_order_drude_closed_form(dim, a, k, hbar_omega, R):
    """-(3+d) k^2 a^4 / (2 hbar omega R^6)."""
    if hbar_omega <= 0:
        raise ValueError("hbar_omega must be positive")
    return -(3 + dim) * k**2 * a**4 / (2.0 * hbar_omega * R**6)


def _x_column_elements(atom, max_power, cutoff):
    """<n|x^p|0> for p <= max_power, n <= cutoff, one oscillator coordinate."""
    size = cutoff + max_power + 2
    x = np.zeros((size, size))
    for n in range(size - 1):
        x[n, n + 1] = x[n + 1, n] = atom.a * math.sqrt(n + 1)
    cols = [np.zeros(size)]
    cols[0][0] = 1.0
    for _ in range(max_power):
        cols.append(x @ cols[-1])
    return np.array(cols)[:, : cutoff + 1]


def _state_table(dim, cutoff):
    states = _multi_indices(dim, cutoff)
    return np.array(states, dtype=np.int64)


def _series_amplitudes(series, atom_a, atom_b, cutoff):
    """Per-power transition amplitudes <n_a n_b|T_p|0 0> over product states."""
    max_deg = max(
        (max(max(m.exp_a), max(m.exp_b)) for monos in series.terms.values() for m in monos),
        default=0,
    )
    cols_a = _x_column_elements(atom_a, max_deg, cutoff)
    cols_b = _x_column_elements(atom_b, max_deg, cutoff)
    states = _state_table(series.dim, cutoff)
    amps = {}
    for power, monos in series.terms.items():
        total = np.zeros((states.shape[0], states.shape[0]))
        for mono in monos:
            fa = np.ones(states.shape[0])
            fb = np.ones(states.shape[0])
            for c in range(series.dim):
                fa = fa * cols_a[mono.exp_a[c]][states[:, c]]
                fb = fb * cols_b[mono.exp_b[c]][states[:, c]]
            total += float(mono.coeff) * np.outer(fa, fb)
        amps[power] = total
    return states, amps


def _excitation_energies(states, atom_a, atom_b):
    quanta = states.sum(axis=1).astype(float)
    return (
        atom_a.hbar_omega * quanta[:, None] + atom_b.hbar_omega * quanta[None, :]
    )


def _require_drude(*atoms):
    for atom in atoms:
        if not isinstance(atom, DrudeAtom):
            raise AtomKindError("sum over states requires Drude atoms")


def second_order_sum(series, atom_a, atom_b, R, cutoff=1, k=1.0):
    """-sum_{n != 0} |<n|H_I|0>|^2 / (E_n - E_0) over product oscillator states.

    ``series`` supplies the coupling polynomials (normally just the n = 3
    dipole-dipole term, for which cutoff 1 is already exact).
    """
    _require_drude(atom_a, atom_b)
    if cutoff < 1:
        raise ValueError("cutoff must be at least 1")
    states, amps = _series_amplitudes(series, atom_a, atom_b, cutoff)
    coupling = np.zeros((states.shape[0], states.shape[0]))
    for power, amp in amps.items():
        coupling += k * R ** (-float(power)) * amp
    energies = _excitation_energies(states, atom_a, atom_b)
    coupling[0, 0] = 0.0
    energies[0, 0] = 1.0
    return float(-np.sum(coupling**2 / energies))


def parity_cross_term(series, atom_a, atom_b, cutoff=8, R=1.0, k=1.0, powers=(3, 4)):
    """Second-order cross contribution of two coupling orders.

    Evaluates -k^2 R^-(p+q) sum_{n != 0} <0|T_p|n><n|T_q|0> / (E_n - E_0).
    For (p, q) = (3, 4) the two operators have opposite inversion parity and
    every summand vanishes; with p = q the dipole-dipole second-order value
    is recovered (diagnostic mode).
    """
    _require_drude(atom_a, atom_b)
    p, q = powers
    if p not in series.terms or q not in series.terms:
        raise ValueError(f"series lacks requested powers {powers}")
    states, amps = _series_amplitudes(series, atom_a, atom_b, cutoff)
    energies = _excitation_energies(states, atom_a, atom_b)
    prod = amps[p] * amps[q]
    prod[0, 0] = 0.0
    energies[0, 0] = 1.0
    return float(-(k**2) * R ** (-float(p + q)) * np.sum(prod / energies))


@dataclass(frozen=True)
class DrudePreset:
    """Unit system for Drude-pair curves: lengths in a, energies in k/a."""

    name: str
    a: float
    k: float
    hbar_omega: float

    @classmethod
    def bohr(cls):
        """Reduced units with hbar omega = k / (2a), i.e. a Bohr-sized atom."""
        return cls("bohr", a=1.0, k=1.0, hbar_omega=0.5)

    @classmethod
    def custom(cls, hbar_omega, a=1.0, k=1.0):
        return cls("custom", a=a, k=k, hbar_omega=hbar_omega)

    @property
    def omega(self):
        return self.hbar_omega  # hbar = 1

    @property
    def mass(self):
        return 1.0 / (2.0 * self.a**2 * self.omega)

    def atom(self, dim):
        return DrudeAtom(dim, omega=self.omega, mass=self.mass)

    def validity_radius(self):
        """Minimum R (in units of a) where the truncated pair is stable."""
        r3 = 2.0 * self.k / (self.mass * self.omega**2)
        return r3 ** (1.0 / 3.0) / self.a


@dataclass(frozen=True)
class EnergyBreakdown:
    """Corrections at one separation, in units of k/a.

    Closed forms are authoritative for the per-term columns; the exact column
    is the normal-mode value of the dipole-truncated pair when it exists.
    """

    r_tilde: float
    dim: int
    first_order_r5: float
    first_order_r7: float
    second_order_r6: float
    total_truncated: float
    exact: float = None
    exact_valid: bool = False
    routes: tuple = field(
        default=("closed_form", "closed_form", "closed_form", "normal_mode")
    )


def total_energy_curve(dim, r_tilde_values, preset=None):
    """Rows of (r5, r6, r7, total, exact) over a grid of reduced separations."""
    if preset is None:
        preset = DrudePreset.bohr()
    a, k = preset.a, preset.k
    validity = preset.validity_radius()
    scale = a / k
    rows = []
    for rt in np.asarray(r_tilde_values, dtype=float):
        if rt <= 0:
            raise ValueError("separations must be positive")
        R = rt * a
        r5, r7 = first_order_closed_form(dim, a, 3.0, k, R)
        r6 = second_order_drude_closed_form(dim, a, k, preset.hbar_omega, R)
        valid = rt > validity
        exact = None
        if valid:
            exact = scale * drude_exact.exact_correction(
                dim, preset.omega, k, preset.mass, R
            )
        rows.append(
            EnergyBreakdown(
                r_tilde=float(rt),
                dim=dim,
                first_order_r5=scale * r5,
                first_order_r7=scale * r7,
                second_order_r6=scale * r6,
                total_truncated=scale * (r5 + r6 + r7),
                exact=exact,
                exact_valid=valid,
            )
        )
    return rows


def dominance_crossover(dim, preset=None):
    """Reduced separation where the R^-5 term first exceeds |r6| + r7."""
    if dim not in (1, 2):
        raise ValueError("crossover defined only for d = 1, 2")
    if preset is None:
        preset = DrudePreset.bohr()
    a, k = preset.a, preset.k

    def gap(rt):
        R = rt * a
        r5, r7 = first_order_closed_form(dim, a, 3.0, k, R)
        r6 = second_order_drude_closed_form(dim, a, k, preset.hbar_omega, R)
        return r5 - (abs(r6) + r7)

    return brentq(gap, 2.05, 100.0, xtol=1e-12, rtol=1e-14)
