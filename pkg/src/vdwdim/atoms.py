"""Rotationally symmetric atom ground states, exposed through their moments.

Every model lives in ``dim`` in {1, 2, 3} and is inversion symmetric, so the
coordinate moments factor into a radial moment <r^E> times a closed-form
angular average over the (d-1)-sphere.  The characteristic length is
a^2 = <|r|^2> / d and the shape coefficient alpha = <x^4> / a^4 controls the
subleading multipole of the charge cloud.

Moments are the only interface the perturbative machinery needs; densities
are exposed separately for the quadrature oracles and the potential module.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.optimize import brentq
from scipy.special import gammaincc

MOMENT_CAP = 16


class MomentCapError(ValueError):
    """Requested moment order exceeds MOMENT_CAP."""


class DegenerateAtomError(ValueError):
    """Operation undefined for a fully localized (a = 0) atom."""


class NonNormalizableDensityError(ValueError):
    """Provided density samples do not integrate to a positive mass."""


class AtomKindError(TypeError):
    """Operation restricted to a different atom kind."""


def _double_factorial(n):
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def _angular_average(dim, exponents) -> Fraction:
    """Average of prod_i u_i^e_i over the unit (d-1)-sphere, exact."""
    if any(e % 2 for e in exponents):
        return Fraction(0)
    ms = [e // 2 for e in exponents]
    total = sum(ms)
    num = 1
    for m in ms:
        num *= _double_factorial(2 * m - 1)
    den = 1
    for j in range(1, total + 1):
        den *= dim + 2 * j - 2
    return Fraction(num, den)


def _check_exponents(dim, exponents):
    exponents = tuple(int(e) for e in exponents)
    if len(exponents) != dim:
        raise ValueError(f"expected {dim} exponents, got {len(exponents)}")
    if any(e < 0 for e in exponents):
        raise ValueError("exponents must be non-negative")
    if sum(exponents) > MOMENT_CAP:
        raise MomentCapError(
            f"total degree {sum(exponents)} exceeds cap {MOMENT_CAP}"
        )
    return exponents


class AtomModel:
    """Base class: isotropic ground state with factorized moments."""

    dim: int

    def radial_moment(self, order: int) -> float:
        raise NotImplementedError

    def moment(self, exponents) -> float:
        """Ground-state expectation of prod_i x_i^e_i (zero for odd degrees)."""
        exponents = _check_exponents(self.dim, exponents)
        ang = _angular_average(self.dim, exponents)
        if ang == 0:
            return 0.0
        return float(ang) * self.radial_moment(sum(exponents))

    def characteristic_length(self) -> float:
        """a with a^2 = <|r|^2> / d."""
        return math.sqrt(self.radial_moment(2) / self.dim)

    def alpha(self) -> float:
        """Shape coefficient <x^4> / a^4 (requires a > 0)."""
        a2 = self.radial_moment(2) / self.dim
        if a2 == 0:
            raise DegenerateAtomError("alpha undefined for a = 0")
        e4 = (4,) + (0,) * (self.dim - 1)
        return self.moment(e4) / a2**2

    def support_radius(self, eps=1e-12) -> float:
        """Radius enclosing all but ``eps`` of the electron cloud."""
        raise NotImplementedError


class DrudeAtom(AtomModel):
    """Electron bound by an isotropic harmonic potential; Gaussian ground state.

    a^2 = hbar / (2 m omega), every Gaussian moment is a double factorial,
    and alpha = 3.
    """

    def __init__(self, dim, omega, mass=1.0, hbar=1.0):
        if dim not in (1, 2, 3):
            raise ValueError("dim must be 1, 2, or 3")
        if omega <= 0 or mass <= 0 or hbar <= 0:
            raise ValueError("omega, mass, hbar must be positive")
        self.dim = dim
        self.omega = omega
        self.mass = mass
        self.hbar = hbar
        self.a = math.sqrt(hbar / (2.0 * mass * omega))

    @classmethod
    def bohr_matched(cls, dim):
        """Reduced units with a = 1 and hbar * omega = k / (2 a) for k = 1."""
        return cls(dim, omega=0.5, mass=1.0, hbar=1.0)

    @property
    def hbar_omega(self):
        return self.hbar * self.omega

    def moment(self, exponents) -> float:
        exponents = _check_exponents(self.dim, exponents)
        if any(e % 2 for e in exponents):
            return 0.0
        out = self.a ** sum(exponents)
        for e in exponents:
            out *= _double_factorial(e - 1)
        return out

    def radial_moment(self, order):
        if order % 2 == 0:
            out = self.a**order
            for j in range(1, order // 2 + 1):
                out *= self.dim + 2 * j - 2
            return out
        return (
            self.a**order
            * 2 ** (order / 2)
            * math.gamma((order + self.dim) / 2.0)
            / math.gamma(self.dim / 2.0)
        )

    def radial_density(self, r):
        """Ground-state density value at radius r (full d-dim density)."""
        r = np.asarray(r, dtype=float)
        a2 = self.a**2
        return (2.0 * math.pi * a2) ** (-self.dim / 2.0) * np.exp(
            -(r**2) / (2.0 * a2)
        )

    def support_radius(self, eps=1e-12):
        # survival of |r| for the isotropic Gaussian is Q(d/2, r^2 / 2 a^2)
        def surv(r):
            return gammaincc(self.dim / 2.0, r**2 / (2.0 * self.a**2)) - eps

        return brentq(surv, 1e-9 * self.a, 40.0 * self.a)

    def spectrum(self, cutoff):
        """Oscillator levels hbar omega (sum n_i + d/2) up to total cutoff."""
        return drude_spectrum(self, cutoff)


class RingAtom(AtomModel):
    """All electron density concentrated at one radius (shell distribution).

    The idealized limit of a numeric radial density peaked at ``radius``:
    <r^E> = radius^E exactly.  In d = 2 this is a uniform ring with
    alpha = 3/2; in d = 3 a spherical shell.
    """

    is_shell = True

    def __init__(self, dim, radius=1.0):
        if dim not in (1, 2, 3):
            raise ValueError("dim must be 1, 2, or 3")
        if radius <= 0:
            raise ValueError("radius must be positive")
        self.dim = dim
        self.radius = radius

    def radial_moment(self, order):
        return self.radius**order

    def support_radius(self, eps=1e-12):
        return self.radius


class Hydrogen1DAtom(AtomModel):
    """1D hydrogen-like atom whose ground state collapses onto the nucleus.

    The attractive -k/|x| potential in one dimension localizes the ground
    state completely, so a^2 = 0 and every nonzero moment vanishes; the atom
    produces no permanent multipoles at all.
    """

    def __init__(self):
        self.dim = 1
        self.a = 0.0

    def radial_moment(self, order):
        return 1.0 if order == 0 else 0.0

    def moment(self, exponents):
        exponents = _check_exponents(self.dim, exponents)
        return 1.0 if sum(exponents) == 0 else 0.0

    def characteristic_length(self):
        return 0.0

    def alpha(self):
        raise DegenerateAtomError("alpha undefined for the collapsed 1D atom")

    def support_radius(self, eps=1e-12):
        return 0.0


class NumericRadialAtom(AtomModel):
    """Atom defined by sampled radial density values rho(r).

    ``rho`` holds the full d-dimensional density at the grid radii; the mass
    under the radial measure S_{d-1} r^{d-1} dr is renormalized to one on
    construction.  Moments use composite Gauss-Legendre quadrature on a cubic
    spline through the samples (target 1e-8 relative for smooth densities).
    """

    _GL_ORDER = 12

    def __init__(self, dim, r, rho):
        if dim not in (1, 2, 3):
            raise ValueError("dim must be 1, 2, or 3")
        r = np.asarray(r, dtype=float)
        rho = np.asarray(rho, dtype=float)
        if r.ndim != 1 or r.shape != rho.shape or r.size < 4:
            raise ValueError("need matching 1D arrays with at least 4 samples")
        if not np.all(np.diff(r) > 0):
            raise ValueError("radial grid must be strictly increasing")
        if np.any(~np.isfinite(rho)) or np.any(rho < -1e-12 * rho.max(initial=0.0)):
            raise NonNormalizableDensityError("density must be finite and non-negative")
        self.dim = dim
        self._r = r
        self._spline = CubicSpline(r, np.clip(rho, 0.0, None))
        nodes, weights = np.polynomial.legendre.leggauss(self._GL_ORDER)
        self._gl_nodes = nodes
        self._gl_weights = weights
        mass = self._integrate(lambda u: u ** (dim - 1)) * _sphere_area(dim)
        if not np.isfinite(mass) or mass <= 0:
            raise NonNormalizableDensityError(f"density mass {mass!r} not positive")
        self._norm = 1.0 / mass

    @classmethod
    def from_file(cls, path, dim):
        """Load a two-column text file of (r, rho(r)) samples."""
        data = np.loadtxt(path)
        if data.ndim != 2 or data.shape[1] < 2:
            raise ValueError("expected two columns: r and rho(r)")
        return cls(dim, data[:, 0], data[:, 1])

    def _integrate(self, weight_fn):
        a = self._r[:-1]
        b = self._r[1:]
        mid = 0.5 * (a + b)
        half = 0.5 * (b - a)
        u = mid[:, None] + half[:, None] * self._gl_nodes[None, :]
        vals = self._spline(u) * weight_fn(u)
        return float(np.sum(half[:, None] * self._gl_weights[None, :] * vals))

    def radial_moment(self, order):
        if order > MOMENT_CAP:
            raise MomentCapError(f"order {order} exceeds cap {MOMENT_CAP}")
        return (
            self._norm
            * _sphere_area(self.dim)
            * self._integrate(lambda u: u ** (order + self.dim - 1))
        )

    def radial_density(self, r):
        r = np.asarray(r, dtype=float)
        inside = (r >= self._r[0]) & (r <= self._r[-1])
        out = np.where(inside, np.clip(self._spline(np.clip(r, self._r[0], self._r[-1])), 0.0, None), 0.0)
        return self._norm * out

    def support_radius(self, eps=1e-12):
        return float(self._r[-1])


def _sphere_area(dim):
    # surface of the unit (d-1)-sphere; d = 1 counts the two half-lines
    return {1: 2.0, 2: 2.0 * math.pi, 3: 4.0 * math.pi}[dim]


def moment(atom, exponents):
    """Ground-state moment <prod x_i^e_i> of an atom model."""
    return atom.moment(exponents)


def characteristic_length(atom):
    """a with a^2 = <|r|^2> / d (zero for the collapsed 1D atom)."""
    return atom.characteristic_length()


def alpha(atom):
    """Shape coefficient <x^4> / a^4."""
    return atom.alpha()


@dataclass(frozen=True)
class SpectrumLevel:
    energy: float
    quanta: tuple


def drude_spectrum(atom, cutoff):
    """Oscillator eigenvalues and multi-indices with total quanta <= cutoff."""
    if not isinstance(atom, DrudeAtom):
        raise AtomKindError("spectrum available only for Drude atoms")
    if cutoff < 0:
        raise ValueError("cutoff must be non-negative")
    levels = []
    for quanta in _multi_indices(atom.dim, cutoff):
        energy = atom.hbar_omega * (sum(quanta) + atom.dim / 2.0)
        levels.append(SpectrumLevel(energy, quanta))
    levels.sort(key=lambda lv: (lv.energy, lv.quanta))
    return levels


def _multi_indices(dim, cutoff):
    if dim == 1:
        return [(n,) for n in range(cutoff + 1)]
    out = []
    for head in range(cutoff + 1):
        for rest in _multi_indices(dim - 1, cutoff - head):
            out.append((head,) + rest)
    return out
