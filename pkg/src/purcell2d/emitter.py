"""Two-subband 2D emitter sheet.

Envelope functions psi_m(z), the effective (screened) dipole moment, the
parabolic transition dispersion w21(k), and isotropic k-space reductions.
Populations are frozen inputs (pumping keeps them constant); a Fermi-Dirac
helper is provided for the equilibrium case.
"""

from dataclasses import dataclass

import numpy as np

from .errors import NonPositiveFrequency, QuadratureNotConverged
from .units import E_ESU, HBAR

_MAX_GL_NODES = 1 << 15


@dataclass(frozen=True)
class InfiniteWell:
    """Particle-in-a-box envelope, level n >= 1, well width l (cm), centered at z=0.

    psi_n(z) = sqrt(2/l) * cos(n pi z / l) for odd n, sin(...) for even n.
    """

    n: int
    width: float

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("level index n must be >= 1")
        if self.width <= 0:
            raise ValueError("well width must be > 0")

    def __call__(self, z):
        z = np.asarray(z, dtype=float)
        arg = self.n * np.pi * z / self.width
        vals = np.sqrt(2.0 / self.width) * (
            np.cos(arg) if self.n % 2 == 1 else np.sin(arg)
        )
        return np.where(np.abs(z) <= self.width / 2, vals, 0.0)


class Sampled:
    """Envelope given on a z grid (cm); renormalized to unit norm on load."""

    def __init__(self, z, values):
        z = np.asarray(z, dtype=float)
        values = np.asarray(values, dtype=complex)
        if z.ndim != 1 or z.shape != values.shape:
            raise ValueError("z and values must be matching 1D arrays")
        if not np.all(np.diff(z) > 0):
            raise ValueError("z grid must be strictly increasing")
        norm = np.trapezoid(np.abs(values) ** 2, z)
        if norm <= 0:
            raise ValueError("envelope must have nonzero norm")
        self.z = z
        self.values = values / np.sqrt(norm)
        self.width = z[-1] - z[0]

    def __call__(self, z):
        z = np.asarray(z, dtype=float)
        re = np.interp(z, self.z, self.values.real, left=0.0, right=0.0)
        im = np.interp(z, self.z, self.values.imag, left=0.0, right=0.0)
        return re + 1j * im


@dataclass(frozen=True)
class Subband:
    """One subband: band-edge energy (erg), effective mass (g), envelope."""

    index: int
    edge_energy: float
    effective_mass: float
    psi: object

    def __post_init__(self):
        if self.effective_mass <= 0:
            raise ValueError("effective mass must be > 0")


@dataclass
class EmitterSheet:
    """Two-subband sheet with populations and dephasing on a radial k grid.

    k_grid : strictly increasing radial grid, 1/cm, >= 16 points
    n1, n2 : occupations in [0, 1] on k_grid
    gamma21 : dephasing rad/s on k_grid, > 0
    degeneracy : spin (x valley) multiplicity of each k state
    """

    subband1: Subband
    subband2: Subband
    k_grid: np.ndarray
    n1: np.ndarray
    n2: np.ndarray
    gamma21: np.ndarray
    degeneracy: float = 2.0

    def __post_init__(self):
        self.k_grid = np.asarray(self.k_grid, dtype=float)
        self.n1 = np.asarray(self.n1, dtype=float)
        self.n2 = np.asarray(self.n2, dtype=float)
        self.gamma21 = np.asarray(self.gamma21, dtype=float)
        if self.k_grid.size < 16 or not np.all(np.diff(self.k_grid) > 0):
            raise ValueError("k grid must be strictly increasing with >= 16 points")
        for name, arr in (("n1", self.n1), ("n2", self.n2)):
            if arr.shape != self.k_grid.shape:
                raise ValueError(f"{name} must match the k grid")
            if np.any(arr < 0) or np.any(arr > 1):
                raise ValueError(f"{name} must lie in [0, 1]")
        if self.gamma21.shape != self.k_grid.shape or np.any(self.gamma21 <= 0):
            raise ValueError("gamma21 must be positive on the k grid")
        if self.degeneracy <= 0:
            raise ValueError("degeneracy must be > 0")

    @property
    def well_width(self):
        return max(self.subband1.psi.width, self.subband2.psi.width)


def transition_freq(sheet, k):
    """Parabolic-subband transition frequency w21(k) [rad/s]."""
    k = np.asarray(k, dtype=float)
    if np.any(k < 0):
        raise ValueError("k must be >= 0")
    de = sheet.subband2.edge_energy - sheet.subband1.edge_energy
    m1 = sheet.subband1.effective_mass
    m2 = sheet.subband2.effective_mass
    w = (de + HBAR**2 * k**2 / 2.0 * (1.0 / m2 - 1.0 / m1)) / HBAR
    if np.any(w <= 0):
        raise NonPositiveFrequency("w21(k) <= 0 on the grid")
    return w


def k_sum(sheet, geometry, f):
    """Isotropic continuum sum over k states: deg * S/(2 pi) * int f(k) k dk.

    f may be a callable of k or an array on sheet.k_grid.
    """
    k = sheet.k_grid
    vals = np.asarray(f(k) if callable(f) else f, dtype=float)
    return (
        sheet.degeneracy * geometry.area / (2 * np.pi)
        * np.trapezoid(vals * k, k)
    )


def fermi_dirac(energy, mu, temperature):
    """Equilibrium occupation; energies in erg, temperature in erg (T=0 allowed)."""
    energy = np.asarray(energy, dtype=float)
    if temperature == 0.0:
        return np.where(energy <= mu, 1.0, 0.0)
    x = np.clip((energy - mu) / temperature, -700, 700)
    return 1.0 / (np.exp(x) + 1.0)


def _gauss_legendre_segments(segments, n_total):
    """GL nodes/weights distributed over segments proportionally to length."""
    total = sum(b - a for a, b in segments)
    xs, ws = [], []
    for a, b in segments:
        n = max(4, int(round(n_total * (b - a) / total)))
        x, w = np.polynomial.legendre.leggauss(n)
        xs.append(0.5 * (b - a) * x + 0.5 * (a + b))
        ws.append(0.5 * (b - a) * w)
    return np.concatenate(xs), np.concatenate(ws)


def effective_dipole(sheet, stack, omega, rtol=1e-9, n_start=256):
    """Screened dipole matrix element d~21 [esu cm, complex].

    d~21 = -e * int psi2*(z) [int_{-l/2}^{z} dz'/eps(w, z')] psi1(z) dz,
    with the inner path integral in closed form (layers are z-constant)
    and the outer integral by composite Gauss-Legendre quadrature split at
    layer boundaries, node count doubled until the relative change drops
    below rtol.
    """
    l = sheet.well_width
    lo, hi = -l / 2, l / 2
    cuts = [lo] + stack.boundaries_within(lo, hi) + [hi]
    segments = list(zip(cuts, cuts[1:]))

    def evaluate(n_total):
        z, w = _gauss_legendre_segments(segments, n_total)
        path = np.array([stack.inv_eps_path(omega, lo, zz) for zz in z])
        integrand = np.conj(sheet.subband2.psi(z)) * path * sheet.subband1.psi(z)
        return -E_ESU * np.sum(w * integrand)

    prev = evaluate(n_start)
    n = n_start
    while n <= _MAX_GL_NODES:
        n *= 2
        cur = evaluate(n)
        scale = max(abs(cur), abs(prev), 1e-300)
        if abs(cur - prev) <= rtol * scale:
            return cur
        prev = cur
    raise QuadratureNotConverged(
        f"effective dipole not converged to rtol={rtol:g} at {n} nodes"
    )
