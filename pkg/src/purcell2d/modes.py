"""Mode dispersion, spatial factors and quantization normalization.

Three mode families share one dispersion relation,

    w^2 / (K^2 c^2) = (1/Lz) * integral dz / eps(w, z),

with transverse wavenumber K^2 = q^2 (plane wave between the plates),
qx^2 + (pi/Ly)^2 (strip waveguide) or (N pi/Lx)^2 + (pi/Ly)^2 (rectangular
cavity).  Nondispersive fillings solve in closed form; dispersive ones by
bracketed root finding inside a single transparency window.
"""

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .dielectric import DielectricStack
from .errors import MultipleRoots, NoRootInBracket, OutOfDomain
from .units import C, HBAR

SUBWAVELENGTH_WARN = 0.3


@dataclass(frozen=True)
class Geometry:
    """Cavity/waveguide dimensions in cm.  Lz must match the stack."""

    Lx: float
    Ly: float
    Lz: float

    def __post_init__(self):
        if min(self.Lx, self.Ly, self.Lz) <= 0:
            raise ValueError("all dimensions must be > 0")

    @property
    def area(self):
        return self.Lx * self.Ly


@dataclass(frozen=True)
class PlaneWave:
    """In-plane wavevector (qx, qy) in 1/cm."""

    qx: float
    qy: float

    @property
    def q(self):
        return np.hypot(self.qx, self.qy)


@dataclass(frozen=True)
class Waveguide:
    """Propagation wavenumber along x, 1/cm; lowest (01) transverse mode."""

    qx: float


@dataclass(frozen=True)
class Cavity:
    """TE_{01N} mode index, N >= 1."""

    N: int

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("cavity index N must be >= 1")

    @property
    def parity(self):
        return "odd" if self.N % 2 == 1 else "even"


@dataclass(frozen=True)
class ModeSolution:
    """Solved mode: frequency, cached G factor and normalization constant."""

    omega: float  # rad/s
    mode: object
    d2: float  # |D_nu|^2, erg/cm^3
    g: float  # G(Lz, omega), cm
    zeta_norm: float  # integral of |zeta|^2 over S, cm^2


def transverse_k2(mode, geometry):
    """Squared transverse wavenumber K^2 entering the dispersion relation."""
    if isinstance(mode, PlaneWave):
        return mode.q**2
    if isinstance(mode, Waveguide):
        return mode.qx**2 + (np.pi / geometry.Ly) ** 2
    if isinstance(mode, Cavity):
        return (mode.N * np.pi / geometry.Lx) ** 2 + (np.pi / geometry.Ly) ** 2
    raise TypeError(f"unknown mode variant {mode!r}")


def zeta(mode, geometry, x, y):
    """Transverse spatial factor zeta_nu(x, y) (complex, dimensionless)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if isinstance(mode, PlaneWave):
        return np.exp(1j * (mode.qx * x + mode.qy * y))
    if np.any(np.abs(y) > geometry.Ly / 2):
        raise OutOfDomain("|y| > Ly/2")
    cos_y = np.cos(np.pi * y / geometry.Ly)
    if isinstance(mode, Waveguide):
        return cos_y * np.exp(1j * mode.qx * x)
    if isinstance(mode, Cavity):
        if np.any(np.abs(x) > geometry.Lx / 2):
            raise OutOfDomain("|x| > Lx/2")
        arg = mode.N * np.pi * x / geometry.Lx
        along_x = np.cos(arg) if mode.parity == "odd" else np.sin(arg)
        return (cos_y * along_x).astype(complex)
    raise TypeError(f"unknown mode variant {mode!r}")


def zeta_norm_integral(mode, geometry):
    """Integral of |zeta_nu|^2 over the cross-section: S, S/2 or S/4 [cm^2]."""
    s = geometry.area
    if isinstance(mode, PlaneWave):
        return s
    if isinstance(mode, Waveguide):
        return s / 2
    if isinstance(mode, Cavity):
        return s / 4
    raise TypeError(f"unknown mode variant {mode!r}")


def _dispersion_residual(stack, k2, omega):
    """w^2/(K^2 c^2) - inv_eps_integral(w)/Lz; zero at a mode frequency."""
    return omega**2 / (k2 * C**2) - stack.inv_eps_integral(omega) / stack.Lz


def _check_subwavelength(stack, omega):
    inv = stack.inv_eps_integral(omega)
    eps_bar = stack.Lz / inv
    if stack.Lz * omega * np.sqrt(eps_bar) / C > SUBWAVELENGTH_WARN:
        warnings.warn(
            "Lz*omega*sqrt(eps_bar)/c = "
            f"{stack.Lz * omega * np.sqrt(eps_bar) / C:.3g} > "
            f"{SUBWAVELENGTH_WARN}: subwavelength assumption strained",
            stacklevel=3,
        )


def solve_dispersion(stack, geometry, mode, bracket=None):
    """Solve the mode frequency and fill normalization data.

    Parameters
    ----------
    stack : DielectricStack
    geometry : Geometry
    mode : PlaneWave | Waveguide | Cavity
    bracket : (omega_lo, omega_hi), required for dispersive stacks
        Must lie inside one transparency window and contain exactly one root.

    Returns
    -------
    ModeSolution
    """
    if abs(stack.Lz - geometry.Lz) > 1e-12 * geometry.Lz:
        raise ValueError("geometry.Lz must match the stack thickness")
    k2 = transverse_k2(mode, geometry)
    if not k2 > 0:
        raise ValueError("transverse wavenumber must be nonzero")

    dispersive = any(lay.model.dispersive for lay in stack.layers)
    if not dispersive:
        inv = stack.inv_eps_integral(1.0)  # omega-independent
        omega = np.sqrt(k2) * C * np.sqrt(inv / stack.Lz)
    else:
        if bracket is None:
            raise ValueError("dispersive stack requires a bracket (omega_lo, omega_hi)")
        lo, hi = bracket
        if not 0 < lo < hi:
            raise ValueError("bracket must satisfy 0 < omega_lo < omega_hi")
        grid = np.linspace(lo, hi, 64)
        vals = np.array([_dispersion_residual(stack, k2, w) for w in grid])
        signs = np.sign(vals)
        crossings = np.nonzero(np.diff(signs) != 0)[0]
        if len(crossings) == 0:
            raise NoRootInBracket(
                f"no dispersion root in [{lo:g}, {hi:g}] for K^2={k2:g}"
            )
        if len(crossings) > 1:
            raise MultipleRoots(
                f"{len(crossings)} sign changes in [{lo:g}, {hi:g}]; narrow the bracket"
            )
        i = crossings[0]
        omega = brentq(
            lambda w: _dispersion_residual(stack, k2, w),
            grid[i],
            grid[i + 1],
            rtol=1e-12,
            maxiter=200,
        )
    _check_subwavelength(stack, omega)
    g = stack.g_factor(omega)
    zn = zeta_norm_integral(mode, geometry)
    return ModeSolution(
        omega=omega, mode=mode, d2=2 * np.pi * HBAR * omega / (zn * g), g=g, zeta_norm=zn
    )


def normalization_d2(stack, geometry, mode, omega):
    """Quantization constant |D_nu|^2 = 2 pi hbar w / (zeta_norm * G) [erg/cm^3]."""
    return (
        2 * np.pi * HBAR * omega
        / (zeta_norm_integral(mode, geometry) * stack.g_factor(omega))
    )


def rabi_squared(d_eff, stack, geometry, mode, omega):
    """Coupling rate squared Omega^2 = |d_eff|^2 * 2 pi w / (hbar S G) [(rad/s)^2].

    Uses the direct-transition normalization |D~|^2 = 2 pi hbar w / (S G),
    the same for all three mode families.
    """
    del mode  # the direct-transition reduction is variant-independent
    return (
        abs(d_eff) ** 2
        * 2 * np.pi * omega
        / (HBAR * geometry.area * stack.g_factor(omega))
    )
