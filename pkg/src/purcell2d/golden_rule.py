"""Golden-rule spontaneous emission rates and the Purcell ratio.

Group velocities come from analytic implicit differentiation of the
dispersion relation (finite differences are too fragile near cutoff).
"""

from dataclasses import dataclass

import numpy as np

from .emitter import effective_dipole
from .errors import AtCutoff, BelowCutoff, NoPropagatingMode, ZeroGroupVelocity
from .modes import Cavity, solve_dispersion, transverse_k2
from .units import C, HBAR

AT_CUTOFF_VG = 1e-6 * C


@dataclass(frozen=True)
class RateResult:
    rate: float  # 1/s
    variant: str
    omega: float  # rad/s
    group_velocity: float | None = None  # cm/s, propagating variants only


def _group_velocity(stack, k2, k_along, omega):
    """dw/dk_along from the implicit dispersion w^2 Lz = K^2 c^2 * I(w)."""
    inv = stack.inv_eps_integral(omega)
    dinv = stack.d_inv_eps_integral(omega)
    denom = 2.0 * omega * stack.Lz - k2 * C**2 * dinv
    if denom <= 0:
        raise ZeroGroupVelocity("dispersion relation not invertible at this omega")
    return 2.0 * k_along * C**2 * inv / denom


def rate_planewave(sheet, stack, geometry, omega21):
    """Emission rate into plane-wave modes between the plates [1/s]."""
    inv = stack.inv_eps_integral(omega21)
    if inv <= 0:
        raise NoPropagatingMode("no propagating in-plane wave at omega21")
    q = omega21 / C * np.sqrt(stack.Lz / inv)
    vg = _group_velocity(stack, q**2, q, omega21)
    if vg <= 0:
        raise ZeroGroupVelocity("in-plane group velocity vanished")
    d_eff = effective_dipole(sheet, stack, omega21)
    g = stack.g_factor(omega21)
    rate = 2 * np.pi * abs(d_eff) ** 2 * omega21 * q / (HBAR * vg * g)
    return RateResult(rate=rate, variant="planewave", omega=omega21, group_velocity=vg)


def rate_waveguide(sheet, stack, geometry, omega21):
    """Emission rate into the (01) strip waveguide mode [1/s]."""
    inv = stack.inv_eps_integral(omega21)
    k2 = omega21**2 * stack.Lz / (C**2 * inv)
    qx2 = k2 - (np.pi / geometry.Ly) ** 2
    if qx2 <= 0:
        raise BelowCutoff("omega21 below the waveguide cutoff")
    qx = np.sqrt(qx2)
    vg = _group_velocity(stack, k2, qx, omega21)
    if abs(vg) < AT_CUTOFF_VG:
        raise AtCutoff(
            "group velocity below threshold: use rate_cavity with a linewidth"
        )
    d_eff = effective_dipole(sheet, stack, omega21)
    g = stack.g_factor(omega21)
    rate = 2 * np.pi * abs(d_eff) ** 2 * omega21 / (HBAR * vg * geometry.Ly * g)
    return RateResult(rate=rate, variant="waveguide", omega=omega21, group_velocity=vg)


def rate_cavity(sheet, stack, geometry, mode, delta_omega, omega21=None, bracket=None):
    """Emission rate into a single cavity mode of linewidth delta_omega [1/s].

    The mode frequency is solved from the stack; omega21 defaults to the
    band-edge transition frequency of the sheet.
    """
    if not isinstance(mode, Cavity):
        raise TypeError("mode must be a Cavity index")
    if delta_omega <= 0:
        raise ValueError("delta_omega must be > 0")
    if omega21 is None:
        from .emitter import transition_freq

        omega21 = float(transition_freq(sheet, 0.0))
    sol = solve_dispersion(stack, geometry, mode, bracket=bracket)
    d_eff = effective_dipole(sheet, stack, omega21)
    rate = (
        2 * np.pi * abs(d_eff) ** 2 * (4.0 * omega21 / delta_omega)
        / (HBAR * geometry.Lx * geometry.Ly * sol.g)
    )
    return RateResult(rate=rate, variant="cavity", omega=sol.omega)


def rate_cavity_at(d_eff, g, geometry, omega21, delta_omega):
    """Cavity-mode rate from a precomputed dipole and G factor [1/s]."""
    return (
        2 * np.pi * abs(d_eff) ** 2 * (4.0 * omega21 / delta_omega)
        / (HBAR * geometry.Lx * geometry.Ly * g)
    )


def rate_free_space(d, omega, eps):
    """Free-space reference rate A0 = 4 w^3 d^2 sqrt(eps) / (3 hbar c^3) [1/s]."""
    if eps <= 0:
        raise ValueError("eps must be > 0")
    return 4.0 * omega**3 * abs(d) ** 2 * np.sqrt(eps) / (3.0 * HBAR * C**3)


@dataclass(frozen=True)
class PurcellRatio:
    formula: float  # (3 pi / 2) (c / w sqrt(eps))^3 / V * (4 w21 / dw)
    direct_quotient: float  # rate_cavity / rate_free_space, dipole cancelled


def purcell_ratio(geometry, stack, omega21, delta_omega):
    """Cavity/free-space rate ratio for a uniform nondispersive filling."""
    eps = stack.uniform_eps  # raises NonUniformStack otherwise
    if delta_omega <= 0:
        raise ValueError("delta_omega must be > 0")
    volume = geometry.Lx * geometry.Ly * geometry.Lz
    formula = (
        1.5 * np.pi * (C / (omega21 * np.sqrt(eps))) ** 3 / volume
        * (4.0 * omega21 / delta_omega)
    )
    # quotient with d~ = d/eps and G = Lz/eps; the bare dipole cancels
    a_cav = (
        2 * np.pi * (1.0 / eps**2) * (4.0 * omega21 / delta_omega)
        / (HBAR * geometry.Lx * geometry.Ly * (geometry.Lz / eps))
    )
    a_free = rate_free_space(1.0, omega21, eps)
    return PurcellRatio(formula=formula, direct_quotient=a_cav / a_free)
