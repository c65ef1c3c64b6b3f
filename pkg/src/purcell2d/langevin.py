"""Analytic Heisenberg-Langevin steady state of the driven cavity mode.

Medium response (frequency pull and absorption), intracavity photon
number, outcoupled power, the two-Lorentzian effective linewidth and the
narrow-/wide-line limit diagnostics.  The frequency integral of the
photon number is a product of two Lorentzians and is always evaluated by
the exact partial-fraction closed form; adaptive quadrature appears only
in the test oracles.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from .emitter import k_sum, transition_freq
from .errors import Unstable
from .units import HBAR

NARROW_REGIME_RATIO = 10.0
WIDE_REGIME_RATIO = 0.1


@dataclass(frozen=True)
class LangevinParams:
    """Cavity loss rates (rad/s) and reservoir temperatures (erg, 0 allowed)."""

    gamma_r: float
    gamma_sigma: float
    t_r: float = 0.0
    t_sigma: float = 0.0

    def __post_init__(self):
        if self.gamma_r < 0 or self.gamma_sigma < 0:
            raise ValueError("loss rates must be >= 0")
        if self.t_r < 0 or self.t_sigma < 0:
            raise ValueError("temperatures must be >= 0")


@dataclass(frozen=True)
class SpectralResult:
    delta_omega_shift: float  # rad/s
    gamma_medium: float  # rad/s, < 0 under inversion
    photon_number: float
    power: float  # erg/s
    delta_omega_eff: float  # rad/s
    q_eff: float
    limit_narrow: float  # erg/s
    limit_wide: float  # erg/s
    regime: str


def thermal_occupation(omega, temperature):
    """Bose-Einstein occupation; temperature in erg, 0 gives 0."""
    if temperature == 0.0:
        return 0.0
    x = HBAR * omega / temperature
    if x > 700:
        return 0.0
    return 1.0 / np.expm1(x)


def lorentzian_product_integral(detuning, half_width_a, half_width_b):
    """(1/pi) * int dw / ([w^2 + a^2] [(w - detuning)^2 + b^2]), a, b > 0.

    Exact partial-fraction value (a + b) / (a b [detuning^2 + (a + b)^2]).
    """
    a, b = half_width_a, half_width_b
    if a <= 0 or b <= 0:
        raise ValueError("half widths must be > 0")
    return (a + b) / (a * b * (detuning**2 + (a + b) ** 2))


def medium_response(sheet, geometry, rabi2, omega_nu):
    """Cavity frequency pull and medium decay rate (delta_omega, gamma) [rad/s].

    gamma > 0 for net absorption; inversion gives gamma < 0 (flagged with a
    warning, the instability check happens where the total decay is formed).
    """
    w21 = transition_freq(sheet, sheet.k_grid)
    det = w21 - omega_nu
    g21 = sheet.gamma21
    dn = sheet.n1 - sheet.n2
    denom = det**2 + g21**2
    delta_omega = rabi2 * k_sum(sheet, geometry, dn * det / denom)
    gamma = rabi2 * k_sum(sheet, geometry, dn * g21 / denom)
    if gamma < 0:
        warnings.warn("population inversion: medium gamma < 0", stacklevel=2)
    return delta_omega, gamma


def total_decay(sheet, geometry, rabi2, omega_nu, params):
    """Gamma_t = Gamma_r + Gamma_sigma + gamma; raises Unstable if <= 0."""
    _, gamma = medium_response(sheet, geometry, rabi2, omega_nu)
    gamma_t = params.gamma_r + params.gamma_sigma + gamma
    if gamma_t <= 0:
        raise Unstable(f"gamma_r + gamma_sigma + gamma = {gamma_t:g} <= 0")
    return gamma_t, gamma


def _emission_term(sheet, geometry, rabi2, omega_nu, gamma_t):
    """First (spontaneous-emission) term of the photon number."""
    w21 = transition_freq(sheet, sheet.k_grid)
    per_k = sheet.gamma21 * sheet.n2 * np.array(
        [
            lorentzian_product_integral(omega_nu - w, gamma_t, g)
            for w, g in zip(w21, sheet.gamma21)
        ]
    )
    return rabi2 * k_sum(sheet, geometry, per_k)


def photon_number(sheet, geometry, rabi2, omega_nu, params, include_thermal=True):
    """Steady-state intracavity photon number <c0+ c0>."""
    gamma_t, _ = total_decay(sheet, geometry, rabi2, omega_nu, params)
    n = _emission_term(sheet, geometry, rabi2, omega_nu, gamma_t)
    if include_thermal:
        n += params.gamma_r / gamma_t * thermal_occupation(omega_nu, params.t_r)
        n += params.gamma_sigma / gamma_t * thermal_occupation(omega_nu, params.t_sigma)
    return n


def emitted_power(sheet, geometry, rabi2, omega_nu, params):
    """Outcoupled power P = 2 Gamma_r hbar w_nu <c0+ c0> [erg/s], thermal terms excluded."""
    n = photon_number(sheet, geometry, rabi2, omega_nu, params, include_thermal=False)
    return 2.0 * params.gamma_r * HBAR * omega_nu * n


def effective_linewidth(gamma21, omega21, omega_nu, params, gamma_medium=0.0):
    """Effective emission linewidth from the two-Lorentzian overlap [rad/s].

    1/dw_eff = Gamma_r (Gamma_t + gamma21) /
               (2 Gamma_t [(w_nu - w21)^2 + (Gamma_t + gamma21)^2]),
    the closed form of the overlap integral at arbitrary detuning.
    """
    gamma_t = params.gamma_r + params.gamma_sigma + gamma_medium
    if gamma_t <= 0:
        raise Unstable(f"total decay {gamma_t:g} <= 0")
    if params.gamma_r == 0:
        return np.inf
    det = omega_nu - omega21
    inv = (
        params.gamma_r * (gamma_t + gamma21)
        / (2.0 * gamma_t * (det**2 + (gamma_t + gamma21) ** 2))
    )
    return 1.0 / inv


def q_eff(gamma21, omega21, omega_nu, params, gamma_medium=0.0):
    """Effective quality factor w21 / dw_eff."""
    dw = effective_linewidth(gamma21, omega21, omega_nu, params, gamma_medium)
    return omega21 / dw


def _weighted_means(sheet, geometry):
    """n2-weighted mean gamma21 and w21 over the k grid."""
    norm = k_sum(sheet, geometry, sheet.n2)
    if norm == 0:
        raise ValueError("limit formulas undefined with empty upper subband")
    g_mean = k_sum(sheet, geometry, sheet.n2 * sheet.gamma21) / norm
    w_mean = (
        k_sum(sheet, geometry, sheet.n2 * transition_freq(sheet, sheet.k_grid)) / norm
    )
    return g_mean, w_mean, norm


@dataclass(frozen=True)
class LimitPowers:
    narrow: float  # erg/s, transition line narrower than the cavity resonance
    wide: float  # erg/s, transition line wider than the cavity resonance
    regime: str  # "narrow-line" | "wide-line" | "intermediate"


def limit_powers(sheet, geometry, rabi2, omega_nu, params):
    """Evaluate both limit-formula diagnostics regardless of regime.

    Narrow-line limit (cavity resonance broader): effective linewidth
    2 Gamma_t with the cavity Lorentzian weighting the mean transition.
    Wide-line limit: effective linewidth 2 <gamma21> with the transition
    Lorentzian weighting the cavity frequency.
    """
    gamma_t, _ = total_decay(sheet, geometry, rabi2, omega_nu, params)
    g_mean, w21_mean, n2_total = _weighted_means(sheet, geometry)
    det_mean = omega_nu - w21_mean

    p_narrow = (
        2.0 * HBAR * rabi2 * w21_mean * params.gamma_r * n2_total
        / (det_mean**2 + gamma_t**2)
    )

    w21 = transition_freq(sheet, sheet.k_grid)
    det = omega_nu - w21
    weighted = sheet.gamma21 * sheet.n2 / (det**2 + sheet.gamma21**2)
    p_wide = (
        2.0 * HBAR * rabi2 * w21_mean * params.gamma_r / gamma_t
        * k_sum(sheet, geometry, weighted)
    )

    ratio = gamma_t / g_mean
    if ratio > NARROW_REGIME_RATIO:
        regime = "narrow-line"
    elif ratio < WIDE_REGIME_RATIO:
        regime = "wide-line"
    else:
        regime = "intermediate"
    return LimitPowers(narrow=p_narrow, wide=p_wide, regime=regime)


@dataclass(frozen=True)
class FreeSpaceReference:
    power_free: float  # erg/s, hbar w A0 sum(n2)
    geometric_factor: float  # (6/pi^2) (lambda / 2 sqrt(eps))^3 / V
    q_eff: float
    product: float  # erg/s, equals emitted_power in uniform media
    rabi2: float  # (rad/s)^2 used internally


def power_free_space_reference(sheet, geometry, stack, omega_nu, params):
    """Factorized power in a uniform nondispersive filling: free-space x geometry x Q."""
    from .emitter import effective_dipole
    from .golden_rule import rate_free_space
    from .modes import rabi_squared
    from .units import C

    eps = stack.uniform_eps  # raises NonUniformStack otherwise
    d_eff = effective_dipole(sheet, stack, omega_nu)
    d_bare = abs(d_eff) * eps
    rabi2 = rabi_squared(d_eff, stack, geometry, None, omega_nu)

    gamma_t, gamma = total_decay(sheet, geometry, rabi2, omega_nu, params)
    g_mean, w21_mean, n2_total = _weighted_means(sheet, geometry)

    a0 = rate_free_space(d_bare, omega_nu, eps)
    power_free = HBAR * omega_nu * a0 * n2_total
    lam = 2.0 * np.pi * C / omega_nu
    geo = (
        6.0 / np.pi**2
        * (lam / (2.0 * np.sqrt(eps))) ** 3
        / (geometry.Lx * geometry.Ly * geometry.Lz)
    )
    qe = q_eff(g_mean, w21_mean, omega_nu, params, gamma_medium=gamma)
    # the identity product = emitted_power holds with the Q factor referenced
    # to the cavity frequency, so rescale w21 -> w_nu
    qe_at_cavity = qe * omega_nu / w21_mean
    return FreeSpaceReference(
        power_free=power_free,
        geometric_factor=geo,
        q_eff=qe,
        product=power_free * geo * qe_at_cavity,
        rabi2=rabi2,
    )


def steady_state(sheet, geometry, rabi2, omega_nu, params, absorb_shift=False):
    """Assemble the full analytic steady-state summary.

    With absorb_shift the medium frequency pull is folded into the cavity
    frequency ("hot" cavity) before the spectral overlaps are evaluated;
    by default the raw and shifted frequencies stay distinguishable.
    """
    delta_omega, gamma = medium_response(sheet, geometry, rabi2, omega_nu)
    omega_eff = omega_nu + delta_omega if absorb_shift else omega_nu
    n = photon_number(sheet, geometry, rabi2, omega_eff, params)
    p = emitted_power(sheet, geometry, rabi2, omega_eff, params)
    g_mean, w21_mean, _ = _weighted_means(sheet, geometry)
    dw_eff = effective_linewidth(g_mean, w21_mean, omega_eff, params, gamma_medium=gamma)
    limits = limit_powers(sheet, geometry, rabi2, omega_eff, params)
    return SpectralResult(
        delta_omega_shift=delta_omega,
        gamma_medium=gamma,
        photon_number=n,
        power=p,
        delta_omega_eff=dw_eff,
        q_eff=w21_mean / dw_eff,
        limit_narrow=limits.narrow,
        limit_wide=limits.wide,
        regime=limits.regime,
    )
