"""Spontaneous emission of 2D emitter sheets in subwavelength quasi-2D
waveguides and cavities.

Layered dispersive dielectrics, TEM-like mode dispersion and
normalization, intersubband effective dipoles, golden-rule rates with
Purcell ratios, the analytic Heisenberg-Langevin steady state, and a
Monte Carlo validator for the closed forms.  Internal units are
Gaussian-CGS; the CLI converts from practical units at the boundary.
"""

__version__ = "1.0.0"

from .coupling import (
    alpha,
    matrix_element_table,
    parseval_sum,
    x_factor,
    y_factor,
)
from .dielectric import Constant, DielectricStack, Layer, Lorentz
from .emitter import (
    EmitterSheet,
    InfiniteWell,
    Sampled,
    Subband,
    effective_dipole,
    fermi_dirac,
    k_sum,
    transition_freq,
)
from .errors import ConfigError, NumericalError, PhysicsError
from .golden_rule import (
    PurcellRatio,
    RateResult,
    purcell_ratio,
    rate_cavity,
    rate_cavity_at,
    rate_free_space,
    rate_planewave,
    rate_waveguide,
)
from .langevin import (
    LangevinParams,
    LimitPowers,
    SpectralResult,
    effective_linewidth,
    emitted_power,
    limit_powers,
    lorentzian_product_integral,
    medium_response,
    photon_number,
    power_free_space_reference,
    q_eff,
    steady_state,
    thermal_occupation,
    total_decay,
)
from .mc_validator import (
    KBins,
    McEstimate,
    SdeConfig,
    binned_photon_number,
    binned_response,
    check_decay_without_noise,
    check_noise_correlators,
    euler_stationary_photon_number,
    simulate_steady_state,
)
from .modes import (
    Cavity,
    Geometry,
    ModeSolution,
    PlaneWave,
    Waveguide,
    normalization_d2,
    rabi_squared,
    solve_dispersion,
    transverse_k2,
    zeta,
    zeta_norm_integral,
)

__all__ = [
    "__version__",
    "Cavity",
    "ConfigError",
    "Constant",
    "DielectricStack",
    "EmitterSheet",
    "Geometry",
    "InfiniteWell",
    "KBins",
    "LangevinParams",
    "Layer",
    "LimitPowers",
    "Lorentz",
    "McEstimate",
    "ModeSolution",
    "NumericalError",
    "PhysicsError",
    "PlaneWave",
    "PurcellRatio",
    "RateResult",
    "Sampled",
    "SdeConfig",
    "SpectralResult",
    "Subband",
    "Waveguide",
    "alpha",
    "binned_photon_number",
    "binned_response",
    "check_decay_without_noise",
    "check_noise_correlators",
    "effective_dipole",
    "effective_linewidth",
    "emitted_power",
    "euler_stationary_photon_number",
    "fermi_dirac",
    "k_sum",
    "limit_powers",
    "lorentzian_product_integral",
    "matrix_element_table",
    "medium_response",
    "normalization_d2",
    "parseval_sum",
    "photon_number",
    "power_free_space_reference",
    "purcell_ratio",
    "q_eff",
    "rabi_squared",
    "rate_cavity",
    "rate_cavity_at",
    "rate_free_space",
    "rate_planewave",
    "rate_waveguide",
    "simulate_steady_state",
    "solve_dispersion",
    "steady_state",
    "thermal_occupation",
    "total_decay",
    "transition_freq",
    "transverse_k2",
    "x_factor",
    "y_factor",
    "zeta",
    "zeta_norm_integral",
]
