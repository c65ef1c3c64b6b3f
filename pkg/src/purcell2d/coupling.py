"""Interaction matrix elements between electron momentum states and modes.

Analytic two-sinc factors for the waveguide (Y) and cavity (X) transverse
profiles, their Parseval sums, and the direct-transition weight alpha_nu.
The rate and Langevin pipelines use only alpha_nu (electron momenta are
much larger than photon momenta); the factors themselves are diagnostics.
"""

from dataclasses import dataclass

import numpy as np

from .errors import WindowTooNarrow
from .modes import Cavity, PlaneWave, Waveguide

_SINC_SWITCH = 1e-8
MIN_WINDOW_LOBES = 40


def _sinc_term(u, length):
    """sin(u*L/2) / (u*L) with a series expansion near the removable zero."""
    u = np.asarray(u, dtype=float)
    x = u * length / 2.0
    small = np.abs(u * length) < _SINC_SWITCH
    safe = np.where(small, 1.0, u * length)
    exact = np.sin(x) / safe
    series = 0.5 * (1.0 - x**2 / 6.0 + x**4 / 120.0)
    return np.where(small, series, exact)


def y_factor(ky, ky_prime, Ly):
    """Transverse overlap Y for the lowest waveguide/cavity y profile (real)."""
    g = np.pi / Ly
    return _sinc_term(ky + g - ky_prime, Ly) + _sinc_term(ky_prime + g - ky, Ly)


def x_factor(kx, kx_prime, Lx, N):
    """Along-cavity overlap X; odd N is real, even N purely imaginary."""
    g = N * np.pi / Lx
    if N % 2 == 1:
        return (_sinc_term(kx + g - kx_prime, Lx)
                + _sinc_term(kx_prime + g - kx, Lx)).astype(complex)
    return 1j * (_sinc_term(kx_prime + g - kx, Lx) - _sinc_term(kx + g - kx_prime, Lx))


@dataclass(frozen=True)
class MatrixElementTable:
    """Diagnostic table of zeta^(nu)_{k'k} on a (k', k) grid."""

    mode: object
    k: np.ndarray
    k_prime: np.ndarray
    values: np.ndarray


def matrix_element_table(mode, geometry, k, k_prime):
    """Tabulate the transverse factor on k x k' (1/cm) for diagnostics.

    For the waveguide the table is Y over (k'_y, k_y); for the cavity the
    product Y*X is separable, so the X factor over (k'_x, k_x) is returned
    with k interpreted accordingly.
    """
    k = np.asarray(k, dtype=float)
    kp = np.asarray(k_prime, dtype=float)
    kk, kkp = np.meshgrid(k, kp, indexing="ij")
    if isinstance(mode, Waveguide):
        vals = y_factor(kk, kkp, geometry.Ly).astype(complex)
    elif isinstance(mode, Cavity):
        vals = x_factor(kk, kkp, geometry.Lx, mode.N)
    else:
        raise TypeError("table defined for waveguide and cavity variants")
    return MatrixElementTable(mode=mode, k=k, k_prime=kp, values=vals)


def _parseval_1d(factor, center_offsets, length, k, window_lobes, points_per_lobe):
    """(L/2pi) * integral |factor(k')|^2 dk' over a window around the sinc centers."""
    if window_lobes < MIN_WINDOW_LOBES:
        raise WindowTooNarrow(
            f"window of {window_lobes} lobes < required {MIN_WINDOW_LOBES}"
        )
    lobe = 2 * np.pi / length
    lo = min(center_offsets) - window_lobes * lobe
    hi = max(center_offsets) + window_lobes * lobe
    n = int((hi - lo) / lobe * points_per_lobe) + 1
    kp = np.linspace(k + lo, k + hi, n)
    vals = np.abs(factor(kp)) ** 2
    return length / (2 * np.pi) * np.trapezoid(vals, kp)


def parseval_sum(mode, geometry, k=0.0, window_lobes=400, points_per_lobe=24):
    """Numerical Parseval sum (L/2pi) int |factor|^2 dk' for the given variant.

    Converges to 1/2 for the waveguide Y, 1/2 for the cavity X, and the
    cavity variant returns the Y*X product which converges to 1/4.
    """
    if isinstance(mode, PlaneWave):
        return 1.0
    y_sum = _parseval_1d(
        lambda kp: y_factor(k, kp, geometry.Ly),
        [-np.pi / geometry.Ly, np.pi / geometry.Ly],
        geometry.Ly,
        k,
        window_lobes,
        points_per_lobe,
    )
    if isinstance(mode, Waveguide):
        return y_sum
    if isinstance(mode, Cavity):
        g = mode.N * np.pi / geometry.Lx
        x_sum = _parseval_1d(
            lambda kp: x_factor(k, kp, geometry.Lx, mode.N),
            [-g, g],
            geometry.Lx,
            k,
            window_lobes,
            points_per_lobe,
        )
        return y_sum * x_sum
    raise TypeError(f"unknown mode variant {mode!r}")


def alpha(mode, geometry):
    """Direct-transition weight alpha_nu = sqrt(zeta_norm / S): 1, 1/sqrt(2), 1/2."""
    del geometry  # the weight is variant-only
    if isinstance(mode, PlaneWave):
        return 1.0
    if isinstance(mode, Waveguide):
        return 1.0 / np.sqrt(2.0)
    if isinstance(mode, Cavity):
        return 0.5
    raise TypeError(f"unknown mode variant {mode!r}")
