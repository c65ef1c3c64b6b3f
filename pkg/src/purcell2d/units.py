"""Physical constants and unit conversions.

All internal computation is in Gaussian-CGS units (cm, s, erg, esu,
statvolt).  Practical I/O units (um, nm, meV, ps^-1, e*nm) are converted
exactly once at the boundary by the helpers below.  CGS constants are
derived from the CODATA SI values in scipy.constants so that SI/CGS
cross-checks agree to rounding.
"""

import scipy.constants as sc

# speed of light [cm/s]
C = sc.c * 1e2
# reduced Planck constant [erg s]
HBAR = sc.hbar * 1e7
# elementary charge [esu]; 1 C = 10*c[m/s] statC
E_ESU = sc.e * sc.c * 10.0

ERG_PER_MEV = sc.e * 1e-3 * 1e7  # 1 meV in erg

CM_PER_UM = 1e-4
CM_PER_NM = 1e-7


def mev_to_erg(e_mev):
    return e_mev * ERG_PER_MEV


def erg_to_mev(e_erg):
    return e_erg / ERG_PER_MEV


def mev_to_radps(e_mev):
    """Photon/transition energy in meV -> angular frequency in rad/s."""
    return e_mev * ERG_PER_MEV / HBAR


def radps_to_mev(omega):
    return omega * HBAR / ERG_PER_MEV


def um_to_cm(x_um):
    return x_um * CM_PER_UM


def nm_to_cm(x_nm):
    return x_nm * CM_PER_NM


def enm_to_esucm(d_enm):
    """Dipole moment in units of e*nm -> esu*cm."""
    return d_enm * E_ESU * CM_PER_NM


def inv_ps_to_radps(rate_invps):
    return rate_invps * 1e12


def mass_m0_to_g(m_over_m0):
    """Effective mass in units of the free-electron mass -> grams."""
    return m_over_m0 * sc.m_e * 1e3
