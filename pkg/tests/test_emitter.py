import numpy as np
import pytest
from scipy.integrate import quad

from conftest import make_sheet
from purcell2d import (
    Constant,
    DielectricStack,
    InfiniteWell,
    Sampled,
    effective_dipole,
    fermi_dirac,
    k_sum,
    transition_freq,
)
from purcell2d.modes import Geometry
from purcell2d.units import E_ESU, HBAR, mev_to_erg


def test_infinite_well_normalized_and_orthogonal():
    l = 10e-7
    z = np.linspace(-l / 2, l / 2, 20001)
    p1, p2 = InfiniteWell(1, l), InfiniteWell(2, l)
    assert np.trapezoid(p1(z) ** 2, z) == pytest.approx(1.0, rel=1e-6)
    assert np.trapezoid(p2(z) ** 2, z) == pytest.approx(1.0, rel=1e-6)
    assert np.trapezoid(p1(z) * p2(z), z) == pytest.approx(0.0, abs=1e-9)
    assert p1(l) == 0.0  # zero outside the well


def test_sampled_envelope_renormalizes():
    z = np.linspace(-5e-7, 5e-7, 501)
    env = Sampled(z, 3.0 * np.cos(np.pi * z / 10e-7))
    assert np.trapezoid(np.abs(env(z)) ** 2, z) == pytest.approx(1.0, rel=1e-6)
    assert env(1e-6) == 0.0


def test_transition_freq_flat_for_equal_masses():
    sheet = make_sheet(mass1=0.067, mass2=0.067, delta_e_mev=80.0)
    w = transition_freq(sheet, sheet.k_grid)
    assert np.all(w == w[0])
    assert w[0] == pytest.approx(mev_to_erg(80.0) / HBAR, rel=1e-14)


def test_transition_freq_disperses_for_unequal_masses():
    sheet = make_sheet(mass1=0.067, mass2=0.1, delta_e_mev=80.0)
    w = transition_freq(sheet, sheet.k_grid)
    assert w[-1] < w[0]  # heavier upper subband bends the transition down


def test_k_sum_constant_function():
    sheet = make_sheet(points=128)
    geometry = Geometry(Lx=3e-4, Ly=3e-4, Lz=0.2e-4)
    k_max = sheet.k_grid[-1]
    expected = sheet.degeneracy * geometry.area / (2 * np.pi) * k_max**2 / 2
    assert k_sum(sheet, geometry, np.ones_like(sheet.k_grid)) == pytest.approx(
        expected, rel=1e-12
    )
    assert k_sum(sheet, geometry, lambda k: np.ones_like(k)) == pytest.approx(
        expected, rel=1e-12
    )


def test_fermi_dirac_limits():
    assert fermi_dirac(1.0, 2.0, 0.0) == 1.0
    assert fermi_dirac(3.0, 2.0, 0.0) == 0.0
    assert fermi_dirac(2.0, 2.0, 1.0) == pytest.approx(0.5)


def test_effective_dipole_uniform_closed_form():
    # uniform eps: d~ = (e / eps) * 16 l / (9 pi^2) in magnitude; the
    # constant part of the path integral drops by orthogonality
    l = 10e-7
    eps = 12.96
    sheet = make_sheet(width=l)
    stack = DielectricStack.uniform(Constant(eps=eps), 0.2e-4)
    d = effective_dipole(sheet, stack, 1.2e14)
    expected = E_ESU / eps * 16 * l / (9 * np.pi**2)
    assert abs(d) == pytest.approx(expected, rel=1e-9)


def test_effective_dipole_layered_matches_quadrature():
    l = 10e-7
    stack = DielectricStack.from_thicknesses(
        [0.1e-4 - 2e-7, 4e-7, 0.1e-4 - 2e-7],
        [Constant(eps=12.96), Constant(eps=4.0), Constant(eps=12.96)],
    )
    sheet = make_sheet(width=l)
    omega = 1.2e14
    d = effective_dipole(sheet, stack, omega)

    p1, p2 = sheet.subband1.psi, sheet.subband2.psi
    cuts = [-l / 2] + stack.boundaries_within(-l / 2, l / 2) + [l / 2]

    def integrand(z):
        return p2(z) * stack.inv_eps_path(omega, -l / 2, z) * p1(z)

    total = 0.0
    for a, b in zip(cuts, cuts[1:]):
        total += quad(integrand, a, b, limit=200)[0]
    assert d.real == pytest.approx(-E_ESU * total, rel=1e-8)
    assert d.imag == pytest.approx(0.0, abs=1e-30)


def test_sheet_validation():
    with pytest.raises(ValueError):
        make_sheet(points=8)  # too few k points
    with pytest.raises(ValueError):
        make_sheet(n2=1.5)  # occupation outside [0, 1]
    with pytest.raises(ValueError):
        make_sheet(gamma21_mev=-1.0)
