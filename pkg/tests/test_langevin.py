import warnings

import numpy as np
import pytest
from scipy.integrate import quad

from conftest import make_sheet
from purcell2d import (
    Constant,
    DielectricStack,
    Geometry,
    LangevinParams,
    effective_dipole,
    effective_linewidth,
    emitted_power,
    k_sum,
    limit_powers,
    lorentzian_product_integral,
    medium_response,
    photon_number,
    power_free_space_reference,
    q_eff,
    rabi_squared,
    steady_state,
    thermal_occupation,
    total_decay,
    transition_freq,
)
from purcell2d.errors import Unstable
from purcell2d.units import HBAR


@pytest.fixture
def geo(uniform_stack):
    return Geometry(Lx=3e-4, Ly=3e-4, Lz=uniform_stack.Lz)


def test_thermal_occupation():
    assert thermal_occupation(1e14, 0.0) == 0.0
    # hbar w / kT = ln 2  ->  n = 1
    t = HBAR * 1e14 / np.log(2.0)
    assert thermal_occupation(1e14, t) == pytest.approx(1.0, rel=1e-12)


def test_lorentzian_product_closed_form_vs_quad():
    rng = np.random.default_rng(3)
    for _ in range(20):
        a, b = rng.uniform(0.5, 5.0, 2)
        d = rng.uniform(-10.0, 10.0)
        num = quad(
            lambda w: 1.0 / ((w**2 + a**2) * ((w - d) ** 2 + b**2)),
            -np.inf,
            np.inf,
            points=None,
        )[0] / np.pi
        assert lorentzian_product_integral(d, a, b) == pytest.approx(num, rel=1e-8)


def test_medium_response_signs(geo, sheet):
    w21 = float(transition_freq(sheet, 0.0))
    rabi2 = 1e18
    # absorbing sheet (n1 > n2): gamma > 0; red-detuned cavity pulls down
    dw, g = medium_response(sheet, geo, rabi2, w21)
    assert g > 0
    assert dw == pytest.approx(0.0, abs=1e-6 * g)  # exactly on resonance
    dw_lo, _ = medium_response(sheet, geo, rabi2, 0.9 * w21)
    assert dw_lo > 0


def test_inversion_warns_and_unstable(geo):
    sheet = make_sheet(n1=0.0, n2=1.0)
    w21 = float(transition_freq(sheet, 0.0))
    with pytest.warns(UserWarning, match="inversion"):
        _, g = medium_response(sheet, geo, 1e18, w21)
    assert g < 0
    params = LangevinParams(gamma_r=1e-6 * abs(g), gamma_sigma=0.0)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        with pytest.raises(Unstable):
            total_decay(sheet, geo, 1e18, w21, params)


def test_photon_number_manual_sum(geo, sheet):
    w21 = transition_freq(sheet, sheet.k_grid)
    wnu = 1.02 * w21[0]
    rabi2 = 1e17
    params = LangevinParams(gamma_r=2e12, gamma_sigma=1e12)
    gamma_t, _ = total_decay(sheet, geo, rabi2, wnu, params)
    per_k = sheet.gamma21 * sheet.n2 * np.array(
        [
            lorentzian_product_integral(wnu - w, gamma_t, g)
            for w, g in zip(w21, sheet.gamma21)
        ]
    )
    expected = rabi2 * k_sum(sheet, geo, per_k)
    assert photon_number(sheet, geo, rabi2, wnu, params) == pytest.approx(
        expected, rel=1e-12
    )


def test_thermal_pickup(geo, sheet):
    wnu = float(transition_freq(sheet, 0.0))
    t = HBAR * wnu / np.log(2.0)  # nT = 1
    params = LangevinParams(gamma_r=2e12, gamma_sigma=0.0, t_r=t)
    rabi2 = 1e15
    cold = photon_number(sheet, geo, rabi2, wnu, params, include_thermal=False)
    hot = photon_number(sheet, geo, rabi2, wnu, params)
    gamma_t, _ = total_decay(sheet, geo, rabi2, wnu, params)
    assert hot - cold == pytest.approx(params.gamma_r / gamma_t, rel=1e-9)


def test_emitted_power_relation(geo, sheet):
    wnu = float(transition_freq(sheet, 0.0))
    params = LangevinParams(gamma_r=2e12, gamma_sigma=1e12)
    rabi2 = 1e17
    n = photon_number(sheet, geo, rabi2, wnu, params, include_thermal=False)
    assert emitted_power(sheet, geo, rabi2, wnu, params) == pytest.approx(
        2.0 * params.gamma_r * HBAR * wnu * n, rel=1e-14
    )


def test_effective_linewidth_resonance():
    g21, w21 = 1.0, 1e5
    params = LangevinParams(gamma_r=2.0, gamma_sigma=0.5)
    gt = 2.5
    dw = effective_linewidth(g21, w21, w21, params)
    assert dw == pytest.approx(2.0 * gt * (gt + g21) / params.gamma_r, rel=1e-14)
    assert q_eff(g21, w21, w21, params) == pytest.approx(w21 / dw, rel=1e-14)
    assert effective_linewidth(g21, w21, w21, LangevinParams(0.0, 1.0)) == np.inf


def test_limit_powers_regimes(geo):
    sheet = make_sheet(n1=0.2, n2=0.05, gamma21_mev=5.0)
    wnu = float(transition_freq(sheet, 0.0))
    rabi2 = 1e10  # weak: gamma_medium negligible
    g21 = sheet.gamma21[0]
    narrow = limit_powers(
        sheet, geo, rabi2, wnu, LangevinParams(gamma_r=100.0 * g21, gamma_sigma=0.0)
    )
    assert narrow.regime == "narrow-line"
    wide = limit_powers(
        sheet, geo, rabi2, wnu, LangevinParams(gamma_r=0.01 * g21, gamma_sigma=0.0)
    )
    assert wide.regime == "wide-line"
    mid = limit_powers(
        sheet, geo, rabi2, wnu, LangevinParams(gamma_r=g21, gamma_sigma=0.0)
    )
    assert mid.regime == "intermediate"


def test_free_space_reference_identity(uniform_stack, geo, sheet):
    wnu = 1.03 * float(transition_freq(sheet, 0.0))
    params = LangevinParams(gamma_r=2e12, gamma_sigma=1e12)
    ref = power_free_space_reference(sheet, geo, uniform_stack, wnu, params)
    direct = emitted_power(sheet, geo, ref.rabi2, wnu, params)
    assert ref.product == pytest.approx(direct, rel=1e-10)


def test_steady_state_consistency(uniform_stack, geo, sheet):
    wnu = 1.01 * float(transition_freq(sheet, 0.0))
    params = LangevinParams(gamma_r=2e12, gamma_sigma=1e12)
    d = effective_dipole(sheet, uniform_stack, wnu)
    rabi2 = rabi_squared(d, uniform_stack, geo, None, wnu)
    res = steady_state(sheet, geo, rabi2, wnu, params)
    assert res.photon_number == pytest.approx(
        photon_number(sheet, geo, rabi2, wnu, params), rel=1e-14
    )
    assert res.power == pytest.approx(
        emitted_power(sheet, geo, rabi2, wnu, params), rel=1e-14
    )
    shifted = steady_state(sheet, geo, rabi2, wnu, params, absorb_shift=True)
    assert shifted.photon_number != res.photon_number  # off resonance: pull matters
