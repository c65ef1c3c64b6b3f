import numpy as np
import pytest

from purcell2d import Constant, DielectricStack, Layer, Lorentz
from purcell2d.errors import NonTransparent, NonUniformStack, OutOfDomain


def test_constant_model():
    m = Constant(eps=4.0)
    assert m.eval(1e14) == 4.0
    assert m.deriv_w2eps(1e14) == 2 * 1e14 * 4.0
    assert m.deriv_eps(1e14) == 0.0
    assert not m.dispersive


def test_constant_rejects_nonpositive():
    with pytest.raises(ValueError):
        Constant(eps=0.0)


def test_lorentz_eval():
    m = Lorentz(eps_inf=10.0, plasma_freq=2e13, resonance_freq=5e13)
    w = 3e13
    assert m.eval(w) == pytest.approx(10.0 + (2e13) ** 2 / ((5e13) ** 2 - w**2))
    assert m.dispersive


def test_lorentz_derivatives_match_finite_difference():
    m = Lorentz(eps_inf=10.0, plasma_freq=2e13, resonance_freq=5e13)
    w, h = 3e13, 1e6
    d_num = (m.eval(w + h) - m.eval(w - h)) / (2 * h)
    assert m.deriv_eps(w) == pytest.approx(d_num, rel=1e-6)
    d2_num = ((w + h) ** 2 * m.eval(w + h) - (w - h) ** 2 * m.eval(w - h)) / (2 * h)
    assert m.deriv_w2eps(w) == pytest.approx(d2_num, rel=1e-6)


def test_lorentz_pole_raises():
    m = Lorentz(eps_inf=10.0, plasma_freq=2e13, resonance_freq=5e13)
    with pytest.raises(NonTransparent):
        m.eval(5e13)


def test_nontransparent_above_resonance():
    # just above the pole eps is large and negative
    m = Lorentz(eps_inf=10.0, plasma_freq=2e13, resonance_freq=5e13)
    stack = DielectricStack.uniform(m, 1e-5)
    with pytest.raises(NonTransparent):
        stack.eval_eps(5.01e13, 0.0)


def test_stack_must_tile():
    m = Constant(eps=2.0)
    with pytest.raises(ValueError):
        DielectricStack([Layer(-1e-5, 0.0, m), Layer(1e-6, 1e-5, m)])  # gap
    with pytest.raises(ValueError):
        DielectricStack([Layer(0.0, 1e-5, m)])  # not centered


def test_layer_at_boundary_resolves_upper():
    lo, hi = Constant(eps=2.0), Constant(eps=3.0)
    stack = DielectricStack.from_thicknesses([1e-5, 1e-5], [lo, hi])
    assert stack.layer_at(0.0).model is hi
    assert stack.layer_at(-1e-6).model is lo
    with pytest.raises(OutOfDomain):
        stack.layer_at(2e-5)


def test_inv_eps_integral_layered():
    stack = DielectricStack.from_thicknesses(
        [1e-5, 3e-5], [Constant(eps=2.0), Constant(eps=4.0)]
    )
    assert stack.inv_eps_integral(1e14) == pytest.approx(
        1e-5 / 2.0 + 3e-5 / 4.0, rel=1e-14
    )


def test_inv_eps_path_additive():
    stack = DielectricStack.from_thicknesses(
        [1e-5, 3e-5], [Constant(eps=2.0), Constant(eps=4.0)]
    )
    lo, mid, hi = -2e-5, -3e-6, 2e-5
    total = stack.inv_eps_path(1e14, lo, hi)
    assert total == pytest.approx(
        stack.inv_eps_path(1e14, lo, mid) + stack.inv_eps_path(1e14, mid, hi),
        rel=1e-14,
    )
    assert total == pytest.approx(stack.inv_eps_integral(1e14), rel=1e-14)


def test_g_factor_uniform_reduces_to_lz_over_eps():
    stack = DielectricStack.uniform(Constant(eps=12.96), 0.2e-4)
    assert stack.g_factor(1e14) == pytest.approx(0.2e-4 / 12.96, rel=1e-14)


def test_g_factor_lorentz_matches_quadrature():
    m = Lorentz(eps_inf=10.0, plasma_freq=2e13, resonance_freq=5e13)
    stack = DielectricStack.uniform(m, 1e-5)
    w, h = 3e13, 1e5
    d_num = ((w + h) ** 2 * m.eval(w + h) - (w - h) ** 2 * m.eval(w - h)) / (2 * h)
    expected = 1e-5 * d_num / (2 * m.eval(w) ** 2 * w)
    assert stack.g_factor(w) == pytest.approx(expected, rel=1e-6)


def test_uniform_eps_guard():
    stack = DielectricStack.from_thicknesses(
        [1e-5, 1e-5], [Constant(eps=2.0), Constant(eps=4.0)]
    )
    assert not stack.is_uniform_nondispersive
    with pytest.raises(NonUniformStack):
        _ = stack.uniform_eps


def test_boundaries_within():
    stack = DielectricStack.from_thicknesses(
        [1e-5, 1e-5, 1e-5], [Constant(eps=2.0)] * 3
    )
    assert stack.boundaries_within(-1e-5, 1e-5) == pytest.approx([-0.5e-5, 0.5e-5])
    assert stack.boundaries_within(-0.4e-5, 0.4e-5) == []
