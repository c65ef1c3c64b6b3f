import numpy as np
import pytest

from purcell2d import (
    Constant,
    DielectricStack,
    EmitterSheet,
    Geometry,
    InfiniteWell,
    Subband,
)
from purcell2d.units import mass_m0_to_g, mev_to_erg, mev_to_radps


@pytest.fixture
def uniform_stack():
    return DielectricStack.uniform(Constant(eps=12.96), 0.2e-4)


@pytest.fixture
def geometry(uniform_stack):
    return Geometry(Lx=3e-4, Ly=3e-4, Lz=uniform_stack.Lz)


def make_sheet(
    width=10e-7,
    delta_e_mev=80.0,
    mass1=0.067,
    mass2=0.067,
    n1=0.2,
    n2=0.05,
    gamma21_mev=5.0,
    k_max=3e6,
    points=64,
):
    """Flat-population two-subband sheet; equal masses give a flat w21(k)."""
    k = np.linspace(0.0, k_max, points)
    return EmitterSheet(
        subband1=Subband(1, 0.0, mass_m0_to_g(mass1), InfiniteWell(1, width)),
        subband2=Subband(
            2, mev_to_erg(delta_e_mev), mass_m0_to_g(mass2), InfiniteWell(2, width)
        ),
        k_grid=k,
        n1=np.full(points, n1),
        n2=np.full(points, n2),
        gamma21=np.full(points, mev_to_radps(gamma21_mev)),
    )


@pytest.fixture
def sheet():
    return make_sheet()
