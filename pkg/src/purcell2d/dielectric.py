"""Layered, transparent, frequency-dispersive dielectric profiles.

A stack is an ordered list of z-constant layers tiling [-Lz/2, +Lz/2].
Because every layer is z-constant, all z-integrals reduce to closed-form
sums over layers; continuous profiles have to be staircased by the caller.
Permittivity is real (lossless): every evaluation is restricted to the
transparency window eps(w) > 0 and d(w^2 eps)/dw > 0.
"""

from bisect import bisect_right
from dataclasses import dataclass

from .errors import NonTransparent, OutOfDomain


@dataclass(frozen=True)
class Constant:
    """Nondispersive permittivity eps > 0."""

    eps: float

    def __post_init__(self):
        if not self.eps > 0:
            raise ValueError(f"eps must be > 0, got {self.eps}")

    def eval(self, omega):
        return self.eps

    def deriv_w2eps(self, omega):
        """d(w^2 eps)/dw evaluated analytically."""
        return 2.0 * omega * self.eps

    def deriv_eps(self, omega):
        return 0.0

    @property
    def dispersive(self):
        return False


@dataclass(frozen=True)
class Lorentz:
    """Single-oscillator model eps(w) = eps_inf + wp^2 / (w0^2 - w^2).

    plasma_freq (wp) and resonance_freq (w0) are in rad/s.
    """

    eps_inf: float
    plasma_freq: float
    resonance_freq: float

    def __post_init__(self):
        if self.plasma_freq <= 0 or self.resonance_freq <= 0:
            raise ValueError("plasma_freq and resonance_freq must be > 0")

    def eval(self, omega):
        denom = self.resonance_freq**2 - omega**2
        if denom == 0.0:
            raise NonTransparent(f"permittivity pole at omega={omega:g}")
        return self.eps_inf + self.plasma_freq**2 / denom

    def deriv_w2eps(self, omega):
        # d/dw [eps_inf w^2 + wp^2 w^2/(w0^2-w^2)]
        denom = self.resonance_freq**2 - omega**2
        if denom == 0.0:
            raise NonTransparent(f"permittivity pole at omega={omega:g}")
        return 2.0 * omega * self.eps_inf + (
            2.0 * omega * self.plasma_freq**2 * self.resonance_freq**2 / denom**2
        )

    def deriv_eps(self, omega):
        denom = self.resonance_freq**2 - omega**2
        if denom == 0.0:
            raise NonTransparent(f"permittivity pole at omega={omega:g}")
        return 2.0 * omega * self.plasma_freq**2 / denom**2

    @property
    def dispersive(self):
        return True


def _transparent_eps(model, omega):
    """eps(omega), raising NonTransparent outside the transparency window."""
    eps = model.eval(omega)
    if eps <= 0.0:
        raise NonTransparent(f"eps(omega={omega:g}) = {eps:g} <= 0")
    if model.deriv_w2eps(omega) <= 0.0:
        raise NonTransparent(f"d(w^2 eps)/dw <= 0 at omega={omega:g}")
    return eps


@dataclass(frozen=True)
class Layer:
    z_lo: float
    z_hi: float
    model: object

    @property
    def thickness(self):
        return self.z_hi - self.z_lo


class DielectricStack:
    """Layers tiling [-Lz/2, +Lz/2] with no gaps or overlaps.

    Parameters
    ----------
    layers : sequence of (z_lo, z_hi, model) or Layer
        Ordered bottom to top, in cm.
    """

    def __init__(self, layers):
        if not layers:
            raise ValueError("stack needs at least one layer")
        norm = []
        for lay in layers:
            if not isinstance(lay, Layer):
                lay = Layer(*lay)
            if not lay.z_hi > lay.z_lo:
                raise ValueError("layer must have z_hi > z_lo")
            norm.append(lay)
        lz = norm[-1].z_hi - norm[0].z_lo
        if not lz > 0:
            raise ValueError("total thickness must be > 0")
        tol = 1e-12 * lz
        if abs(norm[0].z_lo + lz / 2) > tol or abs(norm[-1].z_hi - lz / 2) > tol:
            raise ValueError("layers must span [-Lz/2, +Lz/2]")
        for below, above in zip(norm, norm[1:]):
            if abs(below.z_hi - above.z_lo) > tol:
                raise ValueError("layers must tile without gaps or overlaps")
        self.layers = tuple(norm)
        self.Lz = lz
        self._boundaries = [lay.z_lo for lay in norm[1:]]

    @classmethod
    def from_thicknesses(cls, thicknesses, models):
        """Build a stack from layer thicknesses (cm) and models, centered on z=0."""
        if len(thicknesses) != len(models):
            raise ValueError("thicknesses and models must have equal length")
        lz = sum(thicknesses)
        layers, z = [], -lz / 2
        for t, m in zip(thicknesses, models):
            layers.append(Layer(z, z + t, m))
            z += t
        layers[-1] = Layer(layers[-1].z_lo, lz / 2, models[-1])
        return cls(layers)

    @classmethod
    def uniform(cls, model, lz):
        return cls([Layer(-lz / 2, lz / 2, model)])

    def layer_at(self, z):
        """Layer containing z; interior boundaries resolve to the upper layer."""
        if z < -self.Lz / 2 or z > self.Lz / 2:
            raise OutOfDomain(f"z={z:g} outside [-Lz/2, Lz/2]")
        return self.layers[bisect_right(self._boundaries, z)]

    def eval_eps(self, omega, z):
        """eps(omega, z) of the layer containing z."""
        return _transparent_eps(self.layer_at(z).model, omega)

    def inv_eps_integral(self, omega):
        """Closed-form integral of dz/eps(omega, z) over the slab [cm]."""
        return sum(
            lay.thickness / _transparent_eps(lay.model, omega) for lay in self.layers
        )

    def d_inv_eps_integral(self, omega):
        """Analytic d/domega of inv_eps_integral [cm s]."""
        total = 0.0
        for lay in self.layers:
            eps = _transparent_eps(lay.model, omega)
            total -= lay.thickness * lay.model.deriv_eps(omega) / eps**2
        return total

    def g_factor(self, omega):
        """Dispersive thickness integral G(Lz, omega) [cm].

        Per layer: thickness / (2 eps^2 omega) * d(w^2 eps)/dw, with the
        derivative taken analytically from the model.  Reduces to Lz/eps
        for a uniform nondispersive filling.
        """
        total = 0.0
        for lay in self.layers:
            eps = _transparent_eps(lay.model, omega)
            total += (
                lay.thickness
                * lay.model.deriv_w2eps(omega)
                / (2.0 * eps**2 * omega)
            )
        return total

    def inv_eps_path(self, omega, z0, z1):
        """Closed-form integral of dz/eps(omega, z) over [z0, z1], z0 <= z1."""
        if z1 < z0:
            raise ValueError("z1 must be >= z0")
        if z0 < -self.Lz / 2 - 1e-12 * self.Lz or z1 > self.Lz / 2 + 1e-12 * self.Lz:
            raise OutOfDomain("path outside the slab")
        total = 0.0
        for lay in self.layers:
            lo = max(z0, lay.z_lo)
            hi = min(z1, lay.z_hi)
            if hi > lo:
                total += (hi - lo) / _transparent_eps(lay.model, omega)
        return total

    @property
    def is_uniform_nondispersive(self):
        models = {lay.model for lay in self.layers}
        return all(isinstance(m, Constant) for m in models) and (
            len({m.eps for m in models}) == 1
        )

    @property
    def uniform_eps(self):
        """eps of a uniform nondispersive stack."""
        from .errors import NonUniformStack

        if not self.is_uniform_nondispersive:
            raise NonUniformStack("stack is layered or dispersive")
        return self.layers[0].model.eps

    def boundaries_within(self, z0, z1):
        """Interior layer boundaries strictly inside (z0, z1), sorted."""
        return [b for b in self._boundaries if z0 < b < z1]
