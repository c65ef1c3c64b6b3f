"""Exception hierarchy.

PhysicsError covers conditions that are wrong physics for the requested
computation (the CLI maps them to exit code 3); NumericalError covers
failures of the numerical machinery itself (exit code 4).
"""


class Purcell2dError(Exception):
    pass


class PhysicsError(Purcell2dError):
    pass


class NumericalError(Purcell2dError):
    pass


class ConfigError(Purcell2dError):
    """Invalid run configuration (CLI exit code 2)."""


class OutOfDomain(PhysicsError):
    """Coordinate outside the slab / cavity cross-section."""


class NonTransparent(PhysicsError):
    """eps <= 0 or d(w^2 eps)/dw <= 0 at the requested frequency."""


class NonPositiveFrequency(PhysicsError):
    pass


class NoPropagatingMode(PhysicsError):
    pass


class BelowCutoff(PhysicsError):
    pass


class AtCutoff(PhysicsError):
    """Waveguide group velocity vanishes; use the cavity-mode rate instead."""


class ZeroGroupVelocity(PhysicsError):
    pass


class NonUniformStack(PhysicsError):
    """Operation only defined for a uniform nondispersive filling."""


class Unstable(PhysicsError):
    """Total field decay rate <= 0: the steady state does not exist."""


class NoRootInBracket(NumericalError):
    pass


class MultipleRoots(NumericalError):
    """More than one dispersion root in the bracket; narrow it."""


class QuadratureNotConverged(NumericalError):
    pass


class WindowTooNarrow(NumericalError):
    pass


class StepTooLarge(NumericalError):
    """SDE time step violates the stability bound."""
